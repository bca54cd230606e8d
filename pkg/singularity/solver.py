"""
Common projective zeros of homogeneous polynomials over F_p, with coordinates in F_{p^e}.

Each chart {x_j = 0 for j < i, x_i = 1} is solved separately: a Gröbner basis
of the restricted system gives a finite-dimensional quotient, the minimal
polynomial of every coordinate comes from linear dependencies among normal
forms of its powers, and candidate coordinate tuples built from the roots
are checked against the system.
"""

import itertools
import logging
import math
from functools import reduce as fold
from typing import Any, Dict, List, Sequence, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor

from algebra.fields import CoefficientField, PrimeField, extension_field
from algebra.polynomial import Monomial, Polynomial, ProjectivePoint, grevlex_key
from singularity.groebner import GroebnerBasis, StepBudget, buchberger
from utils.errors import EnumerationBudgetExceeded, InputError, NonIsolatedSingularityError

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_BUDGET = 2_000_000


class _EnumerationCounter:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def charge(self, amount: int, what: str) -> None:
        self.used += amount
        if self.used > self.limit:
            raise EnumerationBudgetExceeded(
                f"Enumeration budget of {self.limit} exhausted while scanning {what}"
            )


def minimal_polynomial(gb: GroebnerBasis, var: int, budget: StepBudget) -> List[int]:
    """
    Monic minimal polynomial of x_var in the quotient ring, dense and highest degree first.

    The quotient must be finite-dimensional.
    """
    field = gb.field
    nvars = gb.nvars
    y = Polynomial.variable(field, nvars, var)
    power = Polynomial.constant(field, nvars, 1)
    rows: Dict[Monomial, Tuple[Dict[Monomial, Any], Dict[int, Any]]] = {}
    j = 0
    while True:
        nf = gb.reduce(power, budget)
        vec = nf.term_dict()
        comb: Dict[int, Any] = {j: field.one()}
        while True:
            reducible = [m for m in vec if m in rows]
            if not reducible:
                break
            pivot = max(reducible, key=grevlex_key)
            factor = vec[pivot]
            row_vec, row_comb = rows[pivot]
            for m, c in row_vec.items():
                value = field.sub(vec.get(m, field.zero()), field.mul(factor, c))
                if field.is_zero(value):
                    vec.pop(m, None)
                else:
                    vec[m] = value
            for k, c in row_comb.items():
                value = field.sub(comb.get(k, field.zero()), field.mul(factor, c))
                if field.is_zero(value):
                    comb.pop(k, None)
                else:
                    comb[k] = value
        if not vec:
            lead = field.inv(comb[j])
            return [field.mul(comb.get(k, field.zero()), lead) for k in range(j, -1, -1)]
        pivot = max(vec, key=grevlex_key)
        scale = field.inv(vec[pivot])
        rows[pivot] = (
            {m: field.mul(c, scale) for m, c in vec.items()},
            {k: field.mul(c, scale) for k, c in comb.items()},
        )
        power = nf.multiply(y)
        j += 1


def _irreducible_factors(dense: List[int], p: int) -> List[List[int]]:
    """Distinct monic irreducible factors over F_p, dense, highest first."""
    _, factors = gf_factor([ZZ(c) for c in dense], p, ZZ)
    return [[int(c) for c in factor] for factor, _ in factors]


def _horner(dense: List[int], value: Any, field: CoefficientField) -> Any:
    acc = field.zero()
    for c in dense:
        acc = field.add(field.mul(acc, value), field.from_int(c))
    return acc


class _RootFinder:
    """Roots of F_p polynomials inside F_{p^e}, cached per factor and level."""

    def __init__(self, p: int, counter: _EnumerationCounter):
        self.p = p
        self.counter = counter
        self._cache: Dict[Tuple[Tuple[int, ...], int], List[Any]] = {}

    def roots(self, factor: List[int], e: int) -> List[Any]:
        key = (tuple(factor), e)
        if key in self._cache:
            return self._cache[key]
        field = extension_field(self.p, e)
        r = len(factor) - 1
        if r == 1:
            found = [field.from_int(-factor[1] * pow(factor[0], -1, self.p))]
        elif e % r:
            found = []
        else:
            self.counter.charge(field.order, f"F_{self.p}^{e} for a degree {r} factor")
            found = [a for a in field.elements() if field.is_zero(_horner(factor, a, field))]
        self._cache[key] = found
        return found


def _restrict_to_chart(polys: Sequence[Polynomial], chart: int) -> List[Polynomial]:
    fixed = {j: 0 for j in range(chart)}
    fixed[chart] = 1
    return [q for q in (f.restrict(fixed) for f in polys) if not q.is_zero()]


def _in_proper_subfield(coords: Sequence[Any], field: CoefficientField, e: int) -> bool:
    for sub in range(1, e):
        if e % sub == 0 and all(field.in_subfield(c, sub) for c in coords):
            return True
    return False


def _lcm_all(values) -> int:
    return fold(lambda a, b: a * b // math.gcd(a, b), values, 1)


def projective_zeros(
    polys: Sequence[Polynomial],
    e_max: int = 2,
    groebner_budget: int = 1_000_000,
    enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> List[ProjectivePoint]:
    """
    All common zeros in P^{n}(F_{p^e}), e <= e_max, of homogeneous polynomials over F_p.

    Each point is returned over the smallest level F_{p^e} containing it;
    points are sorted by level, then chart, then coordinates.

    Raises:
        NonIsolatedSingularityError: the zero set has positive dimension
        EnumerationBudgetExceeded: root scanning or candidate checking ran out of budget
        GroebnerBudgetExceeded: a chart basis ran out of budget
    """
    if not polys:
        raise InputError("projective_zeros needs at least one polynomial")
    base = polys[0].field
    if not isinstance(base, PrimeField):
        raise InputError(f"projective_zeros works over a prime field, got {base.label()}")
    p = base.p
    nvars = polys[0].nvars
    budget = StepBudget(groebner_budget)
    counter = _EnumerationCounter(enumeration_budget)
    finder = _RootFinder(p, counter)
    found: List[Tuple[int, ProjectivePoint]] = []

    for chart in range(nvars):
        system = _restrict_to_chart(polys, chart)
        free = nvars - chart - 1
        if free == 0:
            if not system:
                found.append((1, ProjectivePoint(base, [0] * chart + [1])))
            continue
        if not system:
            raise NonIsolatedSingularityError(f"Chart {chart} lies entirely in the zero set")
        gb = buchberger(system, budget)
        if gb.is_unit():
            continue
        if not gb.is_irrelevant():
            raise NonIsolatedSingularityError(
                f"Zero set has positive dimension in chart x{chart} = 1"
            )
        factors = [_irreducible_factors(minimal_polynomial(gb, k, budget), p) for k in range(free)]
        logger.debug(
            f"Chart {chart}: basis of {len(gb)} elements, factor degrees "
            f"{[[len(f) - 1 for f in fs] for fs in factors]}"
        )
        for e in range(1, e_max + 1):
            usable = {len(f) - 1 for fs in factors for f in fs if e % (len(f) - 1) == 0}
            if not usable or _lcm_all(usable) != e:
                continue
            field = extension_field(p, e)
            candidates = []
            for fs in factors:
                roots = [r for f in fs for r in finder.roots(f, e)]
                candidates.append(sorted(set(roots), key=field.element_key))
            counter.charge(math.prod(len(c) for c in candidates), f"candidate points in chart {chart}")
            lifted = [q.change_field(field) for q in system]
            for values in itertools.product(*candidates):
                if e > 1 and _in_proper_subfield(values, field, e):
                    continue
                if all(field.is_zero(q.evaluate(values)) for q in lifted):
                    found.append((e, ProjectivePoint(field, [0] * chart + [1] + list(values))))

    found.sort(key=lambda ep: (ep[0], ep[1].sort_key()))
    points = [pt for _, pt in found]
    logger.debug(f"projective_zeros: {len(points)} points, {budget.used} reduction steps, {counter.used} scans")
    return points
