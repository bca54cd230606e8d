"""
Gröbner bases over an exact field.

Global bases use graded reverse lexicographic order with Buchberger's
algorithm (normal selection, Gebauer-Möller pair update). Local standard
bases at the origin use Mora's normal form under the local degree order,
where the lowest total degree leads; they give local Milnor numbers.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Set, Tuple, Union

from algebra.fields import CoefficientField
from algebra.polynomial import Monomial, Polynomial, grevlex_key, monomial_divides
from utils.errors import FieldMismatchError, GroebnerBudgetExceeded, InputError

logger = logging.getLogger(__name__)

INFINITE = math.inf
GREVLEX = "grevlex"
LOCAL_DEGREE = "local-degree"
DEFAULT_BUDGET = 1_000_000

Dimension = Union[int, float]


def local_key(monomial: Monomial) -> Tuple:
    """Local degree order: lower total degree is larger, ties by grevlex."""
    return (-sum(monomial), tuple(-e for e in reversed(monomial)))


_ORDER_KEYS: Dict[str, Callable[[Monomial], Tuple]] = {GREVLEX: grevlex_key, LOCAL_DEGREE: local_key}


class StepBudget:
    """Counts reduction steps and raises once the limit is passed."""

    def __init__(self, limit: int = DEFAULT_BUDGET):
        self.limit = limit
        self.used = 0

    def tick(self, basis_size: int = 0) -> None:
        self.used += 1
        if self.used > self.limit:
            raise GroebnerBudgetExceeded(self.limit, basis_size)


def _as_budget(budget: Union[None, int, StepBudget]) -> StepBudget:
    if isinstance(budget, StepBudget):
        return budget
    return StepBudget(DEFAULT_BUDGET if budget is None else budget)


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _quotient(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def _subtract_multiple(
    target: Dict[Monomial, Any], terms: Dict[Monomial, Any], shift: Monomial, factor: Any, field: CoefficientField
) -> None:
    """target -= factor * x^shift * terms, in place."""
    zero = field.zero()
    for m, c in terms.items():
        shifted = tuple(x + y for x, y in zip(m, shift))
        value = field.sub(target.get(shifted, zero), field.mul(factor, c))
        if field.is_zero(value):
            target.pop(shifted, None)
        else:
            target[shifted] = value


@dataclass(frozen=True)
class GroebnerBasis:
    """A Gröbner (or local standard) basis together with its monomial order."""

    generators: Tuple[Polynomial, ...]
    field: CoefficientField
    nvars: int
    order: str = GREVLEX
    steps: int = 0

    @property
    def leading_monomials(self) -> List[Monomial]:
        key = _ORDER_KEYS[self.order]
        return [max((m for m, _ in g.terms()), key=key) for g in self.generators]

    def __len__(self) -> int:
        return len(self.generators)

    def is_unit(self) -> bool:
        """True iff the ideal is the whole ring."""
        return any(sum(lm) == 0 for lm in self.leading_monomials)

    def pure_powers(self) -> Dict[int, int]:
        """Smallest a with x_i^a a leading monomial, for each variable that has one."""
        powers: Dict[int, int] = {}
        for lm in self.leading_monomials:
            support = [i for i, e in enumerate(lm) if e]
            if len(support) == 1:
                i = support[0]
                powers[i] = min(powers.get(i, lm[i]), lm[i])
        return powers

    def is_irrelevant(self) -> bool:
        """True iff the leading ideal contains a power of every variable."""
        return self.is_unit() or len(self.pure_powers()) == self.nvars

    def standard_monomials(self) -> Optional[List[Monomial]]:
        """Monomials outside the leading ideal, or None if there are infinitely many."""
        if self.is_unit():
            return []
        if not self.is_irrelevant():
            return None
        leads = self.leading_monomials
        start = (0,) * self.nvars
        seen: Set[Monomial] = {start}
        queue = deque([start])
        while queue:
            m = queue.popleft()
            for i in range(self.nvars):
                nxt = m[:i] + (m[i] + 1,) + m[i + 1:]
                if nxt in seen or any(monomial_divides(lm, nxt) for lm in leads):
                    continue
                seen.add(nxt)
                queue.append(nxt)
        return sorted(seen, key=grevlex_key)

    def reduce(self, h: Polynomial, budget: Union[None, int, StepBudget] = None) -> Polynomial:
        """Fully reduced normal form of h modulo this (global) basis."""
        if self.order != GREVLEX:
            raise InputError("Full normal forms need a global basis")
        return normal_form(h, self.generators, budget)

    def contains(self, h: Polynomial) -> bool:
        return self.reduce(h).is_zero()


def normal_form(h: Polynomial, basis: Sequence[Polynomial], budget: Union[None, int, StepBudget] = None) -> Polynomial:
    """Remainder of h on division by `basis` in grevlex order (every term reduced)."""
    budget = _as_budget(budget)
    field = h.field
    reducers = [(g.leading_monomial(), g.leading_coefficient(), g.term_dict()) for g in basis if not g.is_zero()]
    work = h.term_dict()
    remainder: Dict[Monomial, Any] = {}
    while work:
        lm = max(work, key=grevlex_key)
        coeff = work[lm]
        for glm, glc, gterms in reducers:
            if monomial_divides(glm, lm):
                budget.tick(len(reducers))
                _subtract_multiple(work, gterms, _quotient(lm, glm), field.div(coeff, glc), field)
                break
        else:
            remainder[lm] = coeff
            del work[lm]
    return Polynomial(field, h.nvars, remainder)


def _check_generators(generators: Sequence[Polynomial]) -> Tuple[CoefficientField, int]:
    if not generators:
        raise InputError("At least one generator is required")
    field, nvars = generators[0].field, generators[0].nvars
    for g in generators:
        if g.field != field or g.nvars != nvars:
            raise FieldMismatchError("Generators must share field and variable count")
    return field, nvars


def _gebauer_moeller(
    lms: List[Monomial], pairs: Set[Tuple[int, int]], new_lm: Monomial
) -> Set[Tuple[int, int]]:
    """Pair set after appending a basis element with leading monomial new_lm."""
    t = len(lms)
    kept = {
        (i, j) for (i, j) in pairs
        if not monomial_divides(new_lm, _lcm(lms[i], lms[j]))
        or _lcm(lms[i], lms[j]) == _lcm(lms[i], new_lm)
        or _lcm(lms[i], lms[j]) == _lcm(lms[j], new_lm)
    }
    by_lcm: Dict[Monomial, List[int]] = {}
    for i in range(t):
        by_lcm.setdefault(_lcm(lms[i], new_lm), []).append(i)
    minimal: List[Monomial] = []
    for lcm in sorted(by_lcm, key=grevlex_key):
        if all(not monomial_divides(other, lcm) for other in minimal):
            minimal.append(lcm)
    for lcm in minimal:
        # Buchberger's first criterion: coprime leading monomials
        coprime = any(lcm == tuple(a + b for a, b in zip(lms[i], new_lm)) for i in by_lcm[lcm])
        if not coprime:
            kept.add((min(by_lcm[lcm]), t))
    return kept


def buchberger(generators: Sequence[Polynomial], budget: Union[None, int, StepBudget] = None) -> GroebnerBasis:
    """
    Reduced Gröbner basis of the ideal generated by `generators`.

    Args:
        generators: Polynomials sharing one field and variable count
        budget: Reduction step limit (int) or a shared StepBudget

    Returns:
        The reduced basis, monic generators sorted by descending leading monomial

    Raises:
        GroebnerBudgetExceeded: the step budget ran out
    """
    field, nvars = _check_generators(generators)
    budget = _as_budget(budget)
    basis: List[Polynomial] = []
    lms: List[Monomial] = []
    pairs: Set[Tuple[int, int]] = set()

    def add(poly: Polynomial) -> None:
        nonlocal pairs
        poly = poly.monic()
        lm = poly.leading_monomial()
        pairs = _gebauer_moeller(lms, pairs, lm)
        basis.append(poly)
        lms.append(lm)

    for g in generators:
        if not g.is_zero():
            add(g)

    while pairs:
        i, j = min(pairs, key=lambda ij: (grevlex_key(_lcm(lms[ij[0]], lms[ij[1]])), ij[1], ij[0]))
        pairs.remove((i, j))
        lcm = _lcm(lms[i], lms[j])
        s = basis[i].multiply_term(_quotient(lcm, lms[i]), field.one()).subtract(
            basis[j].multiply_term(_quotient(lcm, lms[j]), field.one())
        )
        r = normal_form(s, basis, budget)
        if not r.is_zero():
            add(r)
            if r.is_constant():
                break

    reduced = _interreduce(_minimalize(basis), budget)
    logger.debug(f"Buchberger: {len(generators)} generators -> {len(reduced)} basis elements, {budget.used} steps")
    return GroebnerBasis(tuple(reduced), field, nvars, GREVLEX, budget.used)


def _minimalize(basis: List[Polynomial]) -> List[Polynomial]:
    minimal: List[Polynomial] = []
    for g in sorted(basis, key=lambda p: grevlex_key(p.leading_monomial())):
        if all(not monomial_divides(h.leading_monomial(), g.leading_monomial()) for h in minimal):
            minimal.append(g)
    return minimal


def _interreduce(basis: List[Polynomial], budget: StepBudget) -> List[Polynomial]:
    reduced = []
    for i, g in enumerate(basis):
        others = basis[:i] + basis[i + 1:]
        reduced.append(normal_form(g, others, budget).monic())
    return sorted(reduced, key=lambda p: grevlex_key(p.leading_monomial()), reverse=True)


def quotient_dimension(gb: GroebnerBasis) -> Dimension:
    """Number of standard monomials, or INFINITE."""
    standard = gb.standard_monomials()
    return INFINITE if standard is None else len(standard)


# -- local standard bases ------------------------------------------------------


@dataclass
class _LocalElement:
    terms: Dict[Monomial, Any]
    lm: Monomial
    lc: Any
    ecart: int

    @classmethod
    def of(cls, terms: Dict[Monomial, Any]) -> "_LocalElement":
        lm = max(terms, key=local_key)
        return cls(terms, lm, terms[lm], max(sum(m) for m in terms) - sum(lm))


def _mora_normal_form(
    h: Dict[Monomial, Any], basis: List[_LocalElement], field: CoefficientField, budget: StepBudget
) -> Dict[Monomial, Any]:
    """Weak normal form: reduce until the leading term is not divisible by any leading monomial."""
    work = dict(h)
    reducers = list(basis)
    while work:
        current = _LocalElement.of(work)
        candidates = [g for g in reducers if monomial_divides(g.lm, current.lm)]
        if not candidates:
            return work
        g = min(candidates, key=lambda e: e.ecart)
        budget.tick(len(reducers))
        if g.ecart > current.ecart:
            reducers.append(_LocalElement.of(dict(work)))
        _subtract_multiple(work, g.terms, _quotient(current.lm, g.lm), field.div(current.lc, g.lc), field)
    return work


def local_standard_basis(
    generators: Sequence[Polynomial], budget: Union[None, int, StepBudget] = None
) -> GroebnerBasis:
    """Standard basis of the ideal in the local ring at the origin (Mora's algorithm)."""
    field, nvars = _check_generators(generators)
    budget = _as_budget(budget)
    elements = [_LocalElement.of(g.term_dict()) for g in generators if not g.is_zero()]
    unit = Polynomial.constant(field, nvars, 1)
    if any(sum(e.lm) == 0 for e in elements):
        return GroebnerBasis((unit,), field, nvars, LOCAL_DEGREE, budget.used)

    basis: List[_LocalElement] = []
    lms: List[Monomial] = []
    pairs: Set[Tuple[int, int]] = set()

    def add(element: _LocalElement) -> None:
        nonlocal pairs
        pairs = _gebauer_moeller(lms, pairs, element.lm)
        basis.append(element)
        lms.append(element.lm)

    for element in elements:
        add(element)

    while pairs:
        i, j = min(pairs, key=lambda ij: (sum(_lcm(lms[ij[0]], lms[ij[1]])), ij[1], ij[0]))
        pairs.remove((i, j))
        a, b = basis[i], basis[j]
        lcm = _lcm(a.lm, b.lm)
        s: Dict[Monomial, Any] = {}
        _subtract_multiple(s, a.terms, _quotient(lcm, a.lm), field.neg(field.inv(a.lc)), field)
        _subtract_multiple(s, b.terms, _quotient(lcm, b.lm), field.inv(b.lc), field)
        r = _mora_normal_form(s, basis, field, budget)
        if not r:
            continue
        element = _LocalElement.of(r)
        if sum(element.lm) == 0:
            return GroebnerBasis((unit,), field, nvars, LOCAL_DEGREE, budget.used)
        add(element)
    elements = basis

    minimal: List[_LocalElement] = []
    for e in sorted(elements, key=lambda el: local_key(el.lm), reverse=True):
        if all(not monomial_divides(other.lm, e.lm) for other in minimal):
            minimal.append(e)
    logger.debug(f"Mora: {len(generators)} generators -> {len(minimal)} standard basis elements, {budget.used} steps")
    polys = tuple(Polynomial(field, nvars, e.terms).monic() for e in minimal)
    return GroebnerBasis(polys, field, nvars, LOCAL_DEGREE, budget.used)


def milnor_number(f_local: Polynomial, budget: Union[None, int, StepBudget] = None) -> Dimension:
    """
    Local Milnor number at the origin: dimension of the local ring modulo the partials.

    Returns INFINITE iff the singularity at the origin is not isolated.
    """
    origin = (0,) * f_local.nvars
    if not f_local.field.is_zero(f_local.coefficient(origin)):
        raise InputError("milnor_number needs a polynomial vanishing at the origin")
    partials = [p for p in f_local.gradient() if not p.is_zero()]
    if not partials:
        return INFINITE if f_local.nvars else 1
    basis = local_standard_basis(partials, budget)
    return quotient_dimension(basis)
