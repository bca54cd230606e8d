"""
Singular point analysis of projective hypersurfaces.

Finds the singular points of V(f) over F_p and its extensions, and reports
for each one the multiplicity, the tangent cone, whether the point is
ordinary (tangent cone defines a smooth hypersurface) and the local Milnor
number.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from algebra.fields import CoefficientField, PrimeField, RationalField
from algebra.parsing import format_polynomial
from algebra.polynomial import Polynomial, ProjectivePoint
from singularity.groebner import INFINITE, GroebnerBasis, StepBudget, buchberger, milnor_number
from singularity.solver import projective_zeros
from utils.config import RunConfig
from utils.errors import (
    BadPrimeError,
    FieldChangeRequired,
    FieldMismatchError,
    GroebnerBudgetExceeded,
    InputError,
    NonIsolatedSingularityError,
    NotHomogeneousError,
    PreconditionError,
)

logger = logging.getLogger(__name__)

EXACT_GROEBNER = "exact-groebner"
ENUMERATED_PROBABILISTIC = "enumerated-probabilistic"

MILNOR_FROM_CONE = "tangent-cone"
MILNOR_STANDARD_BASIS = "local-standard-basis"


@dataclass(frozen=True)
class HypersurfaceSpec:
    """A hypersurface V(f) of degree d in P^n."""

    n: int
    d: int
    f: Polynomial

    def __post_init__(self):
        if self.f.is_zero():
            raise InputError("A hypersurface needs a nonzero polynomial")
        if not self.f.is_homogeneous():
            raise NotHomogeneousError("A hypersurface needs a homogeneous polynomial")
        if self.f.nvars != self.n + 1:
            raise FieldMismatchError(f"P^{self.n} needs {self.n + 1} variables, got {self.f.nvars}")
        if self.f.degree != self.d:
            raise InputError(f"Declared degree {self.d} but polynomial has degree {self.f.degree}")

    @classmethod
    def from_polynomial(cls, f: Polynomial) -> "HypersurfaceSpec":
        return cls(n=f.nvars - 1, d=f.degree, f=f)

    @property
    def field(self) -> CoefficientField:
        return self.f.field

    def over_prime(self, p: int) -> "HypersurfaceSpec":
        """The same hypersurface with coefficients in F_p."""
        target = PrimeField(p)
        if self.field == target:
            return self
        if not isinstance(self.field, RationalField):
            raise FieldMismatchError(f"Cannot move {self.field.label()} coefficients to F_{p}")
        reduced = self.f.change_field(target)
        if reduced.degree != self.d or not reduced.is_homogeneous():
            raise InputError(f"Reduction mod {p} drops the degree of the hypersurface")
        return HypersurfaceSpec(self.n, self.d, reduced)


@dataclass(frozen=True)
class OrdinaryCertificate:
    """
    Outcome of an ordinariness check and the evidence behind it.

    ordinary is None when the Gröbner budget ran out and enumeration found
    no witness: an F_p-rational scan never certifies smoothness.
    """

    ordinary: Optional[bool]
    kind: str
    basis: Optional[GroebnerBasis] = None
    counterexample: Optional[ProjectivePoint] = None
    note: str = ""

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"ordinary": self.ordinary, "kind": self.kind}
        if self.basis is not None:
            data["basis"] = [format_polynomial(g) for g in self.basis.generators]
        if self.counterexample is not None:
            data["counterexample"] = self.counterexample.coordinate_strings()
        if self.note:
            data["note"] = self.note
        return data


@dataclass
class SingularPointReport:
    point: ProjectivePoint
    multiplicity: int
    tangent_cone: Polynomial
    ordinary: Optional[bool]
    certificate_kind: str
    milnor: Any
    expected_milnor: Optional[int] = None
    isolated: bool = True
    mu_determinacy: Optional[int] = None
    terminal: bool = False
    certificate: Optional[OrdinaryCertificate] = None
    milnor_method: str = MILNOR_STANDARD_BASIS

    def to_dict(self) -> Dict[str, Any]:
        return {
            "point": self.point.coordinate_strings(),
            "field": self.point.field.label(),
            "multiplicity": self.multiplicity,
            "ordinary": self.ordinary,
            "certificate_kind": self.certificate_kind,
            "milnor": "infinite" if self.milnor == INFINITE else self.milnor,
            "milnor_method": self.milnor_method,
            "expected_milnor": self.expected_milnor,
            "isolated": self.isolated,
            "mu_determinacy": self.mu_determinacy,
            "terminal": self.terminal,
            "tangent_cone": format_polynomial(self.tangent_cone),
        }

    def profile_key(self) -> Tuple[int, int]:
        """(multiplicity, ordinary) with unknown ordinariness as -1, so keys always sort."""
        return (self.multiplicity, -1 if self.ordinary is None else int(self.ordinary))


@dataclass
class AnalysisResult:
    """Reports at the working prime, plus the comparison run at the second prime."""

    prime: int
    e_max: int
    reports: List[SingularPointReport]
    second_prime: Optional[int] = None
    second_reports: Optional[List[SingularPointReport]] = None
    agreement: Optional[bool] = None
    notes: List[str] = field(default_factory=list)
    isolated: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {
            "prime": self.prime,
            "e_max": self.e_max,
            "isolated": self.isolated,
            "certified_points": f"F_{self.prime}^e rational points, e <= {self.e_max}",
            "singular_points": [r.to_dict() for r in self.reports],
            "second_prime": self.second_prime,
            "second_prime_points": None if self.second_reports is None else len(self.second_reports),
            "two_prime_agreement": self.agreement,
            "notes": list(self.notes),
        }


def singular_points(
    spec: HypersurfaceSpec,
    p: int,
    e_max: int = 2,
    groebner_budget: int = 1_000_000,
    enumeration_budget: int = 2_000_000,
) -> List[ProjectivePoint]:
    """
    Points of V(f) over F_{p^e}, e <= e_max, where f and every partial vanish.

    f itself joins the partials only when p divides d (otherwise Euler's
    identity already puts f in their ideal).
    """
    local = spec.over_prime(p)
    system = [g for g in local.f.gradient() if not g.is_zero()]
    if local.d % p == 0 or not system:
        system.append(local.f)
    points = projective_zeros(system, e_max, groebner_budget, enumeration_budget)
    logger.info(f"Found {len(points)} singular point(s) over F_{p}^e, e <= {e_max}")
    return points


def _check_on_hypersurface(spec: HypersurfaceSpec, pt: ProjectivePoint) -> Polynomial:
    f = spec.f.change_field(pt.field)
    if not pt.field.is_zero(f.evaluate(pt.coords)):
        raise PreconditionError(f"Point {pt} does not lie on the hypersurface")
    return f


def tangent_cone_at(spec: HypersurfaceSpec, pt: ProjectivePoint) -> Tuple[int, Polynomial]:
    """Multiplicity and tangent cone (lowest homogeneous part of the local equation)."""
    f = _check_on_hypersurface(spec, pt)
    local = f.translate_and_dehomogenize(pt)
    m = local.order
    return m, local.homogeneous_component(m)


def multiplicity_at(spec: HypersurfaceSpec, pt: ProjectivePoint) -> int:
    """Minimal total degree of the local equation at pt; 1 exactly at smooth points."""
    return tangent_cone_at(spec, pt)[0]


def _enumerated_smoothness(cone: Polynomial, partials: List[Polynomial], limit: int) -> OrdinaryCertificate:
    """Scan the F_p-rational points of P^{k-1} for a common zero of the partials."""
    field = cone.field
    k = cone.nvars
    if not isinstance(field, PrimeField) or (field.p ** k) > limit:
        raise GroebnerBudgetExceeded(limit)
    for chart in range(k):
        for tail in itertools.product(range(field.p), repeat=k - chart - 1):
            coords = [0] * chart + [1] + list(tail)
            if all(field.is_zero(q.evaluate(coords)) for q in partials):
                return OrdinaryCertificate(
                    False, ENUMERATED_PROBABILISTIC, counterexample=ProjectivePoint(field, coords),
                    note="Groebner budget exhausted; witness found by enumeration",
                )
    return OrdinaryCertificate(
        None, ENUMERATED_PROBABILISTIC,
        note=f"Groebner budget exhausted; no F_{field.p}-rational singular point of the tangent cone, "
             f"ordinariness unknown",
    )


def certify_tangent_cone(
    cone: Polynomial,
    groebner_budget: int = 1_000_000,
    enumeration_budget: int = 2_000_000,
) -> OrdinaryCertificate:
    """
    Decide whether a homogeneous form defines a smooth projective hypersurface.

    Smooth iff the Gröbner basis of its partials contains a pure power of
    every variable. A failure is accompanied by a projective common zero of
    the partials when one can be found.
    """
    m = cone.degree
    p = cone.field.characteristic
    if p and m % p == 0:
        raise FieldChangeRequired(f"Characteristic {p} divides the multiplicity {m}; use another prime")
    partials = [g for g in cone.gradient() if not g.is_zero()]
    if not partials:
        return OrdinaryCertificate(False, EXACT_GROEBNER, note="all partials vanish")
    try:
        basis = buchberger(partials, StepBudget(groebner_budget))
    except GroebnerBudgetExceeded:
        logger.warning("Groebner budget exhausted on the tangent cone, falling back to enumeration")
        return _enumerated_smoothness(cone, partials, enumeration_budget)
    if basis.is_irrelevant():
        return OrdinaryCertificate(True, EXACT_GROEBNER, basis=basis)

    missing = [f"x{i}" for i in range(cone.nvars) if i not in basis.pure_powers()]
    note = f"no pure power of {', '.join(missing)} among leading monomials"
    witness = None
    if isinstance(cone.field, PrimeField):
        try:
            zeros = projective_zeros(partials, 2, groebner_budget, enumeration_budget)
            witness = zeros[0] if zeros else None
        except NonIsolatedSingularityError:
            note += "; the singular locus of the tangent cone has positive dimension"
    return OrdinaryCertificate(False, EXACT_GROEBNER, basis=basis, counterexample=witness, note=note)


def is_ordinary(
    spec: HypersurfaceSpec,
    pt: ProjectivePoint,
    groebner_budget: int = 1_000_000,
    enumeration_budget: int = 2_000_000,
) -> OrdinaryCertificate:
    """
    Check that the tangent cone at a singular point of a threefold in P^4 is a cone over a smooth surface.

    Raises:
        PreconditionError: n != 4 or pt is a smooth point
        FieldChangeRequired: the characteristic divides the multiplicity
    """
    if spec.n != 4:
        raise PreconditionError(f"is_ordinary is defined for threefolds in P^4, got P^{spec.n}")
    m, cone = tangent_cone_at(spec, pt)
    if m < 2:
        raise PreconditionError(f"{pt} is a smooth point of the hypersurface")
    return certify_tangent_cone(cone, groebner_budget, enumeration_budget)


def report_point(
    spec: HypersurfaceSpec,
    pt: ProjectivePoint,
    groebner_budget: int = 1_000_000,
    enumeration_budget: int = 2_000_000,
) -> SingularPointReport:
    f = _check_on_hypersurface(spec, pt)
    local = f.translate_and_dehomogenize(pt)
    m = local.order
    cone = local.homogeneous_component(m)
    certificate = certify_tangent_cone(cone, groebner_budget, enumeration_budget)
    if certificate.ordinary and certificate.kind == EXACT_GROEBNER:
        # The partials of a smooth cone are a regular sequence of (m-1)-forms and
        # lead the partials of f in the local order, so mu is already determined.
        mu = (m - 1) ** local.nvars
        method = MILNOR_FROM_CONE
    else:
        mu = milnor_number(local, StepBudget(groebner_budget))
        method = MILNOR_STANDARD_BASIS
    isolated = mu != INFINITE
    ordinary = certificate.ordinary if isolated else False
    report = SingularPointReport(
        point=pt,
        multiplicity=m,
        tangent_cone=cone,
        ordinary=ordinary,
        certificate_kind=certificate.kind,
        milnor=mu,
        expected_milnor=(m - 1) ** spec.n if ordinary else None,
        isolated=isolated,
        mu_determinacy=m if ordinary else None,
        terminal=bool(ordinary) and m <= 3,
        certificate=certificate,
        milnor_method=method,
    )
    if ordinary and mu != report.expected_milnor:
        logger.warning(f"Milnor number {mu} at {pt} differs from (m-1)^{spec.n} = {report.expected_milnor}")
    return report


def analyze(
    spec: HypersurfaceSpec,
    p: int = 101,
    e_max: int = 2,
    groebner_budget: int = 1_000_000,
    enumeration_budget: int = 2_000_000,
) -> List[SingularPointReport]:
    """One report per singular point over F_{p^e}, e <= e_max, in enumeration order."""
    points = singular_points(spec, p, e_max, groebner_budget, enumeration_budget)
    local = spec.over_prime(p)
    reports = [report_point(local, pt, groebner_budget, enumeration_budget) for pt in points]
    for report in reports:
        logger.info(
            f"{report.point}: m={report.multiplicity}, ordinary={report.ordinary}, milnor={report.milnor}"
        )
    return reports


def analyze_two_primes(spec: HypersurfaceSpec, config: RunConfig) -> AnalysisResult:
    """
    Analyze at config.prime and, for rational input, again at config.second_prime.

    The runs agree when they find the same number of points and the same
    sorted multiset of (multiplicity, ordinary). Disagreement is logged as a
    bad-prime diagnostic, and raised as BadPrimeError in strict mode.
    """
    budgets = dict(groebner_budget=config.groebner_budget, enumeration_budget=config.enumeration_budget)
    if isinstance(spec.field, PrimeField):
        prime = spec.field.p
        try:
            reports = analyze(spec, prime, config.e_max, **budgets)
        except NonIsolatedSingularityError as e:
            return _non_isolated_result(prime, config.e_max, e)
        result = AnalysisResult(prime, config.e_max, reports)
        result.notes.append(f"input is over F_{prime}; second-prime check skipped")
        return result

    try:
        reports = analyze(spec, config.prime, config.e_max, **budgets)
    except NonIsolatedSingularityError as e:
        result = _non_isolated_result(config.prime, config.e_max, e)
        result.notes.append("second-prime check skipped")
        return result

    try:
        second = analyze(spec, config.second_prime, config.e_max, **budgets)
        second_isolated = True
    except NonIsolatedSingularityError as e:
        logger.info(f"F_{config.second_prime}: {e}")
        second, second_isolated = [], False
    agreement = (
        second_isolated
        and len(reports) == len(second)
        and sorted(r.profile_key() for r in reports) == sorted(r.profile_key() for r in second)
    )
    result = AnalysisResult(config.prime, config.e_max, reports, config.second_prime, second, agreement)
    if not agreement:
        found = f"{len(second)}" if second_isolated else "a positive-dimensional singular locus"
        message = (
            f"Bad prime suspected: F_{config.prime} finds {len(reports)} point(s), "
            f"F_{config.second_prime} finds {found}"
        )
        logger.warning(message)
        result.notes.append(message)
        if config.strict_primes:
            raise BadPrimeError(message)
    return result


def _non_isolated_result(prime: int, e_max: int, error: NonIsolatedSingularityError) -> AnalysisResult:
    message = f"Singular locus is not isolated over F_{prime}: {error}"
    logger.warning(message)
    return AnalysisResult(prime, e_max, [], isolated=False, notes=[message])
