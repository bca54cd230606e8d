"""
Hypersurfaces of P^4 with prescribed ordinary multiple points.

Every constructor draws its general coefficients from a seeded sampler,
then analyzes the result over F_p and re-draws until the singular profile
is confirmed or the retries run out.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

from algebra.fields import QQ_FIELD, PrimeField
from algebra.parsing import format_polynomial
from algebra.polynomial import Polynomial, ProjectivePoint, monomials_of_degree
from constructions.sampling import CoefficientSampler
from criteria.engine import strict_transform_class
from criteria.verdict import MultiplicityProfile, Position
from invariants.defect import cone_b4
from invariants.intersection import intersection_number
from singularity.analyzer import HypersurfaceSpec, SingularPointReport, analyze, certify_tangent_cone
from utils.config import RunConfig
from utils.errors import ConstructionError, NonIsolatedSingularityError, PreconditionError

logger = logging.getLogger(__name__)

NVARS = 5
PLANE_WITNESS = "plane {x0 = x1 = 0} is contained in X"
VERTEX = (0, 0, 0, 0, 1)


@dataclass
class ConstructionResult:
    family: str
    spec: HypersurfaceSpec
    expected_singular_points: List[ProjectivePoint]
    expected_multiplicity: int
    non_factorial_witness: Optional[str] = None
    seed: int = 0
    retries: int = 0
    expect_ordinary: bool = True
    params: Dict[str, Any] = field(default_factory=dict)
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def profile(self) -> MultiplicityProfile:
        position = Position.CONTAINED_IN_PLANE if self.non_factorial_witness == PLANE_WITNESS else Position.UNKNOWN
        return MultiplicityProfile(
            self.spec.d, (self.expected_multiplicity,) * len(self.expected_singular_points), position
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "params": dict(self.params),
            "n": self.spec.n,
            "d": self.spec.d,
            "k": len(self.expected_singular_points),
            "expected_singular_points": [pt.coordinate_strings() for pt in self.expected_singular_points],
            "expected_multiplicity": self.expected_multiplicity,
            "expected_ordinary": self.expect_ordinary,
            "non_factorial_witness": self.non_factorial_witness,
            "seed": self.seed,
            "retries": self.retries,
            "polynomial": format_polynomial(self.spec.f),
            "metadata": dict(self.metadata),
        }


def fermat_form(nvars: int, degree: int, count: int = 4) -> Polynomial:
    """x0^degree + ... + x_{count-1}^degree in `nvars` variables."""
    terms = {}
    for i in range(count):
        exponent = [0] * nvars
        exponent[i] = degree
        terms[tuple(exponent)] = 1
    return Polynomial(QQ_FIELD, nvars, terms)


def _in_p3_coordinates(g: Polynomial) -> Polynomial:
    """Regard a form in x0..x3 (4 or 5 variables, x4 unused) as a polynomial in 5 variables."""
    if g.nvars == NVARS:
        if any(m[4] for m, _ in g.terms()):
            raise PreconditionError("The surface equation must not involve x4")
        return g
    if g.nvars != 4:
        raise PreconditionError(f"Expected a form in x0..x3, got {g.nvars} variables")
    return Polynomial(g.field, NVARS, {m + (0,): c for m, c in g.terms()})


def _check_smooth_surface(g: Polynomial, config: RunConfig) -> None:
    surface = g.restrict({4: 0}) if g.nvars == NVARS else g
    certificate = certify_tangent_cone(
        surface.change_field(PrimeField(config.prime)), config.groebner_budget, config.enumeration_budget
    )
    if certificate.ordinary is None:
        raise PreconditionError(
            f"Smoothness of V({format_polynomial(surface)}) could not be certified: {certificate.note}"
        )
    if not certificate.ordinary:
        raise PreconditionError(f"V({format_polynomial(surface)}) is not a smooth surface: {certificate.note}")


def _profile_matches(
    reports: Sequence[SingularPointReport],
    expected: Sequence[ProjectivePoint],
    multiplicity: int,
    ordinary: bool,
    prime: int,
) -> bool:
    target = PrimeField(prime)
    wanted = {pt.change_field(target) for pt in expected}
    found = {r.point for r in reports}
    if found != wanted:
        logger.debug(f"Expected {len(wanted)} singular point(s), found {len(found)}")
        return False
    return all(r.multiplicity == multiplicity and r.ordinary == ordinary for r in reports)


def _construct(
    family: str,
    draw: Callable[[CoefficientSampler], Polynomial],
    expected: List[ProjectivePoint],
    multiplicity: int,
    config: RunConfig,
    ordinary: bool = True,
) -> ConstructionResult:
    """Draw, analyze and retry until the singular profile matches."""
    sampler = CoefficientSampler(config.seed, config.coefficient_bound)
    for attempt in range(config.retries + 1):
        f = draw(sampler)
        spec = HypersurfaceSpec.from_polynomial(f)
        try:
            reports = analyze(spec, config.prime, config.e_max, config.groebner_budget, config.enumeration_budget)
        except NonIsolatedSingularityError as e:
            logger.info(f"{family}: draw {attempt} has non-isolated singularities ({e}), re-drawing")
            continue
        if _profile_matches(reports, expected, multiplicity, ordinary, config.prime):
            logger.info(f"{family}: verified after {attempt} re-draw(s)")
            return ConstructionResult(
                family, spec, expected, multiplicity, seed=config.seed, retries=attempt, expect_ordinary=ordinary
            )
        logger.info(f"{family}: draw {attempt} failed verification, re-drawing")
    raise ConstructionError(f"{family} could not be verified", config.seed, config.retries)


def example52(d: int, m: int, f_m: Optional[Polynomial] = None, config: RunConfig = RunConfig()) -> ConstructionResult:
    """
    f = x4^(d-m) f_m + x4^(d-m-1) f_{m+1} + ... + f_d with a unique ordinary m-ple point at [0:0:0:0:1].

    Args:
        d: Degree, larger than m
        m: Multiplicity, at least 2
        f_m: Smooth-surface form of degree m in x0..x3; Fermat by default
        config: Seed, retries and verification prime

    Raises:
        PreconditionError: m >= d, m < 2 or f_m is not a smooth surface form of degree m
        ConstructionError: no draw passed verification
    """
    if m < 2 or m >= d:
        raise PreconditionError(f"example52 needs 2 <= m < d, got d={d}, m={m}")
    base = _in_p3_coordinates(f_m) if f_m is not None else fermat_form(NVARS, m)
    if not base.is_homogeneous() or base.degree != m:
        raise PreconditionError(f"f_m must be homogeneous of degree {m}")
    _check_smooth_surface(base, config)
    x4 = Polynomial.variable(QQ_FIELD, NVARS, 4)
    affine = [0, 1, 2, 3]

    def draw(sampler: CoefficientSampler) -> Polynomial:
        f = base.multiply(x4.power(d - m))
        for j in range(m + 1, d + 1):
            f = f.add(sampler.form(NVARS, j, affine).multiply(x4.power(d - j)))
        return f

    vertex = ProjectivePoint(QQ_FIELD, VERTEX)
    result = _construct("example52", draw, [vertex], m, config)
    local = result.spec.f.translate_and_dehomogenize(vertex)
    if local.homogeneous_component(m) != base.restrict({4: 0}):
        raise ConstructionError("example52 lost its prescribed tangent cone", config.seed, result.retries)
    result.params = {"d": d, "m": m, "f_m": format_polynomial(base)}
    result.metadata = {"factorial_by": "ThmB"}
    return result


def pencil(delta: int):
    """
    Two generators P, Q of a pencil of degree-delta curves in the plane {x0 = x1 = 0}, and its base points.

    Base points are returned in P^4 with x0 = x1 = 0.
    """
    x2, x3, x4 = (Polynomial.variable(QQ_FIELD, NVARS, i) for i in (2, 3, 4))
    if delta == 1:
        return x3, x4, [ProjectivePoint(QQ_FIELD, [0, 0, 1, 0, 0])]
    if delta == 2:
        p = x2.multiply(x3).subtract(x3.multiply(x4))
        q = x2.multiply(x4).subtract(x3.multiply(x4))
        frame = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]
        return p, q, [ProjectivePoint(QQ_FIELD, [0, 0] + c) for c in frame]
    p = Polynomial.constant(QQ_FIELD, NVARS, 1)
    q = Polynomial.constant(QQ_FIELD, NVARS, 1)
    for i in range(delta):
        p = p.multiply(x3.subtract(x2.scalar_multiply(i)))
        q = q.multiply(x4.subtract(x2.scalar_multiply(i)))
    points = [ProjectivePoint(QQ_FIELD, [0, 0, 1, a, b]) for a in range(delta) for b in range(delta)]
    return p, q, points


def _correction(sampler: CoefficientSampler, t: int, delta: int) -> Polynomial:
    """Sum over j = t..delta*t of a general form of degree j in x0, x1 times each monomial of degree delta*t - j in x2, x3, x4."""
    total = Polynomial.zero(QQ_FIELD, NVARS)
    for j in range(t, delta * t + 1):
        for alpha, beta, gamma in monomials_of_degree(3, delta * t - j):
            phi = sampler.form(NVARS, j, [0, 1])
            total = total.add(phi.multiply_term((0, 0, alpha, beta, gamma), 1))
    return total


def prop61(t: int, delta: int, config: RunConfig = RunConfig()) -> ConstructionResult:
    """
    Non-factorial f = x0 F + x1 G of degree delta*t + 1 with delta^2 ordinary (t+1)-ple points.

    F and G are products of t general pencil members plus correction terms;
    the singular points are the base points of the pencil, all in the plane
    {x0 = x1 = 0} contained in X.
    """
    if t < 1 or delta < 1:
        raise PreconditionError(f"prop61 needs t >= 1 and delta >= 1, got t={t}, delta={delta}")
    d, k, m = delta * t + 1, delta ** 2, t + 1
    p, q, base_points = pencil(delta)
    if len(base_points) != k:
        raise ConstructionError(f"pencil has {len(base_points)} base points, expected {k}", config.seed, 0)
    x0, x1 = Polynomial.variable(QQ_FIELD, NVARS, 0), Polynomial.variable(QQ_FIELD, NVARS, 1)

    def draw(sampler: CoefficientSampler) -> Polynomial:
        parameters = sampler.distinct_pencil_parameters(2 * t)
        members = [p.scalar_multiply(lam).add(q.scalar_multiply(mu)) for lam, mu in parameters]
        big_f = Polynomial.constant(QQ_FIELD, NVARS, 1)
        big_g = Polynomial.constant(QQ_FIELD, NVARS, 1)
        for member in members[:t]:
            big_f = big_f.multiply(member)
        for member in members[t:]:
            big_g = big_g.multiply(member)
        big_f = big_f.add(_correction(sampler, t, delta))
        big_g = big_g.add(_correction(sampler, t, delta))
        return x0.multiply(big_f).add(x1.multiply(big_g))

    result = _construct("prop61", draw, base_points, m, config)
    if not result.spec.f.in_coordinate_ideal([0, 1]):
        raise ConstructionError("prop61 output does not contain the plane x0 = x1 = 0", config.seed, result.retries)
    result.non_factorial_witness = PLANE_WITNESS
    result.params = {"t": t, "delta": delta}
    result.metadata = {"d": d, "k": k, "m": m, "boundary_identity": k * (m - 1) ** 2 == (d - 1) ** 2}
    return result


def kollar_quartic(config: RunConfig = RunConfig()) -> ConstructionResult:
    """
    General member of the span of x0^4, x1^4, (x4^2 x3 + x2^3) x0, x3^3 x1, x4^2 x1^2.

    Its only singular point [0:0:0:0:1] is a double point whose tangent cone
    is a cone over a singular quadric surface, so it is not ordinary.
    """
    def monomial(*exponent: int) -> Polynomial:
        return Polynomial.monomial(QQ_FIELD, NVARS, exponent)

    span = [
        monomial(4, 0, 0, 0, 0),
        monomial(0, 4, 0, 0, 0),
        monomial(1, 0, 0, 1, 2).add(monomial(1, 0, 3, 0, 0)),
        monomial(0, 1, 0, 3, 0),
        monomial(0, 2, 0, 0, 2),
    ]

    def draw(sampler: CoefficientSampler) -> Polynomial:
        total = Polynomial.zero(QQ_FIELD, NVARS)
        for g in span:
            total = total.add(g.scalar_multiply(sampler.coefficient()))
        return total

    vertex = ProjectivePoint(QQ_FIELD, VERTEX)
    result = _construct("kollar", draw, [vertex], 2, config, ordinary=False)
    if not result.spec.f.in_coordinate_ideal([0, 1]):
        raise ConstructionError("Kollar quartic lost the plane x0 = x1 = 0", config.seed, result.retries)
    result.non_factorial_witness = PLANE_WITNESS
    result.metadata = {"tangent_cone_smooth": False}
    return result


def cone_over_surface(g: Polynomial, pic_Z_asserted: bool, config: RunConfig = RunConfig()) -> ConstructionResult:
    """
    The cone in P^4 with vertex [0:0:0:0:1] over the smooth surface V(g) in P^3.

    The cone is factorial iff Pic V = Z; that hypothesis is taken from the
    caller and not verified.
    """
    f = _in_p3_coordinates(g)
    if not f.is_homogeneous() or f.degree < 2:
        raise PreconditionError("g must be a homogeneous form of degree at least 2")
    _check_smooth_surface(f, config)
    d = f.degree
    vertex = ProjectivePoint(QQ_FIELD, VERTEX)
    result = _construct("cone", lambda sampler: f, [vertex], d, config.with_overrides(retries=0))
    cls = strict_transform_class(MultiplicityProfile(d, (d,)))
    result.params = {"g": format_polynomial(f.restrict({4: 0}))}
    result.metadata = {
        "pic_Z_asserted": pic_Z_asserted,
        "factorial": pic_Z_asserted,
        "locally_analytically_factorial": pic_Z_asserted,
        "b4": cone_b4(d),
        "strict_transform_class": cls.to_dict(),
        "strict_transform_self_intersection": intersection_number(cls),
    }
    return result
