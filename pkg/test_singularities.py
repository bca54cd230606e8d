#!/usr/bin/env python3
"""
Tests for singular point analysis of hypersurfaces in P^4.

The fixtures are small members of the construction families whose singular
loci were worked out by hand.
"""

import sys
from pathlib import Path

import pytest

# Add project root to path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from algebra.fields import QQ_FIELD, PrimeField
from algebra.parsing import parse_polynomial, read_poly_file
from algebra.polynomial import ProjectivePoint
from singularity.analyzer import (
    ENUMERATED_PROBABILISTIC,
    EXACT_GROEBNER,
    MILNOR_FROM_CONE,
    MILNOR_STANDARD_BASIS,
    HypersurfaceSpec,
    SingularPointReport,
    analyze,
    analyze_two_primes,
    certify_tangent_cone,
    is_ordinary,
    multiplicity_at,
    singular_points,
    tangent_cone_at,
)
from utils.config import RunConfig
from utils.errors import (
    BadPrimeError,
    FieldChangeRequired,
    GroebnerBudgetExceeded,
    InputError,
    NotHomogeneousError,
    PreconditionError,
)

FIXTURES = project_root / "fixtures"
F5 = PrimeField(5)
F101 = PrimeField(101)
VERTEX = ProjectivePoint(F101, [0, 0, 0, 0, 1])


def fixture_spec(name: str) -> HypersurfaceSpec:
    return HypersurfaceSpec.from_polynomial(read_poly_file(str(FIXTURES / name)))


def spec_of(text: str, nvars: int = 5) -> HypersurfaceSpec:
    return HypersurfaceSpec.from_polynomial(parse_polynomial(text, nvars))


def test_example52_has_one_ordinary_node():
    reports = analyze(fixture_spec("example52_d4_m2.poly"), p=101, e_max=2)
    assert len(reports) == 1
    node = reports[0]
    assert node.point == VERTEX
    assert node.multiplicity == 2
    assert node.ordinary
    assert node.certificate_kind == EXACT_GROEBNER
    assert node.milnor == 1
    assert node.expected_milnor == 1
    assert node.terminal and node.isolated and node.mu_determinacy == 2


def test_prop61_fixture_nodes_are_the_base_points():
    reports = analyze(fixture_spec("prop61_t1_delta2.poly"))
    expected = {ProjectivePoint(F101, c) for c in (
        [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1], [0, 0, 1, 1, 1],
    )}
    assert {r.point for r in reports} == expected
    assert all(r.multiplicity == 2 and r.ordinary and r.milnor == 1 for r in reports)


def test_kollar_double_point_is_not_ordinary():
    spec = fixture_spec("kollar.poly")
    reports = analyze(spec)
    assert len(reports) == 1
    report = reports[0]
    assert report.point == VERTEX
    assert report.multiplicity == 2
    assert not report.ordinary
    assert report.expected_milnor is None
    assert not report.terminal
    certificate = is_ordinary(spec.over_prime(101), VERTEX)
    assert not certificate.ordinary
    assert certificate.counterexample == ProjectivePoint(F101, [0, 0, 1, 0])
    assert spec.f.in_coordinate_ideal([0, 1])


def test_cone_vertex_is_an_ordinary_quadruple_point():
    reports = analyze(fixture_spec("cone_fermat4.poly"))
    assert [r.point for r in reports] == [VERTEX]
    assert reports[0].multiplicity == 4
    assert reports[0].ordinary
    assert reports[0].milnor == 81 == reports[0].expected_milnor
    assert not reports[0].terminal


def test_fermat_quintic_is_smooth():
    assert analyze(fixture_spec("fermat_quintic.poly")) == []


def test_singular_points_are_sorted_and_on_the_hypersurface():
    spec = fixture_spec("prop61_t1_delta2.poly")
    points = singular_points(spec, 101)
    assert points == sorted(points, key=lambda pt: pt.sort_key())
    local = spec.over_prime(101).f
    for pt in points:
        assert F101.is_zero(local.evaluate(pt.coords))


def test_tangent_cone_and_multiplicity():
    spec = fixture_spec("example52_d4_m2.poly").over_prime(101)
    m, cone = tangent_cone_at(spec, VERTEX)
    assert m == 2
    assert cone == parse_polynomial("x0^2 + x1^2 + x2^2 + x3^2", 4, F101)

    quadric = spec_of("x0*x1 + x2*x3 + x4^2")
    assert multiplicity_at(quadric, ProjectivePoint(QQ_FIELD, [1, 0, 0, 0, 0])) == 1
    with pytest.raises(PreconditionError):
        multiplicity_at(quadric, ProjectivePoint(QQ_FIELD, [1, 1, 0, 0, 0]))
    with pytest.raises(PreconditionError):
        is_ordinary(quadric, ProjectivePoint(QQ_FIELD, [1, 0, 0, 0, 0]))


def test_is_ordinary_needs_a_threefold():
    spec = spec_of("x0^2 + x1^2 + x2^2", nvars=4)
    with pytest.raises(PreconditionError):
        is_ordinary(spec, ProjectivePoint(QQ_FIELD, [0, 0, 0, 1]))


def test_certificate_needs_characteristic_prime_to_multiplicity():
    cone = parse_polynomial("x0^2 + x1^2 + x2^2 + x3^2", 4, PrimeField(2))
    with pytest.raises(FieldChangeRequired):
        certify_tangent_cone(cone)


def test_certificate_of_smooth_quadric_surface():
    cone = parse_polynomial("x0*x3 + x1*x2", 4, F101)
    certificate = certify_tangent_cone(cone)
    assert certificate.ordinary
    assert certificate.basis.is_irrelevant()
    assert certificate.to_dict()["ordinary"] is True


def test_hypersurface_spec_validation():
    with pytest.raises(NotHomogeneousError):
        spec_of("x0^2 + x1")
    with pytest.raises(InputError):
        HypersurfaceSpec.from_polynomial(parse_polynomial("0", 5))
    with pytest.raises(InputError):
        spec_of("101*x0^2").over_prime(101)


@pytest.mark.parametrize("name", [
    "example52_d4_m2.poly", "prop61_t1_delta2.poly", "kollar.poly", "cone_fermat4.poly", "fermat_quintic.poly",
])
def test_two_primes_agree_on_fixtures(name):
    result = analyze_two_primes(fixture_spec(name), RunConfig(strict_primes=True))
    assert result.agreement is True
    assert result.second_prime == 211
    assert len(result.second_reports) == len(result.reports)


def test_bad_prime_is_reported():
    """Mod 101 the smooth quadric degenerates into a cone with a node."""
    spec = spec_of("x0^2 + x1^2 + x2^2 + x3^2 + 101*x4^2")
    result = analyze_two_primes(spec, RunConfig())
    assert result.agreement is False
    assert len(result.reports) == 1 and result.second_reports == []
    assert any("Bad prime" in note for note in result.notes)
    with pytest.raises(BadPrimeError):
        analyze_two_primes(spec, RunConfig(strict_primes=True))


def test_prime_field_input_skips_second_prime():
    f = read_poly_file(str(FIXTURES / "example52_d4_m2.poly")).change_field(F101)
    result = analyze_two_primes(HypersurfaceSpec.from_polynomial(f), RunConfig())
    assert result.second_prime is None
    assert result.agreement is None
    assert len(result.reports) == 1
    assert result.to_dict()["notes"] == ["input is over F_101; second-prime check skipped"]


# -- enumeration fallback ------------------------------------------------------


@pytest.fixture
def exhausted_groebner(monkeypatch):
    def refuse(generators, budget=None):
        raise GroebnerBudgetExceeded(1)

    monkeypatch.setattr("singularity.analyzer.buchberger", refuse)


def test_enumeration_finds_a_witness_of_non_smoothness(exhausted_groebner):
    cone = parse_polynomial("x0^2 + x1^2 + x2^2", 4, F5)
    certificate = certify_tangent_cone(cone, groebner_budget=1)
    assert certificate.ordinary is False
    assert certificate.kind == ENUMERATED_PROBABILISTIC
    assert certificate.counterexample == ProjectivePoint(F5, [0, 0, 0, 1])


def test_enumeration_without_witness_leaves_ordinariness_unknown(exhausted_groebner):
    cone = parse_polynomial("x0*x3 + x1*x2", 4, F5)
    certificate = certify_tangent_cone(cone, groebner_budget=1)
    assert certificate.ordinary is None
    assert certificate.kind == ENUMERATED_PROBABILISTIC
    assert certificate.counterexample is None
    assert certificate.to_dict()["ordinary"] is None


def test_enumeration_respects_its_budget(exhausted_groebner):
    cone = parse_polynomial("x0*x3 + x1*x2", 4, F5)
    with pytest.raises(GroebnerBudgetExceeded):
        certify_tangent_cone(cone, groebner_budget=1, enumeration_budget=100)


def test_unknown_ordinariness_still_sorts():
    cone = parse_polynomial("x0^2 + x1^2 + x2^2 + x3^2", 4, F101)
    known = SingularPointReport(VERTEX, 2, cone, True, EXACT_GROEBNER, 1)
    unknown = SingularPointReport(VERTEX, 2, cone, None, ENUMERATED_PROBABILISTIC, 1)
    assert unknown.profile_key() == (2, -1)
    assert sorted([known.profile_key(), unknown.profile_key()]) == [(2, -1), (2, 1)]


# -- Milnor numbers of ordinary points -----------------------------------------


def test_ordinary_point_milnor_number_comes_from_the_cone():
    report = analyze(fixture_spec("cone_fermat4.poly"))[0]
    assert report.milnor_method == MILNOR_FROM_CONE
    assert report.to_dict()["milnor_method"] == "tangent-cone"


def test_non_ordinary_point_milnor_number_uses_a_local_basis():
    report = analyze(fixture_spec("kollar.poly"))[0]
    assert report.milnor_method == MILNOR_STANDARD_BASIS


# -- non-isolated singular loci ------------------------------------------------


def test_non_isolated_locus_is_reported_not_raised():
    result = analyze_two_primes(spec_of("x0^2 + x1^2 + x2^2"), RunConfig(strict_primes=True))
    assert result.isolated is False
    assert result.reports == []
    assert result.second_reports is None
    data = result.to_dict()
    assert data["isolated"] is False
    assert data["singular_points"] == []
    assert any("not isolated" in note and "chart" in note.lower() for note in data["notes"])


def test_non_isolated_locus_over_prime_field_input():
    spec = HypersurfaceSpec.from_polynomial(parse_polynomial("x0^2 + x1^2 + x2^2", 5, F101))
    result = analyze_two_primes(spec, RunConfig())
    assert result.isolated is False
    assert result.prime == 101


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
