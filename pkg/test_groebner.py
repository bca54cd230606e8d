#!/usr/bin/env python3
"""
Tests for Gröbner bases, local standard bases, Milnor numbers and the projective zero solver.
"""

import sys
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

# Add project root to path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from algebra.fields import QQ_FIELD, PrimeField
from algebra.parsing import parse_polynomial
from algebra.polynomial import Polynomial, ProjectivePoint, monomial_divides, monomials_of_degree
from singularity.groebner import (
    INFINITE,
    StepBudget,
    buchberger,
    local_standard_basis,
    milnor_number,
    normal_form,
    quotient_dimension,
)
from singularity.solver import minimal_polynomial, projective_zeros
from utils.errors import (
    EnumerationBudgetExceeded,
    GroebnerBudgetExceeded,
    InputError,
    NonIsolatedSingularityError,
)

F5 = PrimeField(5)
F7 = PrimeField(7)


def poly(text: str, nvars: int = 2, field=QQ_FIELD) -> Polynomial:
    return parse_polynomial(text, nvars, field)


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    lcm = tuple(max(a, b) for a, b in zip(f.leading_monomial(), g.leading_monomial()))
    left = tuple(a - b for a, b in zip(lcm, f.leading_monomial()))
    right = tuple(a - b for a, b in zip(lcm, g.leading_monomial()))
    field = f.field
    return f.multiply_term(left, field.inv(f.leading_coefficient())).subtract(
        g.multiply_term(right, field.inv(g.leading_coefficient()))
    )


def assert_reduced_groebner_basis(generators, gb):
    basis = list(gb.generators)
    for g in generators:
        assert normal_form(g, basis).is_zero()
    for i, f in enumerate(basis):
        assert f.leading_coefficient() == f.field.one()
        for j, g in enumerate(basis):
            if i < j:
                assert normal_form(s_polynomial(f, g), basis).is_zero()
            if i != j:
                assert not any(monomial_divides(g.leading_monomial(), m) for m, _ in f.terms())


# -- global bases --------------------------------------------------------------


def test_buchberger_three_points():
    """x0^2 = -x1, x0*x1 = -1 cuts out the three points with x0^3 = 1."""
    generators = [poly("x0^2 + x1"), poly("x0*x1 + 1")]
    gb = buchberger(generators)
    assert_reduced_groebner_basis(generators, gb)
    assert gb.contains(poly("x1^2 - x0"))
    assert gb.is_irrelevant()
    assert quotient_dimension(gb) == 3


def test_buchberger_unit_ideal():
    gb = buchberger([poly("x0"), poly("x0 - 1")])
    assert gb.is_unit()
    assert quotient_dimension(gb) == 0


def test_monomial_quotient_and_positive_dimension():
    assert quotient_dimension(buchberger([poly("x0^2"), poly("x1^3")])) == 6
    assert quotient_dimension(buchberger([poly("x0*x1")])) == INFINITE


def test_buchberger_budget():
    with pytest.raises(GroebnerBudgetExceeded):
        buchberger([poly("x0^2 + x1"), poly("x0*x1 + 1")], StepBudget(0))


def test_buchberger_rejects_mixed_rings():
    with pytest.raises(InputError):
        buchberger([poly("x0"), poly("x0", field=F7)])


small_forms = st.dictionaries(
    st.sampled_from([m for d in range(3) for m in monomials_of_degree(2, d)]),
    st.integers(1, 6),
    min_size=1,
    max_size=4,
).map(lambda t: Polynomial(F7, 2, t))


@settings(max_examples=100, deadline=None)
@given(st.lists(small_forms, min_size=1, max_size=3))
def test_buchberger_output_is_reduced_groebner_basis(generators):
    assert_reduced_groebner_basis(generators, buchberger(generators))


def test_buchberger_finds_cubic_in_nonmonomial_ideal():
    """x1^3 = (x1 - x0)*(x0*x1 + x1^2) + x1*x0^2 is in the ideal but no generator divides it."""
    generators = [poly("x0^2"), poly("x0*x1 + x1^2")]
    gb = buchberger(generators)
    assert_reduced_groebner_basis(generators, gb)
    assert gb.contains(poly("x1^3"))
    assert not gb.contains(poly("x1^2"))
    assert quotient_dimension(gb) == 4


@settings(max_examples=60, deadline=None)
@given(
    st.lists(small_forms, min_size=1, max_size=3).flatmap(
        lambda gs: st.tuples(st.just(gs), st.permutations(gs))
    )
)
def test_buchberger_is_independent_of_generator_order(orders):
    original, shuffled = orders
    assert buchberger(original).generators == buchberger(list(shuffled)).generators


# -- local bases and Milnor numbers -------------------------------------------


@pytest.mark.parametrize("m, expected", [(2, 1), (3, 16), (4, 81), (5, 256)])
def test_milnor_number_of_fermat_cone(m, expected):
    f = parse_polynomial(f"x0^{m} + x1^{m} + x2^{m} + x3^{m}", 4)
    assert milnor_number(f) == expected


def test_milnor_number_cusp():
    assert milnor_number(poly("x0^2 + x1^3")) == 2


def test_milnor_number_is_local():
    """Only the origin counts, although the partials also vanish elsewhere."""
    f = poly("x0^3 + x1^3 + x0^2*x1^2")
    mu = milnor_number(f)
    assert mu == 4
    assert quotient_dimension(buchberger(f.gradient())) > mu


def test_milnor_number_smooth_and_non_isolated():
    assert milnor_number(poly("x0 + x1^2")) == 0
    assert milnor_number(poly("x0^2")) == INFINITE


def test_milnor_number_needs_vanishing_at_origin():
    with pytest.raises(InputError):
        milnor_number(poly("x0^2 + 1"))


def test_milnor_number_ignores_higher_terms_at_an_ordinary_point():
    f = poly("x0^3 + x1^3 + x2^3 + x0^4 + x1*x2^3 + x0^2*x1^2", nvars=3, field=PrimeField(101))
    assert milnor_number(f) == 8


def test_local_basis_of_unit():
    gb = local_standard_basis([poly("1 + x0")])
    assert gb.is_unit()
    assert quotient_dimension(gb) == 0


# -- univariate elimination and projective zeros -----------------------------


def test_minimal_polynomial():
    gb = buchberger([poly("x0^2 - 3", nvars=1, field=F7)])
    assert minimal_polynomial(gb, 0, StepBudget(1000)) == [1, 0, 4]


def test_projective_zeros_over_prime_field():
    zeros = projective_zeros([poly("x0^2 + x1^2", field=F5)], e_max=1)
    assert zeros == [ProjectivePoint(F5, [1, 2]), ProjectivePoint(F5, [1, 3])]


def test_projective_zeros_need_the_extension():
    """-1 is not a square mod 7, so both zeros live in F_49."""
    f = poly("x0^2 + x1^2", field=F7)
    assert projective_zeros([f], e_max=1) == []
    zeros = projective_zeros([f], e_max=2)
    assert len(zeros) == 2
    for pt in zeros:
        assert pt.field.order == 49
        assert pt.field.is_zero(f.change_field(pt.field).evaluate(pt.coords))


def test_projective_zeros_coordinate_points():
    system = [poly(t, nvars=3, field=F5) for t in ("x0*x1", "x1*x2", "x0*x2")]
    zeros = projective_zeros(system, e_max=1)
    assert [str(pt) for pt in zeros] == ["[1:0:0]", "[0:1:0]", "[0:0:1]"]


def test_projective_zeros_positive_dimension():
    with pytest.raises(NonIsolatedSingularityError):
        projective_zeros([poly("x0*x1", nvars=3, field=F5)])


def test_projective_zeros_enumeration_budget():
    with pytest.raises(EnumerationBudgetExceeded):
        projective_zeros([poly("x0^2 + x1^2", field=F7)], e_max=2, enumeration_budget=10)


def test_projective_zeros_need_prime_field():
    with pytest.raises(InputError):
        projective_zeros([poly("x0^2 + x1^2")])


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
