#!/usr/bin/env python3
"""
Tests for the numeric criteria and the verdict procedure.
"""

import logging
import sys
from pathlib import Path

import pytest
from hypothesis import assume, given, settings, strategies as st

# Add project root to path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from algebra.fields import QQ_FIELD
from algebra.polynomial import ProjectivePoint
from criteria.engine import (
    SMOOTH_REASON,
    ballico_ample,
    conjectureD_check,
    cor26_ample,
    cor56_check,
    decide,
    decide_with_nodes,
    double_triple_bound,
    evaluate_criteria,
    nodal_theorem,
    strict_transform_class,
    theorem_a_route,
    thmB_check,
    thmC_existence,
    thmC_factorial,
)
from criteria.verdict import BlowupClass, MultiplicityProfile, Position, VerdictKind
from utils.errors import InputError, PreconditionError

GENERAL, PLANE, UNKNOWN = Position.GENERAL, Position.CONTAINED_IN_PLANE, Position.UNKNOWN

COPLANAR = [[0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1], [0, 0, 1, 1, 1]]
SPANNING = [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0]]


def points(rows):
    return [ProjectivePoint(QQ_FIELD, r) for r in rows]


def profile(d, mults=(), position=UNKNOWN, n=4):
    return MultiplicityProfile(d, tuple(mults), position, n)


def prop61_profile(t, delta, position=UNKNOWN):
    return profile(delta * t + 1, [t + 1] * delta ** 2, position)


# -- individual criteria -------------------------------------------------------


def test_thmB():
    assert thmB_check(profile(5, [2, 2]))
    assert not thmB_check(profile(4, [2, 2]))
    assert thmB_check(profile(7, [6]))
    # boundary: sum m_i = d - 1 is enough, sum m_i = d is not
    assert thmB_check(profile(9, [2, 3, 3]))
    assert not thmB_check(profile(8, [2, 3, 3]))


def test_thmC_existence():
    assert thmC_existence(13, 2, 8)
    assert not thmC_existence(4, 4, 1)
    assert not thmC_existence(7, 3, 1)
    with pytest.raises(PreconditionError):
        thmC_existence(2, 3, 1)
    with pytest.raises(PreconditionError):
        thmC_existence(5, 2, 0)


def test_thmC_factorial():
    assert thmC_factorial(13, 2, 8)
    assert not thmC_factorial(5, 2, 2)
    for m in range(2, 6):
        for d in range(m + 1, 2 * m + 3):
            assert not thmC_factorial(d, m, 1)
    with pytest.raises(PreconditionError):
        thmC_factorial(1, 2, 1)


def test_cor56():
    assert not cor56_check(10, 8, 1)
    assert cor56_check(15, 4, 4)
    assert thmC_factorial(15, 4, 4)
    assert not cor56_check(5, 4, 1)


def test_nodal_theorem():
    for position in Position:
        assert nodal_theorem(4, 8, position).kind is VerdictKind.FACTORIAL
    assert nodal_theorem(3, 4, PLANE).kind is VerdictKind.NON_FACTORIAL
    assert nodal_theorem(3, 4, GENERAL).label() == "Factorial(NodalTheorem)"
    assert nodal_theorem(3, 4, UNKNOWN).kind is VerdictKind.UNKNOWN
    assert nodal_theorem(3, 5, GENERAL).kind is VerdictKind.UNKNOWN


def test_nodal_quadric_contains_planes():
    """A quadric with one node is a cone over a smooth quadric surface."""
    verdict = nodal_theorem(2, 1, GENERAL)
    assert verdict.kind is VerdictKind.NON_FACTORIAL
    assert "plane" in verdict.witness


def test_conjectureD():
    assert conjectureD_check(profile(5, [3, 2]))
    for m in range(2, 8):
        for d in range(1, 12):
            assert conjectureD_check(profile(d, [m])) == (m < d) == thmB_check(profile(d, [m]))


def test_ballico_ample():
    assert ballico_ample(4, 2, 15)
    assert not ballico_ample(4, 2, 16)
    with pytest.raises(PreconditionError):
        ballico_ample(2, 2, 3)
    with pytest.raises(PreconditionError):
        ballico_ample(4, 3, 0)


def test_cor26_ample():
    assert cor26_ample(4, 13, 2, 8)
    assert not cor26_ample(4, 2, 3, 1)
    with pytest.raises(PreconditionError):
        cor26_ample(4, 0, 1, 1)


@settings(max_examples=500, deadline=None)
@given(st.integers(2, 6), st.integers(2, 12), st.integers(1, 5000))
def test_cor26_with_b_one_is_ballico(n, a, k):
    assume(not (n == 2 and a < 3))
    assert cor26_ample(n, a, 1, k) == ballico_ample(n, a, k)


def test_strict_transform_class():
    assert strict_transform_class(profile(5, [2, 2])) == BlowupClass(4, 5, (2, 2))
    assert strict_transform_class(profile(4, [4])) == BlowupClass(4, 4, (4,))
    assert strict_transform_class(prop61_profile(2, 3)) == BlowupClass(4, 7, (3,) * 9)


def test_theorem_a_route():
    assert theorem_a_route(BlowupClass(4, 13, (2,) * 8))
    assert not theorem_a_route(BlowupClass(4, 4, (4,)))
    assert not theorem_a_route(BlowupClass(4, 9, (2, 3)))


def test_double_triple_bound():
    assert double_triple_bound(profile(5, [2, 2, 3])) is True
    assert double_triple_bound(profile(3, [3])) is False
    assert double_triple_bound(profile(9, [4])) is None


def test_profile_validation():
    with pytest.raises(PreconditionError):
        profile(0)
    with pytest.raises(PreconditionError):
        profile(5, [1, 2])
    with pytest.raises(PreconditionError):
        profile(5, [2], PLANE, n=5)
    with pytest.raises(InputError):
        Position.parse("somewhere")
    assert Position.parse("Plane") is PLANE
    assert Position.parse(None) is UNKNOWN


# -- decide --------------------------------------------------------------------


def test_decide_examples():
    assert decide(profile(5, [2, 2])).label() == "Factorial(ThmB)"
    assert decide(profile(3, [2, 2, 2, 2], PLANE)).kind is VerdictKind.NON_FACTORIAL
    assert decide(profile(3, [2, 2, 2, 2])).kind is VerdictKind.UNKNOWN
    assert decide(profile(3, [2, 2, 2, 2], GENERAL)).kind is VerdictKind.FACTORIAL


def test_decide_general_nodes_pass_the_ampleness_route():
    """The nodal theorem fires first; the ampleness route is recorded as satisfied."""
    verdict = decide(profile(13, [2] * 8, GENERAL))
    assert verdict.kind is VerdictKind.FACTORIAL
    criteria = {c.name: c.value for c in verdict.criteria}
    assert criteria["AmplenessRoute"] is True
    assert criteria["ThmC-factorial"] is True


def test_decide_ampleness_route_for_triple_points():
    verdict = decide(profile(13, [3] * 8, GENERAL))
    assert verdict.label() == "Factorial(AmplenessRoute)"
    assert decide(profile(13, [3] * 8)).kind is VerdictKind.CONJECTURALLY_FACTORIAL


def test_thmC_factorial_implies_ampleness_route():
    for m in range(2, 6):
        for d in range(m, 40):
            for k in (1, 2, 15, 16, 80, 81):
                if thmC_factorial(d, m, k):
                    assert theorem_a_route(BlowupClass(4, d, (m,) * k))


def test_decide_conjecture_is_never_a_proof():
    verdict = decide(profile(6, [3, 3, 2]))
    assert verdict.kind is VerdictKind.CONJECTURALLY_FACTORIAL
    assert verdict.q_factorial is None


def test_decide_smooth():
    verdict = decide(profile(5))
    assert verdict.kind is VerdictKind.FACTORIAL
    assert verdict.reason == SMOOTH_REASON


def test_verdict_json_schema():
    data = decide(profile(3, [2, 2, 2, 2], PLANE)).to_dict()
    assert set(data) == {"verdict", "reason", "q_factorial", "criteria"}
    assert data["verdict"] == "NonFactorial"
    assert data["q_factorial"] is False
    assert all(set(c) == {"name", "hypothesis_text", "value"} for c in data["criteria"])
    names = [c["name"] for c in data["criteria"]]
    assert names[:3] == ["ThmB", "NodalTheorem", "AmplenessRoute"]
    assert "ConjectureD" in names and "BallicoAmple" in names


def test_evaluate_criteria_marks_inapplicable_as_none():
    criteria = {c.name: c.value for c in evaluate_criteria(profile(6, [3, 2]))}
    assert criteria["NodalTheorem"] is None
    assert criteria["AmplenessRoute"] is None
    assert criteria["ThmC-existence"] is None
    assert criteria["ThmB"] is True


@pytest.mark.parametrize("t", range(1, 5))
@pytest.mark.parametrize("delta", range(1, 4))
def test_prop61_profiles_sit_on_the_boundary(t, delta):
    p = prop61_profile(t, delta)
    assert p.k * (p.mults[0] - 1) ** 2 == (p.d - 1) ** 2
    assert not conjectureD_check(p)
    for position in (PLANE, UNKNOWN):
        assert decide(p.with_position(position)).kind is not VerdictKind.FACTORIAL


profiles = st.builds(
    MultiplicityProfile,
    d=st.integers(1, 30),
    mults=st.lists(st.integers(2, 8), min_size=1, max_size=10).map(tuple),
)


@settings(max_examples=10_000, deadline=None)
@given(profiles)
def test_thmB_implies_conjectureD(p):
    if thmB_check(p):
        assert conjectureD_check(p)


RANK = {
    VerdictKind.NON_FACTORIAL: 0,
    VerdictKind.UNKNOWN: 1,
    VerdictKind.CONJECTURALLY_FACTORIAL: 2,
    VerdictKind.FACTORIAL: 3,
}


@settings(max_examples=2000, deadline=None)
@given(profiles)
def test_decide_is_position_monotone(p):
    general = decide(p.with_position(GENERAL))
    unknown = decide(p.with_position(UNKNOWN))
    assert RANK[unknown.kind] <= RANK[general.kind]
    assert decide(p.with_position(UNKNOWN)).to_dict() == unknown.to_dict()


# -- decide with node coordinates ---------------------------------------------


def test_decide_with_nodes_coplanar():
    verdict = decide_with_nodes(profile(3, [2] * 4, PLANE), points(COPLANAR))
    assert verdict.kind is VerdictKind.NON_FACTORIAL
    assert verdict.witness == "defect 1, b4 = 2"
    assert verdict.criteria[-1].name == "NodalDefect"


def test_decide_with_nodes_spanning():
    verdict = decide_with_nodes(profile(3, [2] * 4), points(SPANNING))
    assert verdict.label() == "Factorial(NodalDefect)"


def test_decide_with_nodes_warns_on_disagreement(caplog):
    with caplog.at_level(logging.WARNING):
        verdict = decide_with_nodes(profile(3, [2] * 4, GENERAL), points(COPLANAR))
    assert verdict.kind is VerdictKind.NON_FACTORIAL
    assert "disagrees" in caplog.text


def test_decide_with_nodes_checks_point_count():
    with pytest.raises(PreconditionError):
        decide_with_nodes(profile(3, [2] * 3), points(COPLANAR))


def test_decide_with_nodes_ignores_non_nodal_profiles():
    p = profile(5, [3])
    assert decide_with_nodes(p, points(COPLANAR[:1])).label() == decide(p).label()


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
