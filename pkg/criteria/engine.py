"""
Numeric factoriality, existence and ampleness criteria for threefolds in P^4
with ordinary multiple points, and the verdict procedure that chains them.

All floors are exact integer divisions.
"""

import logging
from typing import List, Optional, Sequence

from algebra.polynomial import ProjectivePoint
from criteria.verdict import (
    BlowupClass,
    CriterionResult,
    MultiplicityProfile,
    Position,
    Verdict,
    VerdictKind,
)
from invariants.defect import b4_from_defect, defect
from utils.errors import PreconditionError

logger = logging.getLogger(__name__)

SMOOTH_REASON = "Smooth+Grothendieck-Lefschetz"
PLANE_WITNESS = "nodes contained in a plane"
QUADRIC_CONE_WITNESS = "a nodal quadric is a cone over a smooth quadric surface and contains planes"


def thmB_check(profile: MultiplicityProfile) -> bool:
    """sum m_i < d."""
    return sum(profile.mults) < profile.d


def _check_dmk(d: int, m: int, k: int) -> None:
    if m < 1 or d < m:
        raise PreconditionError(f"Need d >= m >= 1, got d={d}, m={m}")
    if k < 1:
        raise PreconditionError(f"Need k >= 1, got k={k}")


def thmC_existence(d: int, m: int, k: int) -> bool:
    """floor((d+5)/(m+4))^4 > k: a degree-d hypersurface with k general ordinary m-ple points exists."""
    _check_dmk(d, m, k)
    return ((d + 5) // (m + 4)) ** 4 > k


def thmC_factorial(d: int, m: int, k: int) -> bool:
    """min(floor((d+5)/(m+4))^4, floor(d/m)^4) > k."""
    _check_dmk(d, m, k)
    return min(((d + 5) // (m + 4)) ** 4, (d // m) ** 4) > k


def cor56_check(d: int, m: int, k: int) -> bool:
    """4d >= 5m together with the existence bound."""
    _check_dmk(d, m, k)
    return 4 * d >= 5 * m and thmC_existence(d, m, k)


def nodal_theorem(d: int, k: int, position: Position) -> Verdict:
    """
    Verdict for a nodal hypersurface of degree d with k nodes.

    Below (d-1)^2 nodes the hypersurface is factorial. At exactly (d-1)^2 it
    is factorial iff the nodes are not in a plane; a nodal quadric (d=2,
    k=1) always falls on the plane side. Above that count nothing is claimed.
    """
    bound = (d - 1) ** 2
    if k < bound:
        return Verdict(VerdictKind.FACTORIAL, reason="NodalTheorem")
    if k > bound:
        return Verdict(VerdictKind.UNKNOWN)
    if d == 2:
        return Verdict(VerdictKind.NON_FACTORIAL, witness=QUADRIC_CONE_WITNESS)
    if position is Position.GENERAL:
        return Verdict(VerdictKind.FACTORIAL, reason="NodalTheorem")
    if position is Position.CONTAINED_IN_PLANE:
        return Verdict(VerdictKind.NON_FACTORIAL, witness=PLANE_WITNESS)
    return Verdict(VerdictKind.UNKNOWN)


def conjectureD_check(profile: MultiplicityProfile) -> bool:
    """sum (m_i - 1)^2 < (d - 1)^2."""
    return sum((m - 1) ** 2 for m in profile.mults) < (profile.d - 1) ** 2


def ballico_ample(n: int, d: int, k: int) -> bool:
    """dH - sum E_i is ample on the blow-up of P^n at k general points iff d^n > k."""
    if n < 2 or d < 2 or (n == 2 and d < 3):
        raise PreconditionError(f"Need n >= 2 and d >= 2 (d >= 3 when n = 2), got n={n}, d={d}")
    if k < 1:
        raise PreconditionError(f"Need k >= 1, got k={k}")
    return d ** n > k


def cor26_ample(n: int, a: int, b: int, k: int) -> bool:
    """floor(a/b)^n > k suffices for aH - b sum E_i to be ample at k general points."""
    if a < 1 or b < 1:
        raise PreconditionError(f"Need positive a and b, got a={a}, b={b}")
    return (a // b) ** n > k


def strict_transform_class(profile: MultiplicityProfile) -> BlowupClass:
    """Class dH - sum m_i E_i of the strict transform of X."""
    return BlowupClass(profile.n, profile.d, profile.mults)


def theorem_a_route(cls: BlowupClass) -> bool:
    """Ampleness of a uniform class (a, [b]*k) through the floor(a/b)^n > k bound."""
    if cls.k == 0:
        return cls.a >= 1
    if not cls.uniform or cls.a < 1:
        return False
    return cor26_ample(cls.n, cls.a, cls.bs[0], cls.k)


def double_triple_bound(profile: MultiplicityProfile) -> Optional[bool]:
    """
    k2 + 4*k3 < (d-1)^2 for profiles with only double and triple points.

    When true every smooth surface in X is a complete intersection. None
    when other multiplicities occur.
    """
    if any(m not in (2, 3) for m in profile.mults):
        return None
    k2 = profile.mults.count(2)
    k3 = profile.mults.count(3)
    return k2 + 4 * k3 < (profile.d - 1) ** 2


def _uniform_dmk(profile: MultiplicityProfile):
    if profile.k == 0 or not profile.uniform:
        return None
    m = profile.mults[0]
    if profile.d < m:
        return None
    return profile.d, m, profile.k


def evaluate_criteria(profile: MultiplicityProfile) -> List[CriterionResult]:
    """Every criterion applied to the profile; value None where its hypotheses fail."""
    results = [CriterionResult("ThmB", "sum m_i < d", thmB_check(profile))]

    nodal_value = None
    if profile.k and profile.nodal:
        nodal_value = nodal_theorem(profile.d, profile.k, profile.position).kind is VerdictKind.FACTORIAL
    results.append(CriterionResult(
        "NodalTheorem", "all m_i = 2: k < (d-1)^2, or k = (d-1)^2 with nodes not in a plane", nodal_value
    ))

    route = None
    if profile.position is Position.GENERAL and profile.k and profile.uniform:
        route = theorem_a_route(strict_transform_class(profile))
    results.append(CriterionResult(
        "AmplenessRoute", "general uniform points: floor(d/m)^n > k, strict transform ample", route
    ))

    dmk = _uniform_dmk(profile)
    results.append(CriterionResult(
        "ThmC-existence", "floor((d+5)/(m+4))^4 > k", thmC_existence(*dmk) if dmk else None
    ))
    results.append(CriterionResult(
        "ThmC-factorial", "min(floor((d+5)/(m+4))^4, floor(d/m)^4) > k", thmC_factorial(*dmk) if dmk else None
    ))
    results.append(CriterionResult("Cor56", "4d >= 5m and floor((d+5)/(m+4))^4 > k", cor56_check(*dmk) if dmk else None))
    results.append(CriterionResult("ConjectureD", "sum (m_i-1)^2 < (d-1)^2", conjectureD_check(profile)))
    results.append(CriterionResult(
        "DoubleTripleBound", "only double and triple points: k2 + 4*k3 < (d-1)^2", double_triple_bound(profile)
    ))

    ballico = None
    if profile.k and profile.d >= 2 and not (profile.n == 2 and profile.d < 3):
        ballico = ballico_ample(profile.n, profile.d, profile.k)
    results.append(CriterionResult("BallicoAmple", "d^n > k", ballico))
    return results


def decide(profile: MultiplicityProfile) -> Verdict:
    """
    Chain the criteria: ThmB, the nodal theorem, the ampleness route, ThmC,
    then Conjecture D; anything left is Unknown.

    The ampleness and ThmC routes need position=General.
    """
    criteria = evaluate_criteria(profile)

    def finish(verdict: Verdict) -> Verdict:
        verdict.criteria = criteria
        logger.info(f"Verdict for d={profile.d}, mults={list(profile.mults)}: {verdict.label()}")
        return verdict

    if profile.k == 0:
        return finish(Verdict(VerdictKind.FACTORIAL, reason=SMOOTH_REASON))
    if thmB_check(profile):
        return finish(Verdict(VerdictKind.FACTORIAL, reason="ThmB"))
    if profile.nodal:
        nodal = nodal_theorem(profile.d, profile.k, profile.position)
        if nodal.kind is not VerdictKind.UNKNOWN:
            return finish(nodal)
    general = profile.position is Position.GENERAL
    if general and profile.uniform and theorem_a_route(strict_transform_class(profile)):
        return finish(Verdict(VerdictKind.FACTORIAL, reason="AmplenessRoute"))
    dmk = _uniform_dmk(profile)
    if general and dmk and thmC_factorial(*dmk):
        return finish(Verdict(VerdictKind.FACTORIAL, reason="ThmC"))
    if conjectureD_check(profile):
        return finish(Verdict(VerdictKind.CONJECTURALLY_FACTORIAL, reason="ConjectureD"))
    return finish(Verdict(VerdictKind.UNKNOWN))


def decide_with_nodes(profile: MultiplicityProfile, points: Optional[Sequence[ProjectivePoint]] = None) -> Verdict:
    """
    Like decide, but a nodal profile with known node coordinates is settled by its defect.

    Defect 0 gives Factorial(NodalDefect); a positive defect gives
    NonFactorial with b4 = 1 + defect as witness.
    """
    base = decide(profile)
    if not points or not profile.nodal or profile.d < 3:
        return base
    if len(points) != profile.k:
        raise PreconditionError(f"Profile has {profile.k} node(s) but {len(points)} point(s) were given")
    report = defect(points, profile.d)
    criteria = list(base.criteria)
    criteria.append(CriterionResult("NodalDefect", "defect of the nodes in degree 2d-5 is 0", report.defect == 0))
    if report.defect == 0:
        verdict = Verdict(VerdictKind.FACTORIAL, reason="NodalDefect", criteria=criteria)
    else:
        verdict = Verdict(
            VerdictKind.NON_FACTORIAL,
            witness=f"defect {report.defect}, b4 = {b4_from_defect(report)}",
            criteria=criteria,
        )
    if base.kind in (VerdictKind.FACTORIAL, VerdictKind.NON_FACTORIAL) and base.kind is not verdict.kind:
        logger.warning(f"Defect verdict {verdict.label()} disagrees with {base.label()}; are these the nodes?")
    return verdict
