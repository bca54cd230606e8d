"""
Defect of a set of nodes and the fourth Betti numbers built from it.

The defect counts how many dependent conditions the nodes impose on forms
of degree 2d - 5 in P^4; b4 = 1 + defect for a nodal hypersurface.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence

from algebra.fields import CoefficientField
from algebra.polynomial import ProjectivePoint, monomials_of_degree
from invariants.linalg import exact_rank
from utils.errors import FieldMismatchError, InputError, PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DefectReport:
    k: int
    degree_checked: int
    monomial_count: int
    rank: int
    defect: int
    b4: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "degree_checked": self.degree_checked,
            "monomial_count": self.monomial_count,
            "rank": self.rank,
            "defect": self.defect,
            "b4": self.b4,
        }


def monomial_count(n: int, e: int) -> int:
    """Dimension of the space of degree-e forms on P^n."""
    if e < 0:
        raise PreconditionError(f"Degree must be non-negative, got {e}")
    return math.comb(e + n, n)


def _common_field(points: Sequence[ProjectivePoint], nvars: int) -> CoefficientField:
    field = points[0].field
    for pt in points:
        if pt.field != field:
            raise FieldMismatchError("All points must share one coefficient field")
        if pt.nvars != nvars:
            raise InputError(f"Expected points of P^{nvars - 1}, got {pt}")
    if len(set(points)) != len(points):
        raise InputError("Points must be distinct")
    return field


def evaluation_matrix(points: Sequence[ProjectivePoint], degree: int) -> List[List[Any]]:
    """Rows: points; columns: degree-`degree` monomials in descending grevlex order."""
    monomials = monomials_of_degree(points[0].nvars, degree)
    matrix = []
    for pt in points:
        field = pt.field
        row = []
        for m in monomials:
            value = field.one()
            for c, e in zip(pt.coords, m):
                if e:
                    value = field.mul(value, field.power(c, e))
            row.append(value)
        matrix.append(row)
    return matrix


def defect(points: Sequence[ProjectivePoint], d: int) -> DefectReport:
    """
    Defect of nodes on a degree-d hypersurface in P^4.

    Args:
        points: The nodes, distinct points of P^4 over Q or F_p
        d: Degree of the hypersurface, at least 3

    Returns:
        DefectReport with defect = k - rank of the degree 2d-5 evaluation matrix
    """
    if d < 3:
        raise PreconditionError(f"Defect needs d >= 3 so that 2d - 5 >= 1, got d={d}")
    e = 2 * d - 5
    count = monomial_count(4, e)
    k = len(points)
    if k == 0:
        return DefectReport(0, e, count, 0, 0, 1)
    field = _common_field(points, 5)
    rank = exact_rank(evaluation_matrix(points, e), field)
    report = DefectReport(k, e, count, rank, k - rank, 1 + k - rank)
    logger.info(f"Defect of {k} node(s) in degree {e}: rank {rank}, defect {report.defect}")
    return report


def coplanar(points: Sequence[ProjectivePoint]) -> bool:
    """True iff the points of P^4 lie in a common plane (coordinate matrix rank <= 3)."""
    if len(points) <= 3:
        return True
    field = _common_field(points, 5)
    return exact_rank([list(pt.coords) for pt in points], field) <= 3


def b4_from_defect(report: DefectReport) -> int:
    """b4(X) = 1 + defect for nodal X; equals 1 exactly when X is factorial."""
    return 1 + report.defect


def blowup_b4(b4: int, k: int) -> int:
    """Blowing up the k singular points adds exactly k to b4."""
    return b4 + k


def cone_b4(d: int) -> int:
    """b4 of the cone over a smooth degree-d surface in P^3 (its b2)."""
    if d < 1:
        raise PreconditionError(f"Degree must be at least 1, got {d}")
    return d ** 3 - 4 * d ** 2 + 6 * d - 2
