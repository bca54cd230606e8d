"""
Points files: one projective point per line as comma-separated rationals;
lines starting with '#' are comments.
"""
import logging
from fractions import Fraction
from pathlib import Path
from typing import List

from algebra.fields import CoefficientField, QQ_FIELD
from algebra.polynomial import ProjectivePoint
from utils.errors import InputError, PointsFileError

logger = logging.getLogger(__name__)


def parse_point(line: str, field: CoefficientField = QQ_FIELD) -> ProjectivePoint:
    try:
        values = [Fraction(token.strip()) for token in line.split(",")]
    except (ValueError, ZeroDivisionError) as e:
        raise PointsFileError(f"Bad coordinate in {line!r}: {e}") from e
    try:
        return ProjectivePoint(field, [field.from_fraction(v) for v in values])
    except InputError as e:
        raise PointsFileError(f"Bad point {line!r}: {e}") from e


def read_points_file(path: str, field: CoefficientField = QQ_FIELD) -> List[ProjectivePoint]:
    """Read every point of a points file; all points must have the same number of coordinates."""
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as e:
        raise PointsFileError(f"Cannot read {path}: {e}") from e
    points = []
    for number, line in enumerate(lines, 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            points.append(parse_point(stripped, field))
        except PointsFileError as e:
            raise PointsFileError(f"{path}:{number}: {e}") from e
    if len({pt.nvars for pt in points}) > 1:
        raise PointsFileError(f"{path}: points have different numbers of coordinates")
    logger.debug(f"Read {len(points)} point(s) from {path}")
    return points
