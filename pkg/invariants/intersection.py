"""
Top self-intersection numbers on the blow-up of P^n at k distinct points.

With H^n = 1, H.E_i = 0 and E_i^n = (-1)^(n-1):
    (aH - sum b_i E_i)^n = a^n - sum b_i^n
"""

import logging
from collections import Counter
from typing import Optional

from criteria.verdict import BlowupClass
from utils.errors import MathematicalError, PreconditionError

logger = logging.getLogger(__name__)


def exceptional_self_intersection(n: int) -> int:
    """E^n for the exceptional divisor of a point blow-up of an n-fold."""
    return (-1) ** (n - 1)


def intersection_number(cls: BlowupClass, n: Optional[int] = None) -> int:
    """(aH - sum b_i E_i)^n; n defaults to the class's ambient dimension."""
    n = cls.n if n is None else n
    sign = exceptional_self_intersection(n)
    total = cls.a ** n
    for b, count in Counter(cls.bs).items():
        total += count * (-b) ** n * sign
    return total


def uniform_intersection_number(n: int, a: int, b: int, k: int) -> int:
    """(aH - b sum_{i<=k} E_i)^n without materializing the k coefficients."""
    if k < 0:
        raise PreconditionError(f"Need k >= 0 blown-up points, got k={k}")
    return a ** n + k * (-b) ** n * exceptional_self_intersection(n)


def verify_sign_convention() -> None:
    """
    Pin E^n = (-1)^(n-1) to two known values.

    (dH - sum E_i)^n must equal d^n - k for every k up to d^n + 1, and the
    strict transform dH - dE of a cone over a degree-d surface must have
    self-intersection 0.
    """
    for n in range(2, 7):
        for d in range(2, 7):
            for k in range(1, d ** n + 2):
                value = uniform_intersection_number(n, d, 1, k)
                if value != d ** n - k:
                    raise MathematicalError(f"Sign convention broken: ({d}H - sum E)^{n} = {value}")
            for k in (1, d ** n + 1):
                if intersection_number(BlowupClass(n, d, (1,) * k)) != d ** n - k:
                    raise MathematicalError(f"Explicit and uniform classes disagree at n={n}, d={d}, k={k}")
    for d in range(2, 7):
        value = intersection_number(BlowupClass(4, d, (d,)))
        if value != 0:
            raise MathematicalError(f"Sign convention broken: cone class self-intersection {value}")
    logger.debug("Intersection sign convention verified")
