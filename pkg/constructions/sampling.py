"""
Seeded draws of "general" integer coefficients and random forms.
"""

import random
from typing import Dict, List, Sequence, Tuple

from algebra.fields import QQ_FIELD
from algebra.polynomial import Monomial, Polynomial, monomials_of_degree


class CoefficientSampler:
    """Nonzero integers from [-bound, bound], reproducible from the seed."""

    def __init__(self, seed: int = 0, bound: int = 50):
        self.seed = seed
        self.bound = bound
        self.rng = random.Random(seed)

    def coefficient(self) -> int:
        value = 0
        while value == 0:
            value = self.rng.randint(-self.bound, self.bound)
        return value

    def form(self, nvars: int, degree: int, variables: Sequence[int]) -> Polynomial:
        """A form of the given degree in `variables` with every coefficient nonzero."""
        terms: Dict[Monomial, int] = {}
        for small in monomials_of_degree(len(variables), degree):
            exponent = [0] * nvars
            for var, e in zip(variables, small):
                exponent[var] = e
            terms[tuple(exponent)] = self.coefficient()
        return Polynomial(QQ_FIELD, nvars, terms)

    def distinct_pencil_parameters(self, count: int) -> List[Tuple[int, int]]:
        """`count` pairwise non-proportional pairs (lambda, mu)."""
        chosen: List[Tuple[int, int]] = []
        while len(chosen) < count:
            lam, mu = self.coefficient(), self.coefficient()
            if all(lam * nu - mu * kappa != 0 for kappa, nu in chosen):
                chosen.append((lam, mu))
        return chosen
