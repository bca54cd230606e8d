"""
Exact coefficient fields: the rationals, prime fields F_p and extensions F_{p^e}.

Field objects are immutable and hashable; elements are plain Python values
(Fraction, int in [0, p), or tuples of ints for extension elements) so that
polynomial term maps stay lightweight.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterator, Optional, Tuple

from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from utils.errors import FieldMismatchError, InputError

logger = logging.getLogger(__name__)


class CoefficientField:
    """Common interface of the three field kinds."""

    characteristic: int = 0

    @property
    def order(self) -> Optional[int]:
        return None

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def zero(self) -> Any:
        return self.from_int(0)

    def one(self) -> Any:
        return self.from_int(1)

    def from_int(self, n: int) -> Any:
        raise NotImplementedError

    def from_fraction(self, value: Fraction) -> Any:
        raise NotImplementedError

    def convert(self, value: Any) -> Any:
        """Coerce an int, a Fraction or an element of this field."""
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, Fraction):
            return self.from_fraction(value)
        return value

    def add(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def sub(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def mul(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def neg(self, a: Any) -> Any:
        raise NotImplementedError

    def inv(self, a: Any) -> Any:
        raise NotImplementedError

    def is_zero(self, a: Any) -> bool:
        return a == self.zero()

    def div(self, a: Any, b: Any) -> Any:
        return self.mul(a, self.inv(b))

    def power(self, a: Any, n: int) -> Any:
        if n < 0:
            return self.power(self.inv(a), -n)
        result = self.one()
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def elements(self) -> Iterator[Any]:
        raise InputError(f"{self.label()} is infinite and cannot be enumerated")

    def random_element(self, rng: random.Random) -> Any:
        raise NotImplementedError

    def element_key(self, a: Any) -> Tuple:
        """Total order on elements used for deterministic sorting."""
        raise NotImplementedError

    def format_element(self, a: Any) -> str:
        raise NotImplementedError

    def label(self) -> str:
        raise NotImplementedError

    def in_subfield(self, a: Any, degree: int) -> bool:
        """True iff a lies in the subfield of degree `degree` over the prime field."""
        return True

    def check_same(self, other: "CoefficientField") -> None:
        if self != other:
            raise FieldMismatchError(f"Field mismatch: {self.label()} vs {other.label()}")


@dataclass(frozen=True)
class RationalField(CoefficientField):
    """The field Q; elements are Fractions, always in lowest terms."""

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def from_fraction(self, value: Fraction) -> Fraction:
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def is_zero(self, a) -> bool:
        return a == 0

    def random_element(self, rng: random.Random) -> Fraction:
        return Fraction(rng.randint(-50, 50))

    def element_key(self, a) -> Tuple:
        return (a,)

    def format_element(self, a) -> str:
        return str(a)

    def label(self) -> str:
        return "Q"


@dataclass(frozen=True)
class PrimeField(CoefficientField):
    """F_p with elements stored as ints in [0, p)."""

    p: int

    def __post_init__(self):
        if not isprime(self.p):
            raise InputError(f"PrimeField needs a prime, got {self.p}")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.p

    def from_int(self, n: int) -> int:
        return n % self.p

    def from_fraction(self, value: Fraction) -> int:
        if value.denominator % self.p == 0:
            raise InputError(f"Coefficient {value} is not representable in F_{self.p}")
        return value.numerator * pow(value.denominator, -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def is_zero(self, a) -> bool:
        return a == 0

    def power(self, a, n: int):
        return pow(a, n, self.p) if n >= 0 else pow(self.inv(a), -n, self.p)

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    def element_key(self, a) -> Tuple:
        return (a,)

    def format_element(self, a) -> str:
        return str(a)

    def label(self) -> str:
        return f"Fp:{self.p}"


@lru_cache(maxsize=None)
def smallest_irreducible_modulus(p: int, e: int) -> Tuple[int, ...]:
    """
    Lexicographically smallest monic irreducible polynomial of degree e over F_p.

    Returned as coefficients from the constant term up, the leading 1 included.
    Candidates are ordered by (c_{e-1}, ..., c_0).
    """
    for tail in itertools.product(range(p), repeat=e):
        dense = [1] + list(tail)
        if gf_irreducible_p(dense, p, ZZ):
            return tuple(reversed(dense))
    raise InputError(f"No irreducible polynomial of degree {e} over F_{p}")


@dataclass(frozen=True)
class ExtensionField(CoefficientField):
    """
    F_{p^e} = F_p[t]/(modulus); elements are e-tuples of ints, constant term first.
    """

    p: int
    e: int
    modulus: Tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not isprime(self.p):
            raise InputError(f"ExtensionField needs a prime, got {self.p}")
        if self.e < 1:
            raise InputError(f"Extension degree must be positive, got {self.e}")
        if not self.modulus:
            object.__setattr__(self, "modulus", smallest_irreducible_modulus(self.p, self.e))

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.p ** self.e

    def from_int(self, n: int) -> Tuple[int, ...]:
        return (n % self.p,) + (0,) * (self.e - 1)

    def from_fraction(self, value: Fraction) -> Tuple[int, ...]:
        if value.denominator % self.p == 0:
            raise InputError(f"Coefficient {value} is not representable in F_{self.p}^{self.e}")
        return self.from_int(value.numerator * pow(value.denominator, -1, self.p))

    def convert(self, value: Any) -> Any:
        if isinstance(value, tuple):
            return value
        return super().convert(value)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        p, e, modulus = self.p, self.e, self.modulus
        product = [0] * (2 * e - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        product[i + j] += x * y
        # t^e = -(m_0 + m_1 t + ... + m_{e-1} t^{e-1})
        for k in range(2 * e - 2, e - 1, -1):
            c = product[k] % p
            if c:
                for i in range(e):
                    product[k - e + i] -= c * modulus[i]
            product[k] = 0
        return tuple(c % p for c in product[:e])

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero")
        return self.power(a, self.order - 2)

    def is_zero(self, a) -> bool:
        return not any(a)

    def elements(self) -> Iterator[Tuple[int, ...]]:
        for digits in itertools.product(range(self.p), repeat=self.e):
            yield tuple(reversed(digits))

    def random_element(self, rng: random.Random) -> Tuple[int, ...]:
        return tuple(rng.randrange(self.p) for _ in range(self.e))

    def element_key(self, a) -> Tuple:
        return tuple(reversed(a))

    def format_element(self, a) -> str:
        parts = []
        for i, c in enumerate(a):
            if c:
                parts.append(str(c) if i == 0 else f"{c}*t^{i}" if i > 1 else f"{c}*t")
        return "(" + " + ".join(parts) + ")" if len(parts) > 1 else (parts[0] if parts else "0")

    def in_subfield(self, a, degree: int) -> bool:
        if self.e % degree:
            return False
        return self.power(a, self.p ** degree) == a

    def label(self) -> str:
        return f"Fq:{self.p}^{self.e}"


QQ_FIELD = RationalField()


@lru_cache(maxsize=None)
def extension_field(p: int, e: int) -> CoefficientField:
    """F_{p^e}, returning the prime field itself when e = 1."""
    if e == 1:
        return PrimeField(p)
    return ExtensionField(p, e)


def parse_field(text: str) -> CoefficientField:
    """Read a field label: 'Q', 'Fp:<p>' or 'Fq:<p>^<e>'."""
    text = text.strip()
    if text == "Q":
        return QQ_FIELD
    try:
        if text.startswith("Fp:"):
            return PrimeField(int(text[3:]))
        if text.startswith("Fq:"):
            p, e = text[3:].split("^")
            return extension_field(int(p), int(e))
    except ValueError as e:
        raise InputError(f"Malformed field label: {text!r}") from e
    raise InputError(f"Unknown field label: {text!r}")


def embed(value: Any, source: CoefficientField, target: CoefficientField) -> Any:
    """Map an element of a prime field (or Q) into a field of the same characteristic."""
    if source == target:
        return value
    if isinstance(source, RationalField):
        return target.from_fraction(value)
    if isinstance(source, PrimeField) and target.characteristic == source.p:
        return target.from_int(value)
    raise FieldMismatchError(f"Cannot embed {source.label()} into {target.label()}")
