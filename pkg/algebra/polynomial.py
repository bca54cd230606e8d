"""
Sparse multivariate polynomials over an exact field, and projective points.

Terms are stored in a dict kept in graded reverse lexicographic order,
largest monomial first. Polynomials are immutable after construction.
"""

from __future__ import annotations

import logging
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from algebra.fields import CoefficientField, embed
from utils.errors import FieldMismatchError, InputError, NotHomogeneousError

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]


def grevlex_key(monomial: Monomial) -> Tuple:
    """Sort key realising the graded reverse lexicographic order (larger is bigger)."""
    return (sum(monomial), tuple(-e for e in reversed(monomial)))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomials_of_degree(nvars: int, degree: int) -> List[Monomial]:
    """All exponent tuples of the given total degree, in descending grevlex order."""
    if nvars == 0:
        return [()] if degree == 0 else []
    result: List[Monomial] = []

    def build(prefix: List[int], remaining: int, slots: int) -> None:
        if slots == 1:
            result.append(tuple(prefix + [remaining]))
            return
        for e in range(remaining, -1, -1):
            build(prefix + [e], remaining - e, slots - 1)

    build([], degree, nvars)
    result.sort(key=grevlex_key, reverse=True)
    return result


class Polynomial:
    """A polynomial in x_0..x_{nvars-1} over `field`."""

    __slots__ = ("field", "nvars", "_terms", "_hash")

    def __init__(
        self,
        field: CoefficientField,
        nvars: int,
        terms: Optional[Mapping[Monomial, Any]] = None,
    ):
        self.field = field
        self.nvars = nvars
        cleaned: Dict[Monomial, Any] = {}
        for monomial, coeff in (terms or {}).items():
            monomial = tuple(monomial)
            if len(monomial) != nvars or any(e < 0 for e in monomial):
                raise InputError(f"Bad exponent tuple {monomial} for {nvars} variables")
            coeff = field.convert(coeff)
            if monomial in cleaned:
                coeff = field.add(cleaned[monomial], coeff)
            cleaned[monomial] = coeff
        self._terms = {
            m: c for m, c in sorted(cleaned.items(), key=lambda mc: grevlex_key(mc[0]), reverse=True)
            if not field.is_zero(c)
        }
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, field: CoefficientField, nvars: int) -> "Polynomial":
        return cls(field, nvars)

    @classmethod
    def constant(cls, field: CoefficientField, nvars: int, value: Any) -> "Polynomial":
        return cls(field, nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, field: CoefficientField, nvars: int, index: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise InputError(f"Variable index {index} out of range for {nvars} variables")
        exponent = [0] * nvars
        exponent[index] = 1
        return cls(field, nvars, {tuple(exponent): 1})

    @classmethod
    def monomial(cls, field: CoefficientField, nvars: int, exponent: Monomial, coeff: Any = 1) -> "Polynomial":
        return cls(field, nvars, {tuple(exponent): coeff})

    # -- basic accessors --------------------------------------------------

    def terms(self) -> Iterator[Tuple[Monomial, Any]]:
        """Iterate (exponent tuple, coefficient) pairs in canonical order."""
        return iter(self._terms.items())

    def term_dict(self) -> Dict[Monomial, Any]:
        return dict(self._terms)

    def coefficient(self, monomial: Monomial) -> Any:
        return self._terms.get(tuple(monomial), self.field.zero())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def degree(self) -> int:
        """Maximal total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    @property
    def order(self) -> int:
        """Minimal total degree of a term (order of vanishing at the origin); -1 for zero."""
        return min((sum(m) for m in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self._terms)

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise InputError("zero polynomial has no leading monomial")
        return next(iter(self._terms))

    def leading_coefficient(self) -> Any:
        return self._terms[self.leading_monomial()]

    # -- ring operations --------------------------------------------------

    def _check_compatible(self, other: "Polynomial") -> None:
        if self.field != other.field or self.nvars != other.nvars:
            raise FieldMismatchError(
                f"Operands differ: {self.field.label()}[{self.nvars}] vs "
                f"{other.field.label()}[{other.nvars}]"
            )

    def _lift(self, other: Any) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check_compatible(other)
            return other
        return Polynomial.constant(self.field, self.nvars, other)

    def add(self, other: "Polynomial") -> "Polynomial":
        other = self._lift(other)
        field = self.field
        result = dict(self._terms)
        for m, c in other._terms.items():
            result[m] = field.add(result[m], c) if m in result else c
        return Polynomial(self.field, self.nvars, result)

    def subtract(self, other: "Polynomial") -> "Polynomial":
        return self.add(self._lift(other).negate())

    def negate(self) -> "Polynomial":
        neg = self.field.neg
        return Polynomial(self.field, self.nvars, {m: neg(c) for m, c in self._terms.items()})

    def scalar_multiply(self, scalar: Any) -> "Polynomial":
        field = self.field
        scalar = field.convert(scalar)
        if field.is_zero(scalar):
            return Polynomial.zero(field, self.nvars)
        return Polynomial(field, self.nvars, {m: field.mul(c, scalar) for m, c in self._terms.items()})

    def multiply(self, other: "Polynomial") -> "Polynomial":
        other = self._lift(other)
        field = self.field
        result: Dict[Monomial, Any] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = field.mul(c1, c2)
                result[m] = field.add(result[m], c) if m in result else c
        return Polynomial(field, self.nvars, result)

    def power(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise InputError("negative exponent")
        result = Polynomial.constant(self.field, self.nvars, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result.multiply(base)
            base = base.multiply(base)
            exponent >>= 1
        return result

    def multiply_term(self, monomial: Monomial, coeff: Any) -> "Polynomial":
        field = self.field
        return Polynomial(field, self.nvars, {
            tuple(a + b for a, b in zip(m, monomial)): field.mul(c, coeff)
            for m, c in self._terms.items()
        })

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self.scalar_multiply(self.field.inv(self.leading_coefficient()))

    __add__ = add
    __sub__ = subtract
    __mul__ = multiply
    __pow__ = power

    def __radd__(self, other):
        return self.add(other)

    def __rmul__(self, other):
        return self._lift(other).multiply(self)

    def __rsub__(self, other):
        return self._lift(other).subtract(self)

    def __neg__(self):
        return self.negate()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and structure -------------------------------------------

    def partial_derivative(self, index: int) -> "Polynomial":
        """Formal partial derivative with respect to x_index."""
        if not 0 <= index < self.nvars:
            raise InputError(f"Variable index {index} out of range for {self.nvars} variables")
        field = self.field
        result: Dict[Monomial, Any] = {}
        for m, c in self._terms.items():
            e = m[index]
            if e == 0:
                continue
            lowered = m[:index] + (e - 1,) + m[index + 1:]
            result[lowered] = field.mul(c, field.from_int(e))
        return Polynomial(field, self.nvars, result)

    def gradient(self) -> List["Polynomial"]:
        return [self.partial_derivative(i) for i in range(self.nvars)]

    def homogeneous_component(self, degree: int) -> "Polynomial":
        """Sum of the terms of total degree exactly `degree`."""
        return Polynomial(self.field, self.nvars, {m: c for m, c in self._terms.items() if sum(m) == degree})

    def homogeneous_components(self) -> Dict[int, "Polynomial"]:
        return {j: self.homogeneous_component(j) for j in sorted({sum(m) for m in self._terms})}

    def evaluate(self, point: Sequence[Any]) -> Any:
        """Value of the polynomial at a point given by nvars field elements."""
        if len(point) != self.nvars:
            raise FieldMismatchError(f"Point has {len(point)} coordinates, expected {self.nvars}")
        field = self.field
        values = [field.convert(v) for v in point]
        powers: List[Dict[int, Any]] = [{0: field.one(), 1: v} for v in values]

        def power_of(i: int, e: int) -> Any:
            cache = powers[i]
            if e not in cache:
                cache[e] = field.power(values[i], e)
            return cache[e]

        total = field.zero()
        for m, c in self._terms.items():
            term = c
            for i, e in enumerate(m):
                if e:
                    term = field.mul(term, power_of(i, e))
            total = field.add(total, term)
        return total

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Compose: replace x_i by images[i] (all images share one ring)."""
        if len(images) != self.nvars:
            raise InputError(f"Need {self.nvars} images, got {len(images)}")
        if not images:
            return self
        target = images[0]
        cache: List[Dict[int, Polynomial]] = [{1: image} for image in images]

        def power_of(i: int, e: int) -> Polynomial:
            if e not in cache[i]:
                cache[i][e] = images[i].power(e)
            return cache[i][e]

        field = target.field
        total: Dict[Monomial, Any] = {}
        one = Polynomial.constant(field, target.nvars, 1)
        for m, c in self._terms.items():
            term = one.scalar_multiply(embed(c, self.field, field))
            for i, e in enumerate(m):
                if e:
                    term = term.multiply(power_of(i, e))
            for tm, tc in term._terms.items():
                total[tm] = field.add(total[tm], tc) if tm in total else tc
        return Polynomial(field, target.nvars, total)

    def restrict(self, fixed: Mapping[int, Any]) -> "Polynomial":
        """Set the variables in `fixed` to constants and drop them from the ring."""
        keep = [i for i in range(self.nvars) if i not in fixed]
        field = self.field
        values = {i: field.convert(v) for i, v in fixed.items()}
        result: Dict[Monomial, Any] = {}
        for m, c in self._terms.items():
            coeff = c
            for i, v in values.items():
                if m[i]:
                    coeff = field.mul(coeff, field.power(v, m[i]))
            if field.is_zero(coeff):
                continue
            reduced = tuple(m[i] for i in keep)
            result[reduced] = field.add(result[reduced], coeff) if reduced in result else coeff
        return Polynomial(field, len(keep), result)

    def change_field(self, target: CoefficientField) -> "Polynomial":
        """Reduce Q coefficients mod p, or embed F_p coefficients into an extension."""
        if target == self.field:
            return self
        return Polynomial(target, self.nvars, {m: embed(c, self.field, target) for m, c in self._terms.items()})

    def translate_and_dehomogenize(self, point: "ProjectivePoint") -> "Polynomial":
        """
        Affine local equation of V(f) at `point`.

        The chart is x_i = 1 for the first nonzero coordinate i of the
        normalized point; the remaining variables are shifted so that the
        point sits at the origin. The result has nvars - 1 variables.
        """
        if not self.is_homogeneous():
            raise NotHomogeneousError("translate_and_dehomogenize needs a homogeneous polynomial")
        if point.nvars != self.nvars:
            raise FieldMismatchError(f"Point has {point.nvars} coordinates, expected {self.nvars}")
        field = point.field
        f = self.change_field(field)
        chart = point.chart
        local_nvars = self.nvars - 1
        images: List[Polynomial] = []
        k = 0
        for i, value in enumerate(point.coords):
            if i == chart:
                images.append(Polynomial.constant(field, local_nvars, 1))
                continue
            shifted = Polynomial.variable(field, local_nvars, k).add(Polynomial.constant(field, local_nvars, value))
            images.append(shifted)
            k += 1
        return f.substitute(images)

    def in_coordinate_ideal(self, variables: Iterable[int]) -> bool:
        """True iff every monomial is divisible by some x_i, i in `variables`."""
        indices = list(variables)
        return all(any(m[i] > 0 for i in indices) for m in self._terms)

    # -- text -------------------------------------------------------------

    def to_text(self) -> str:
        from algebra.parsing import format_polynomial
        return format_polynomial(self)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.field.label()}, nvars={self.nvars}, '{self.to_text()}')"


class ProjectivePoint:
    """A point of P^{nvars-1}, normalized so its first nonzero coordinate is 1."""

    __slots__ = ("field", "coords", "chart")

    def __init__(self, field: CoefficientField, coords: Sequence[Any]):
        values = [field.convert(c) for c in coords]
        chart = next((i for i, v in enumerate(values) if not field.is_zero(v)), None)
        if chart is None:
            raise InputError("A projective point needs a nonzero coordinate")
        scale = field.inv(values[chart])
        self.field = field
        self.coords: Tuple[Any, ...] = tuple(field.mul(v, scale) for v in values)
        self.chart = chart

    @property
    def nvars(self) -> int:
        return len(self.coords)

    def change_field(self, target: CoefficientField) -> "ProjectivePoint":
        return ProjectivePoint(target, [embed(c, self.field, target) for c in self.coords])

    def sort_key(self) -> Tuple:
        return (self.chart, tuple(self.field.element_key(c) for c in self.coords))

    def coordinate_strings(self) -> List[str]:
        return [self.field.format_element(c) for c in self.coords]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.field, self.coords))

    def __str__(self) -> str:
        return "[" + ":".join(self.coordinate_strings()) + "]"

    def __repr__(self) -> str:
        return f"ProjectivePoint({self.field.label()}, {self})"
