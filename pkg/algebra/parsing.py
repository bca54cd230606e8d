"""
Polynomial text grammar, printer and .poly files.

Grammar (whitespace-insensitive):
    poly    := ['-'] term (('+' | '-') term)*
    term    := coeff | coeff '*' factors | factors
    factors := var ['^' nat] ('*' var ['^' nat])*
    var     := 'x' nat
    coeff   := integer | integer '/' positive-integer
"""

import logging
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Tuple

from algebra.fields import CoefficientField, QQ_FIELD, RationalField, parse_field
from algebra.polynomial import Monomial, Polynomial
from utils.errors import InputError, PolynomialSyntaxError

logger = logging.getLogger(__name__)


class _Parser:
    """Recursive-descent reader over the raw text; positions index the original string."""

    def __init__(self, text: str, nvars: int):
        self.text = text
        self.nvars = nvars
        self.pos = 0

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _error(self, message: str) -> PolynomialSyntaxError:
        return PolynomialSyntaxError(message, self.pos, self.text)

    def _nat(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self._error("Expected a number")
        return int(self.text[start:self.pos])

    def _coeff(self) -> Fraction:
        numerator = self._nat()
        if self._peek() == "/":
            self.pos += 1
            slash = self.pos
            denominator = self._nat()
            if denominator == 0:
                raise PolynomialSyntaxError("Zero denominator", slash, self.text)
            return Fraction(numerator, denominator)
        return Fraction(numerator)

    def _factors(self) -> Monomial:
        exponent = [0] * self.nvars
        while True:
            if self._peek() != "x":
                raise self._error("Expected a variable")
            var_pos = self.pos
            self.pos += 1
            index = self._nat()
            if index >= self.nvars:
                raise PolynomialSyntaxError(
                    f"Variable x{index} out of range for {self.nvars} variables", var_pos, self.text
                )
            power = 1
            if self._peek() == "^":
                self.pos += 1
                power = self._nat()
            exponent[index] += power
            if self._peek() != "*":
                return tuple(exponent)
            self.pos += 1

    def _term(self) -> Tuple[Monomial, Fraction]:
        if self._peek().isdigit():
            coeff = self._coeff()
            if self._peek() != "*":
                return (0,) * self.nvars, coeff
            self.pos += 1
            return self._factors(), coeff
        return self._factors(), Fraction(1)

    def parse(self) -> List[Tuple[Monomial, Fraction]]:
        if not self._peek():
            raise self._error("Empty polynomial")
        terms = []
        sign = 1
        if self._peek() == "-":
            self.pos += 1
            sign = -1
        while True:
            monomial, coeff = self._term()
            terms.append((monomial, sign * coeff))
            nxt = self._peek()
            if not nxt:
                return terms
            if nxt not in "+-":
                raise self._error(f"Unexpected character {nxt!r}")
            sign = 1 if nxt == "+" else -1
            self.pos += 1


def parse_polynomial(text: str, nvars: int, field: CoefficientField = QQ_FIELD) -> Polynomial:
    """
    Parse polynomial text into a canonical Polynomial.

    Args:
        text: Polynomial in the grammar above
        nvars: Number of variables x0..x{nvars-1}
        field: Coefficient field; rational coefficients are mapped into it

    Returns:
        The canonical Polynomial

    Raises:
        PolynomialSyntaxError: malformed text or variable index out of range
        InputError: coefficient not representable in the field
    """
    parsed = _Parser(text, nvars).parse()
    terms: Dict[Monomial, object] = {}
    for monomial, coeff in parsed:
        value = field.from_fraction(coeff)
        terms[monomial] = field.add(terms[monomial], value) if monomial in terms else value
    return Polynomial(field, nvars, terms)


def _format_monomial(monomial: Monomial) -> str:
    factors = []
    for i, e in enumerate(monomial):
        if e == 1:
            factors.append(f"x{i}")
        elif e > 1:
            factors.append(f"x{i}^{e}")
    return "*".join(factors)


def format_polynomial(f: Polynomial) -> str:
    """Print in the parse grammar, terms in descending grevlex order."""
    if f.is_zero():
        return "0"
    field = f.field
    pieces: List[str] = []
    for monomial, coeff in f.terms():
        negative = isinstance(field, RationalField) and coeff < 0
        magnitude = -coeff if negative else coeff
        body = _format_monomial(monomial)
        if field.is_zero(field.sub(magnitude, field.one())) and body:
            text = body
        else:
            coeff_text = field.format_element(magnitude)
            text = f"{coeff_text}*{body}" if body else coeff_text
        if not pieces:
            pieces.append(f"-{text}" if negative else text)
        else:
            pieces.append(f" - {text}" if negative else f" + {text}")
    return "".join(pieces)


def read_poly_file(path: str) -> Polynomial:
    """Read a .poly file: header 'nvars=<n> field=<Q|Fp:p>', then one polynomial."""
    file_path = Path(path)
    try:
        lines = file_path.read_text().splitlines()
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e}") from e
    lines = [line for line in lines if line.strip() and not line.lstrip().startswith("#")]
    if not lines:
        raise InputError(f"{path} is empty")
    header: Dict[str, str] = {}
    for token in lines[0].split():
        key, _, value = token.partition("=")
        header[key] = value
    if "nvars" not in header or "field" not in header:
        raise InputError(f"{path}: header must read 'nvars=<n> field=<Q|Fp:p>'")
    try:
        nvars = int(header["nvars"])
    except ValueError as e:
        raise InputError(f"{path}: bad nvars {header['nvars']!r}") from e
    field = parse_field(header["field"])
    poly = parse_polynomial(" ".join(lines[1:]), nvars, field)
    logger.debug(f"Read {len(poly)} terms from {path}")
    return poly


def write_poly_file(path: str, f: Polynomial) -> None:
    file_path = Path(path)
    if file_path.parent and not file_path.parent.exists():
        file_path.parent.mkdir(parents=True, exist_ok=True)
    file_path.write_text(f"nvars={f.nvars} field={f.field.label()}\n{format_polynomial(f)}\n")
    logger.info(f"Wrote {path}")
