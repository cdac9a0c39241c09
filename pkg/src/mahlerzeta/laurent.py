"""Multivariate Laurent polynomials: grammar, parser, formatter, evaluator.

Grammar (ASCII, whitespace-insensitive between tokens)::

    poly   := term (('+'|'-') term)*        with optional leading '-'
    term   := coeff ('*' varpow)* | varpow ('*' varpow)*
    varpow := 'X' INT ('^' SINT)?
    coeff  := DECIMAL | INT ('/' INT)?

Variable indices start at 1; exponents may be negative.  '*' is mandatory
between factors, so "2X1" is rejected.  Coefficients in text form are real;
complex coefficients enter through the constructor.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

import numpy as np

__all__ = [
    "LaurentPolynomial",
    "LaurentSyntaxError",
    "parse_laurent",
    "format_laurent",
    "eval_laurent",
]

MAX_VAR_INDEX = 32
MAX_EXPONENT = 10 ** 6


class LaurentSyntaxError(ValueError):
    """Parse failure, carrying the byte offset and the expected-token set."""

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        self.offset = offset
        self.expected = tuple(expected)
        detail = f"{message} at byte {offset}"
        if expected:
            detail += f" (expected {', '.join(expected)})"
        super().__init__(detail)


class LaurentPolynomial:
    """Sparse Laurent polynomial: exponent vectors mapped to complex coefficients.

    Terms are canonicalized on construction: like terms merged, zero
    coefficients dropped.  The zero polynomial is rejected, since every
    consumer here (Mahler measures, torus evaluation) needs a nonzero input.
    """

    __slots__ = ("n_vars", "_terms")

    def __init__(self, n_vars: int, terms: Mapping[tuple[int, ...], complex]):
        if n_vars < 1:
            raise ValueError(f"n_vars must be >= 1, got {n_vars}")
        merged: dict[tuple[int, ...], complex] = {}
        for exps, coeff in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n_vars:
                raise ValueError(f"exponent vector {exps} does not have length {n_vars}")
            if any(abs(e) > MAX_EXPONENT for e in exps):
                raise ValueError(f"exponent magnitude above {MAX_EXPONENT} in {exps}")
            merged[exps] = merged.get(exps, 0j) + complex(coeff)
        merged = {e: c for e, c in merged.items() if c != 0}
        if not merged:
            raise ValueError("zero polynomial")
        # canonical variable count: the highest index actually referenced,
        # matching the parser's convention (trailing unused variables change
        # no torus average)
        used = max((self._last_nonzero(e) for e in merged), default=0)
        used = max(used, 1)
        if used < n_vars:
            merged = {e[:used]: c for e, c in merged.items()}
            n_vars = used
        self.n_vars = n_vars
        self._terms = merged

    @staticmethod
    def _last_nonzero(exps: tuple[int, ...]) -> int:
        for pos in range(len(exps), 0, -1):
            if exps[pos - 1] != 0:
                return pos
        return 0

    @property
    def terms(self) -> dict[tuple[int, ...], complex]:
        return dict(self._terms)

    def __eq__(self, other):
        return (isinstance(other, LaurentPolynomial)
                and self.n_vars == other.n_vars
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.n_vars, frozenset(self._terms.items())))

    def __repr__(self):
        return f"LaurentPolynomial({format_laurent(self)!r})"


# --------------------------------------------------------------------------
# tokenizer

_INT = "INT"
_DECIMAL = "DECIMAL"
_ONE_CHAR = {"+": "+", "-": "-", "*": "*", "^": "^", "/": "/", "X": "X"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _ONE_CHAR:
            tokens.append((_ONE_CHAR[ch], ch, i))
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i < n and text[i] == ".":
                i += 1
                if i >= n or not text[i].isdigit():
                    raise LaurentSyntaxError("malformed decimal", i, ("digit",))
                while i < n and text[i].isdigit():
                    i += 1
                tokens.append((_DECIMAL, text[start:i], start))
            else:
                tokens.append((_INT, text[start:i], start))
            continue
        raise LaurentSyntaxError(f"unexpected character {ch!r}", i,
                                 ("'+'", "'-'", "'*'", "'^'", "'X'", "number"))
    tokens.append(("END", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind: str):
        tok = self.tokens[self.pos]
        if tok[0] != kind:
            raise LaurentSyntaxError(f"unexpected token {tok[1]!r}", tok[2], (kind,))
        self.pos += 1
        return tok

    def parse(self) -> tuple[int, dict[tuple[int, ...], complex]]:
        sign = 1.0
        if self.peek()[0] == "-":
            self.take("-")
            sign = -1.0
        raw: dict[tuple[tuple[int, int], ...], complex] = {}
        max_index = 1
        while True:
            coeff, powers = self._term()
            for index, _ in powers:
                max_index = max(max_index, index)
            raw[powers] = raw.get(powers, 0j) + sign * coeff
            kind, _, _ = self.peek()
            if kind == "END":
                break
            if kind == "+":
                self.take("+")
                sign = 1.0
            elif kind == "-":
                self.take("-")
                sign = -1.0
            else:
                tok = self.peek()
                raise LaurentSyntaxError(f"unexpected token {tok[1]!r}", tok[2],
                                         ("'+'", "'-'", "end of input"))
        terms = {}
        for key, coeff in raw.items():
            exps = [0] * max_index
            for index, exponent in key:
                exps[index - 1] = exponent
            terms[tuple(exps)] = terms.get(tuple(exps), 0j) + coeff
        return max_index, terms

    def _term(self) -> tuple[complex, tuple[tuple[int, int], ...]]:
        kind, _, offset = self.peek()
        powers: dict[int, int] = {}
        if kind in (_INT, _DECIMAL):
            coeff = self._coeff()
            while self.peek()[0] == "*":
                self.take("*")
                self._varpow(powers)
        elif kind == "X":
            coeff = 1.0
            self._varpow(powers)
            while self.peek()[0] == "*":
                self.take("*")
                self._varpow(powers)
        else:
            raise LaurentSyntaxError("expected a term", offset, ("number", "'X'"))
        powers = {i: e for i, e in powers.items() if e != 0}
        return complex(coeff), tuple(sorted(powers.items()))

    def _coeff(self) -> float:
        kind, text, offset = self.peek()
        if kind == _DECIMAL:
            self.take(_DECIMAL)
            return float(text)
        self.take(_INT)
        if self.peek()[0] == "/":
            self.take("/")
            dkind, dtext, doffset = self.peek()
            self.take(_INT)
            if int(dtext) == 0:
                raise LaurentSyntaxError("zero denominator", doffset, ("nonzero integer",))
            return int(text) / int(dtext)
        return float(int(text))

    def _varpow(self, powers: dict[int, int]) -> None:
        self.take("X")
        kind, text, offset = self.peek()
        self.take(_INT)
        index = int(text)
        if index == 0:
            raise LaurentSyntaxError("variable index 0 (indices start at 1)", offset,
                                     ("integer >= 1",))
        if index > MAX_VAR_INDEX:
            raise LaurentSyntaxError(f"variable index above {MAX_VAR_INDEX}", offset,
                                     (f"integer <= {MAX_VAR_INDEX}",))
        exponent = 1
        if self.peek()[0] == "^":
            self.take("^")
            sign = 1
            if self.peek()[0] == "-":
                self.take("-")
                sign = -1
            elif self.peek()[0] == "+":
                self.take("+")
            ekind, etext, eoffset = self.peek()
            self.take(_INT)
            exponent = sign * int(etext)
            if abs(exponent) > MAX_EXPONENT:
                raise LaurentSyntaxError(f"exponent magnitude above {MAX_EXPONENT}", eoffset,
                                         (f"|exponent| <= {MAX_EXPONENT}",))
        powers[index] = powers.get(index, 0) + exponent


def parse_laurent(text: str) -> LaurentPolynomial:
    """Parse the grammar above into a canonical sparse polynomial.

    Raises ``LaurentSyntaxError`` (with byte offset) on malformed input and
    ``ValueError`` when all terms cancel to the zero polynomial.
    """
    n_vars, terms = _Parser(text).parse()
    return LaurentPolynomial(n_vars, terms)


# --------------------------------------------------------------------------
# formatting

def _format_magnitude(c: float) -> str:
    if c == int(c) and abs(c) <= 2 ** 53:
        return str(int(c))
    rep = repr(c)
    if "e" not in rep and "E" not in rep:
        return rep
    frac = Fraction(c)
    return f"{frac.numerator}/{frac.denominator}"


def _term_key(exps: tuple[int, ...]):
    return (sum(abs(e) for e in exps), exps)


def format_laurent(poly: LaurentPolynomial) -> str:
    """Deterministic text form; round-trips through ``parse_laurent``.

    Terms appear in graded-lexicographic order (grade = sum of absolute
    exponents, descending).  Only real coefficients are representable in the
    grammar.
    """
    pieces = []
    for i, exps in enumerate(sorted(poly._terms, key=_term_key, reverse=True)):
        coeff = poly._terms[exps]
        if coeff.imag != 0.0:
            raise ValueError("complex coefficients have no text form")
        value = coeff.real
        sign = "-" if value < 0 else "+"
        magnitude = abs(value)
        factors = [
            f"X{j + 1}" + (f"^{e}" if e != 1 else "")
            for j, e in enumerate(exps) if e != 0
        ]
        if not factors:
            body = _format_magnitude(magnitude)
        elif magnitude == 1.0:
            body = "*".join(factors)
        else:
            body = "*".join([_format_magnitude(magnitude)] + factors)
        if i == 0:
            pieces.append(body if sign == "+" else "-" + body)
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


def eval_laurent(poly: LaurentPolynomial, point) -> complex:
    """Evaluate on the unit torus at the given angles: X_j = exp(i theta_j)."""
    angles = np.asarray(getattr(point, "angles", point), dtype=np.float64)
    if angles.shape != (poly.n_vars,):
        raise ValueError(f"point must have {poly.n_vars} angles, got shape {angles.shape}")
    total = 0j
    for exps, coeff in poly._terms.items():
        total += coeff * complex(np.exp(1j * float(np.dot(angles, exps))))
    return total


def _exponent_matrix(poly: LaurentPolynomial) -> tuple[np.ndarray, np.ndarray]:
    """Term exponents as an (n_terms, n_vars) int matrix plus the coefficients."""
    items = sorted(poly._terms.items(), key=lambda kv: _term_key(kv[0]), reverse=True)
    exps = np.array([e for e, _ in items], dtype=np.float64).reshape(len(items), poly.n_vars)
    coeffs = np.array([c for _, c in items], dtype=np.complex128)
    return exps, coeffs


def eval_on_nodes(poly: LaurentPolynomial, nodes: np.ndarray) -> np.ndarray:
    """Vectorized unit-torus evaluation on an (n, n_vars) block of angles."""
    exps, coeffs = _exponent_matrix(poly)
    return np.exp(1j * (nodes @ exps.T)) @ coeffs
