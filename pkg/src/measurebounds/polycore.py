"""Multi-indices, sparse multivariate polynomials and their text format.

Polynomials are written as sums of terms such as ``2*x1^3*x2 - 1/2*x3 + 4``.
Variables are 1-based (``x1`` .. ``xn``); coefficients may be integers,
decimals or simple fractions ``p/q``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterator, Mapping, Sequence

import numpy as np

from .errors import InvalidArgument, ParseError

MultiIndex = tuple[int, ...]


def grlex_key(alpha: MultiIndex) -> tuple:
    """Sort key: total degree first, then lexicographic with x1 most significant."""
    return (sum(alpha), tuple(-a for a in alpha))


@dataclass(frozen=True)
class MultiIndexSet:
    """All exponent vectors of length ``n`` and total degree at most ``d``."""

    n: int
    d: int
    members: tuple[MultiIndex, ...]
    _position: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_position", {a: i for i, a in enumerate(self.members)})

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[MultiIndex]:
        return iter(self.members)

    def __getitem__(self, i: int) -> MultiIndex:
        return self.members[i]

    def __contains__(self, alpha) -> bool:
        return tuple(alpha) in self._position

    def index(self, alpha: Sequence[int]) -> int:
        return self._position[tuple(alpha)]

    def as_array(self) -> np.ndarray:
        """Members as an int array of shape (len, n)."""
        return np.array(self.members, dtype=int).reshape(len(self.members), self.n)


def enumerate_multiindices(n: int, d: int) -> MultiIndexSet:
    if n < 1:
        raise InvalidArgument(f"dimension must be >= 1, got {n}")
    if d < 0:
        raise InvalidArgument(f"degree bound must be >= 0, got {d}")
    members = []
    for total in range(d + 1):
        block = []
        # each multiset of variables of size `total` is one monomial of that degree
        for combo in combinations_with_replacement(range(n), total):
            alpha = [0] * n
            for i in combo:
                alpha[i] += 1
            block.append(tuple(alpha))
        block.sort(key=grlex_key)
        members.extend(block)
    return MultiIndexSet(n, d, tuple(members))


@dataclass(frozen=True)
class SparsePolynomial:
    """Polynomial in monomial form: a mapping exponent vector -> coefficient."""

    n: int
    terms: Mapping[MultiIndex, float]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidArgument(f"dimension must be >= 1, got {self.n}")
        clean = {}
        for alpha, c in self.terms.items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != self.n:
                raise InvalidArgument(f"exponent {alpha} does not have length {self.n}")
            if any(a < 0 for a in alpha):
                raise InvalidArgument(f"negative exponent in {alpha}")
            c = float(c)
            if c != 0.0:
                clean[alpha] = clean.get(alpha, 0.0) + c
        clean = {a: c for a, c in sorted(clean.items(), key=lambda t: grlex_key(t[0])) if c != 0.0}
        object.__setattr__(self, "terms", clean)

    # construction helpers

    @classmethod
    def zero(cls, n: int) -> SparsePolynomial:
        return cls(n, {})

    @classmethod
    def constant(cls, n: int, c: float) -> SparsePolynomial:
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, i: int) -> SparsePolynomial:
        """The coordinate ``x_{i+1}`` (``i`` is 0-based)."""
        alpha = [0] * n
        alpha[i] = 1
        return cls(n, {tuple(alpha): 1.0})

    @classmethod
    def linear(cls, coeffs: Sequence[float], constant: float = 0.0) -> SparsePolynomial:
        n = len(coeffs)
        terms = {(0,) * n: constant}
        for i, c in enumerate(coeffs):
            alpha = [0] * n
            alpha[i] = 1
            terms[tuple(alpha)] = c
        return cls(n, terms)

    @classmethod
    def parse(cls, text: str, n: int) -> SparsePolynomial:
        return parse_polynomial(text, n)

    # structure

    @property
    def degree(self) -> int:
        return max((sum(a) for a in self.terms), default=0)

    def coordinate_degrees(self) -> tuple[int, ...]:
        """Highest power of each variable that occurs."""
        return tuple(max((a[i] for a in self.terms), default=0) for i in range(self.n))

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(a) == 0 for a in self.terms)

    def constant_term(self) -> float:
        return self.terms.get((0,) * self.n, 0.0)

    def coefficient(self, alpha: Sequence[int]) -> float:
        return self.terms.get(tuple(alpha), 0.0)

    # arithmetic (addition and scaling only)

    def __add__(self, other: SparsePolynomial) -> SparsePolynomial:
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        if other.n != self.n:
            raise InvalidArgument(f"dimension mismatch: {self.n} vs {other.n}")
        terms = dict(self.terms)
        for a, c in other.terms.items():
            terms[a] = terms.get(a, 0.0) + c
        return SparsePolynomial(self.n, terms)

    def __neg__(self) -> SparsePolynomial:
        return self.scale(-1.0)

    def __sub__(self, other: SparsePolynomial) -> SparsePolynomial:
        return self + (-other)

    def scale(self, c: float) -> SparsePolynomial:
        return SparsePolynomial(self.n, {a: c * v for a, v in self.terms.items()})

    def __mul__(self, c):
        if isinstance(c, (int, float)):
            return self.scale(float(c))
        return NotImplemented

    __rmul__ = __mul__

    def partial(self, i: int) -> SparsePolynomial:
        """Derivative with respect to the 0-based coordinate ``i``."""
        terms = {}
        for a, c in self.terms.items():
            if a[i] > 0:
                b = list(a)
                b[i] -= 1
                terms[tuple(b)] = c * a[i]
        return SparsePolynomial(self.n, terms)

    # evaluation

    def __call__(self, x) -> float:
        return evaluate(self, x)

    def evaluate_many(self, points) -> np.ndarray:
        """Evaluate at each row of a (m, n) array."""
        X = np.asarray(points, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.n:
            raise InvalidArgument(f"expected points of shape (m, {self.n}), got {X.shape}")
        out = np.zeros(X.shape[0])
        for a, c in self.terms.items():
            mono = np.full(X.shape[0], c)
            for i, e in enumerate(a):
                if e:
                    mono = mono * X[:, i] ** e
            out += mono
        return out

    def __str__(self) -> str:
        return format_polynomial(self)


def evaluate(p: SparsePolynomial, x) -> float:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape != (p.n,):
        raise InvalidArgument(f"point of length {x.size} for a polynomial in {p.n} variables")
    total = 0.0
    for a, c in p.terms.items():
        total += c * math.prod(float(x[i]) ** e for i, e in enumerate(a))
    return total


# text format

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<var>x(?P<idx>\d+))
  | (?P<op>[-+*/^−])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind == "idx":
            kind = "var"
        if kind != "ws":
            value = m.group(kind)
            if kind == "op" and value == "−":
                value = "-"
            tokens.append((kind, m.group("idx") if kind == "var" else value, pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok[2], self.text)

    def number(self) -> Fraction:
        kind, value, _ = self.take()
        q = Fraction(value)
        if self.peek()[:2] == ("op", "/"):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.fail("expected denominator after '/'", tok)
            den = Fraction(tok[1])
            if den == 0:
                self.fail("zero denominator", tok)
            q = q / den
        return q

    def factor(self, alpha: list[int]) -> None:
        kind, idx, pos = self.take()
        k = int(idx)
        if not 1 <= k <= self.n:
            raise ParseError(f"variable x{k} outside x1..x{self.n}", pos, self.text)
        e = 1
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.peek()
            if tok[:2] == ("op", "-"):
                self.fail("negative exponent", tok)
            if tok[0] != "num" or not tok[1].isdigit():
                self.fail("exponent must be a non-negative integer", tok)
            self.take()
            e = int(tok[1])
        alpha[k - 1] += e

    def term(self) -> tuple[MultiIndex, Fraction]:
        coeff = Fraction(1)
        alpha = [0] * self.n
        kind = self.peek()[0]
        if kind == "num":
            coeff = self.number()
            if self.peek()[:2] == ("op", "*"):
                self.take()
                if self.peek()[0] != "var":
                    self.fail("expected a variable after '*'")
            elif self.peek()[0] == "var":
                pass  # implicit product such as "2x1"
            else:
                return tuple(alpha), coeff
        elif kind != "var":
            self.fail("expected a coefficient or a variable")
        self.factor(alpha)
        while self.peek()[:2] == ("op", "*"):
            self.take()
            if self.peek()[0] != "var":
                self.fail("expected a variable after '*'")
            self.factor(alpha)
        return tuple(alpha), coeff

    def polynomial(self) -> dict[MultiIndex, Fraction]:
        terms: dict[MultiIndex, Fraction] = {}
        sign = 1
        if self.peek()[:2] in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        while True:
            alpha, c = self.term()
            terms[alpha] = terms.get(alpha, Fraction(0)) + sign * c
            tok = self.peek()
            if tok[0] == "end":
                return terms
            if tok[:2] not in (("op", "+"), ("op", "-")):
                self.fail(f"unexpected {tok[1]!r}")
            sign = -1 if self.take()[1] == "-" else 1


def parse_polynomial(text: str, n: int) -> SparsePolynomial:
    if n < 1:
        raise InvalidArgument(f"dimension must be >= 1, got {n}")
    if not text.strip():
        raise ParseError("empty polynomial", 0, text)
    # sum exactly, round once
    terms = _Parser(text, n).polynomial()
    return SparsePolynomial(n, {a: float(c) for a, c in terms.items()})


def _format_monomial(alpha: MultiIndex) -> str:
    parts = []
    for i, e in enumerate(alpha):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts)


def format_polynomial(p: SparsePolynomial) -> str:
    """Canonical text: graded-lex term order, coefficients in shortest round-trip form."""
    if p.is_zero():
        return "0"
    out = []
    for k, (alpha, c) in enumerate(p.terms.items()):
        mono = _format_monomial(alpha)
        mag = abs(c)
        body = repr(mag) if not mono else (mono if mag == 1.0 else f"{mag!r}*{mono}")
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)

