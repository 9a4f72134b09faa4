"""Exact multivariate polynomials over the rationals.

Monomials are exponent tuples of fixed length n.  A Polynomial stores its
terms sorted by graded-lex with x1 > x2 > ... > xn, leading term first; this
canonical form makes equality structural and hashing cheap.  All arithmetic
is exact.

Term orders compare monomials by a "preference" key; the most preferred
monomial of a polynomial is its head (the marked term of a Groebner basis
element).  For weight-refined orders the key is (total degree, -weight,
lex), so on homogeneous input the head is the term of minimal weight, ties
broken towards x1.  This matches the convention of taking initial forms of
minimal weight, and the degree-first component keeps the comparison a
genuine global term order (1 is the least monomial), so Buchberger's
algorithm terminates on inhomogeneous input as well.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .linalg import QQ, ZERO, ONE, primitive


class ParseError(ValueError):
    """Syntax error in the polynomial / ideal grammar, with a position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ImproperIdealError(ValueError):
    """Raised for operations requiring a proper ideal when 1 is contained."""


# ---------------------------------------------------------------------------
# monomial helpers

def monomial_degree(exp) -> int:
    return sum(exp)


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a, b) -> bool:
    """True iff x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_div(b, a):
    return tuple(y - x for x, y in zip(a, b))


def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _canonical_key(exp):
    # graded-lex with x1 > ... > xn; larger key = earlier in canonical form
    return (sum(exp), exp)


# ---------------------------------------------------------------------------
# term orders

LT, EQ, GT = -1, 0, 1


@dataclass(frozen=True)
class TermOrder:
    """Total order on monomials used for marking Groebner basis heads.

    kind is "lex", "grlex" or "weight".  A weight order refines the partial
    order of a weight vector: heads have minimal weight (ties broken by lex
    with the given variable priority), and total degree is compared first so
    the order is global even for negative weights.
    """

    kind: str
    weight: Optional[tuple] = None
    priority: Optional[tuple] = None  # permutation of 0..n-1, default identity

    def __post_init__(self):
        if self.kind not in ("lex", "grlex", "weight"):
            raise ValueError(f"unknown term order kind {self.kind!r}")
        if (self.kind == "weight") != (self.weight is not None):
            raise ValueError("weight vector present iff kind == 'weight'")
        if self.weight is not None:
            object.__setattr__(self, "weight", primitive(self.weight))

    def key(self, exp):
        """Preference key; the head of a polynomial maximizes it."""
        if self.priority is not None:
            lex = tuple(exp[p] for p in self.priority)
        else:
            lex = exp
        if self.kind == "lex":
            return lex
        if self.kind == "grlex":
            return (sum(exp), lex)
        w = self.weight
        return (sum(exp), -sum(wi * e for wi, e in zip(w, exp)), lex)


GRLEX = TermOrder("grlex")
LEX = TermOrder("lex")


def weight_order(w, priority=None) -> TermOrder:
    return TermOrder("weight", weight=tuple(w), priority=priority)


def compare_monomials(a, b, order: TermOrder) -> int:
    """GT (=1) iff a is preferred over b (marked first), EQ iff a == b."""
    ka, kb = order.key(a), order.key(b)
    if ka > kb:
        return GT
    if ka < kb:
        return LT
    return EQ


# ---------------------------------------------------------------------------
# polynomials

@dataclass(frozen=True)
class Polynomial:
    """Immutable polynomial in canonical form (sorted terms, no zeros)."""

    n: int
    terms: tuple  # tuple of (exponent tuple, QQ coefficient), canonical order

    @staticmethod
    def from_dict(n: int, coeffs: dict) -> "Polynomial":
        items = [(e, c) for e, c in coeffs.items() if c != 0]
        items.sort(key=lambda t: _canonical_key(t[0]), reverse=True)
        return Polynomial(n, tuple(items))

    @staticmethod
    def zero(n: int) -> "Polynomial":
        return Polynomial(n, ())

    @staticmethod
    def constant(n: int, c) -> "Polynomial":
        c = QQ(c)
        if c == 0:
            return Polynomial.zero(n)
        return Polynomial(n, (((0,) * n, c),))

    @staticmethod
    def variable(n: int, i: int) -> "Polynomial":
        exp = tuple(1 if j == i else 0 for j in range(n))
        return Polynomial(n, ((exp, ONE),))

    def as_dict(self) -> dict:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return max(monomial_degree(e) for e, _ in self.terms)

    def homogeneous_degree(self) -> Optional[int]:
        """Common degree of all terms, or None if not homogeneous."""
        if not self.terms:
            raise ValueError("zero polynomial")
        degrees = {monomial_degree(e) for e, _ in self.terms}
        return degrees.pop() if len(degrees) == 1 else None

    @property
    def is_homogeneous(self) -> bool:
        return self.homogeneous_degree() is not None

    def support(self) -> frozenset:
        return frozenset(e for e, _ in self.terms)

    def monic(self, order: TermOrder = GRLEX) -> "Polynomial":
        """Scale so the head coefficient (w.r.t. order) is 1."""
        if not self.terms:
            return self
        head = max((e for e, _ in self.terms), key=order.key)
        c = dict(self.terms)[head]
        if c == 1:
            return self
        return Polynomial(self.n, tuple((e, co / c) for e, co in self.terms))

    def head_monomial(self, order: TermOrder) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no head")
        return max((e for e, _ in self.terms), key=order.key)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.n != other.n:
            raise ValueError("ambient variable counts differ")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms:
            out[e] = out.get(e, ZERO) + c
        return Polynomial.from_dict(self.n, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.n, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = monomial_mul(e1, e2)
                out[e] = out.get(e, ZERO) + c1 * c2
        return Polynomial.from_dict(self.n, out)

    def scale(self, c) -> "Polynomial":
        c = QQ(c)
        if c == 0:
            return Polynomial.zero(self.n)
        return Polynomial(self.n, tuple((e, c * co) for e, co in self.terms))

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __str__(self) -> str:
        return format_polynomial(self)

    __repr__ = __str__


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def is_homogeneous(p: Polynomial):
    """(True, degree) for homogeneous nonzero p, else (False, None)."""
    d = p.homogeneous_degree()
    return (d is not None, d)


# ---------------------------------------------------------------------------
# ideals

@dataclass(frozen=True)
class Ideal:
    """Graded ideal given by nonzero homogeneous generators."""

    n: int
    generators: tuple

    def __post_init__(self):
        if not self.generators:
            raise ValueError("ideal needs at least one generator")
        for g in self.generators:
            if g.n != self.n:
                raise ValueError("generator has wrong ambient variable count")
            if g.is_zero:
                raise ValueError("zero polynomial is not a valid generator")
            if not g.is_homogeneous:
                raise ValueError(f"generator {g} is not homogeneous")

    @staticmethod
    def of(n: int, generators: Iterable[Polynomial]) -> "Ideal":
        return Ideal(n, tuple(generators))


# ---------------------------------------------------------------------------
# parsing and printing

_TOKEN = re.compile(r"\s*(\d+|x\d+|\^|\*|\+|-|/)")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            rest = text[pos:]
            if rest.strip() == "":
                break
            bad = pos + len(rest) - len(rest.lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()
    return tokens


def parse_polynomial(text: str, n: int) -> Polynomial:
    """Parse the grammar: terms joined by +/-, each an optional rational
    coefficient and '*'-separated variable powers xi^k."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial", 0)
    coeffs: dict = {}
    i = 0
    sign = ONE
    expect_term = True
    while i < len(tokens):
        tok, pos = tokens[i]
        if tok == "+" or tok == "-":
            if expect_term and tok == "+":
                raise ParseError("unexpected '+'", pos)
            sign = sign * (-1 if tok == "-" else 1) if expect_term else QQ(-1 if tok == "-" else 1)
            expect_term = True
            i += 1
            continue
        # parse one term
        coeff = sign
        sign = ONE
        exp = [0] * n
        saw_factor = False
        while i < len(tokens):
            tok, pos = tokens[i]
            if tok.isdigit():
                value = QQ(int(tok))
                i += 1
                if i < len(tokens) and tokens[i][0] == "/":
                    i += 1
                    if i >= len(tokens) or not tokens[i][0].isdigit():
                        raise ParseError("expected denominator", pos)
                    d = int(tokens[i][0])
                    if d == 0:
                        raise ParseError("zero denominator", tokens[i][1])
                    value = value / d
                    i += 1
                coeff *= value
            elif tok.startswith("x"):
                idx = int(tok[1:])
                if not 1 <= idx <= n:
                    raise ParseError(f"variable index {idx} out of range 1..{n}", pos)
                power = 1
                i += 1
                if i < len(tokens) and tokens[i][0] == "^":
                    i += 1
                    if i >= len(tokens) or not tokens[i][0].isdigit():
                        raise ParseError("expected exponent", pos)
                    power = int(tokens[i][0])
                    i += 1
                exp[idx - 1] += power
            else:
                raise ParseError(f"unexpected token {tok!r}", pos)
            saw_factor = True
            if i < len(tokens) and tokens[i][0] == "*":
                i += 1
                if i >= len(tokens):
                    raise ParseError("dangling '*'", tokens[i - 1][1])
                continue
            break
        if not saw_factor:
            raise ParseError("expected a term", tokens[i][1] if i < len(tokens) else len(text))
        e = tuple(exp)
        coeffs[e] = coeffs.get(e, ZERO) + coeff
        expect_term = False
    if expect_term:
        raise ParseError("dangling sign", len(text))
    return Polynomial.from_dict(n, coeffs)


def _format_coeff(c) -> str:
    return str(c)


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero:
        return "0"
    parts = []
    for e, c in p.terms:
        factors = []
        for i, k in enumerate(e):
            if k == 1:
                factors.append(f"x{i + 1}")
            elif k > 1:
                factors.append(f"x{i + 1}^{k}")
        mag = abs(c)
        if not factors:
            body = _format_coeff(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_format_coeff(mag)] + factors)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(parts)


def parse_ideal_file(text: str) -> Ideal:
    """Ideal file: first non-comment line 'vars: n', then one generator per
    line; '#' lines are comments."""
    n = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            m = re.fullmatch(r"vars:\s*(\d+)", line)
            if m is None:
                raise ParseError(f"line {lineno}: expected 'vars: n' header", 0)
            n = int(m.group(1))
            if n < 1:
                raise ParseError(f"line {lineno}: need at least one variable", 0)
            continue
        p = parse_polynomial(line, n)
        if p.is_zero:
            raise ParseError(f"line {lineno}: generator is the zero polynomial", 0)
        gens.append(p)
    if n is None:
        raise ParseError("missing 'vars: n' header", 0)
    if not gens:
        raise ParseError("no generators", 0)
    return Ideal.of(n, gens)


def format_ideal(I: Ideal) -> str:
    lines = [f"vars: {I.n}"]
    lines.extend(format_polynomial(g) for g in I.generators)
    return "\n".join(lines) + "\n"
