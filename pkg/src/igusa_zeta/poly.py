"""Exact multivariate polynomial arithmetic over the coefficient ring.

Polynomials are sparse maps from exponent vectors to nonzero ring elements.
The canonical term order is graded lexicographic, which fixes rendering,
hashing and iteration order.
"""

from __future__ import annotations

import math
from typing import Dict, Optional, Sequence, Tuple, Union

from .coeff import LocalRing, LocalRingElement
from .errors import (
    NonUnitContent,
    PolynomialSyntaxError,
    UniformizerInCharZero,
    ZeroPolynomial,
)

Exponents = Tuple[int, ...]


def _grlex(exps: Exponents):
    return (sum(exps), exps)


def weighted_degree(exps: Sequence[int], alpha: Sequence[int]) -> int:
    """Sum of alpha_i * m_i for a monomial exponent vector m."""
    if len(exps) != len(alpha):
        raise ValueError("length mismatch")
    return sum(a * m for a, m in zip(alpha, exps))


class MultiPoly:
    """Polynomial in n variables over a :class:`LocalRing`.

    ``terms`` maps exponent tuples of length n to nonzero coefficients; the
    instance is treated as immutable after construction.
    """

    __slots__ = ("ring", "n", "terms")

    def __init__(self, ring: LocalRing, n: int, terms: Dict[Exponents, LocalRingElement]):
        clean: Dict[Exponents, LocalRingElement] = {}
        for exps, c in terms.items():
            if len(exps) != n:
                raise ValueError(f"exponent vector {exps} has length != {n}")
            if not c.is_zero():
                clean[tuple(exps)] = c
        self.ring = ring
        self.n = n
        self.terms = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, ring: LocalRing, n: int) -> "MultiPoly":
        return cls(ring, n, {})

    @classmethod
    def constant(cls, ring: LocalRing, n: int, c: Union[int, LocalRingElement]) -> "MultiPoly":
        if isinstance(c, int):
            c = ring.from_int(c)
        return cls(ring, n, {(0,) * n: c})

    @classmethod
    def from_int_terms(cls, ring: LocalRing, n: int, terms: Dict[Exponents, int]) -> "MultiPoly":
        return cls(ring, n, {e: ring.from_int(c) for e, c in terms.items()})

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> LocalRingElement:
        return self.terms.get((0,) * self.n, self.ring.zero())

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def variables_present(self) -> frozenset:
        return frozenset(i for e in self.terms for i in range(self.n) if e[i] > 0)

    def key(self):
        """Hashable canonical form (used as a memoization key)."""
        items = tuple(sorted((e, self.terms[e].payload) for e in self.terms))
        return (self.ring.p, self.ring.positive_char, self.n, items)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.ring == other.ring
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(self.key())

    # -- arithmetic ----------------------------------------------------------

    def _merge(self, acc: Dict[Exponents, LocalRingElement], exps: Exponents, c: LocalRingElement):
        prev = acc.get(exps)
        c = c if prev is None else prev + c
        if c.is_zero():
            acc.pop(exps, None)
        else:
            acc[exps] = c

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        if self.ring != other.ring or self.n != other.n:
            raise ValueError("incompatible polynomials")
        acc = dict(self.terms)
        for e, c in other.terms.items():
            self._merge(acc, e, c)
        return MultiPoly(self.ring, self.n, acc)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.ring, self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, LocalRingElement)):
            c = self.ring.from_int(other) if isinstance(other, int) else other
            return MultiPoly(self.ring, self.n, {e: v * c for e, v in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.ring != other.ring or self.n != other.n:
            raise ValueError("incompatible polynomials")
        acc: Dict[Exponents, LocalRingElement] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                self._merge(acc, exps, c1 * c2)
        return MultiPoly(self.ring, self.n, acc)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "MultiPoly":
        if e < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.ring, self.n, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- ring-specific operations ---------------------------------------------

    def content_valuation(self) -> int:
        """Minimum uniformizer order among the coefficients."""
        if not self.terms:
            raise ZeroPolynomial("content of the zero polynomial")
        return min(c.valuation() for c in self.terms.values())

    def divide_by_uniformizer(self, k: int) -> "MultiPoly":
        if k == 0:
            return self
        return MultiPoly(
            self.ring, self.n, {e: c.divide_by_uniformizer(k) for e, c in self.terms.items()}
        )

    def reduce_mod_pi(self) -> "ResiduePoly":
        """Coefficient-wise reduction; requires unit content so the result is nonzero."""
        if self.content_valuation() > 0:
            raise NonUnitContent("all coefficients divisible by the uniformizer")
        terms = {}
        for e, c in self.terms.items():
            r = c.reduce()
            if r:
                terms[e] = r
        return ResiduePoly(self.ring.p, self.n, terms)

    def partial_derivative(self, var: int) -> "MultiPoly":
        """Formal derivative in variable ``var`` (0-based)."""
        if not 0 <= var < self.n:
            raise ValueError(f"variable index {var} out of range")
        acc: Dict[Exponents, LocalRingElement] = {}
        for e, c in self.terms.items():
            k = e[var]
            if k == 0:
                continue
            d = c * self.ring.from_int(k)
            if d.is_zero():
                continue
            exps = e[:var] + (k - 1,) + e[var + 1 :]
            self._merge(acc, exps, d)
        return MultiPoly(self.ring, self.n, acc)

    def evaluate(self, point: Sequence[LocalRingElement]) -> LocalRingElement:
        if len(point) != self.n:
            raise ValueError("point length mismatch")
        total = self.ring.zero()
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x**k
            total = total + v
        return total

    def substitute_affine(
        self, center: Sequence[LocalRingElement], scale: Sequence[int]
    ) -> "MultiPoly":
        """Exact expansion of f(center_1 + pi^{m_1} x_1, ..., center_n + pi^{m_n} x_n)."""
        if len(center) != self.n or len(scale) != self.n:
            raise ValueError("center/scale length mismatch")
        ring = self.ring
        pis = [ring.pi(m) if m else ring.one() for m in scale]
        acc: Dict[Exponents, LocalRingElement] = {}
        for e, c in self.terms.items():
            # Per-variable rows of (center + pi^m x)^k, then an n-fold product.
            partial: Dict[Exponents, LocalRingElement] = {(): c}
            for i, k in enumerate(e):
                a, b = center[i], pis[i]
                if k == 0:
                    row = {0: ring.one()}
                elif a.is_zero():
                    row = {k: b**k}
                else:
                    row = {}
                    for j in range(k + 1):
                        coef = ring.from_int(math.comb(k, j)) * a ** (k - j) * b**j
                        if not coef.is_zero():
                            row[j] = coef
                nxt: Dict[Exponents, LocalRingElement] = {}
                for exps, v in partial.items():
                    for j, coef in row.items():
                        w = v * coef
                        if w.is_zero():
                            continue
                        key = exps + (j,)
                        prev = nxt.get(key)
                        w = w if prev is None else prev + w
                        if w.is_zero():
                            nxt.pop(key, None)
                        else:
                            nxt[key] = w
                partial = nxt
            for exps, v in partial.items():
                self._merge(acc, exps, v)
        return MultiPoly(ring, self.n, acc)

    # -- rendering -------------------------------------------------------------

    def render(self) -> str:
        """Canonical text form; ``parse(render(f))`` reproduces f."""
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms, key=_grlex, reverse=True):
            c = self.terms[e]
            mono = _render_monomial(self.n, e)
            if self.ring.positive_char:
                for k, d in enumerate(c.payload):
                    if d:
                        pieces.append((False, _join_factors(d, k, mono)))
            else:
                v = c.payload
                pieces.append((v < 0, _join_factors(abs(v), None, mono)))
        out = []
        for i, (neg, text) in enumerate(pieces):
            if i == 0:
                out.append(("-" if neg else "") + text)
            else:
                out.append(("- " if neg else "+ ") + text)
        return " ".join(out)

    def __repr__(self):
        return self.render()


def _var_name(n: int, i: int) -> str:
    return "xyzw"[i] if n <= 4 else f"x{i + 1}"


def _render_monomial(n: int, exps: Exponents) -> str:
    parts = []
    for i, k in enumerate(exps):
        if k == 1:
            parts.append(_var_name(n, i))
        elif k > 1:
            parts.append(f"{_var_name(n, i)}^{k}")
    return "*".join(parts)


def _join_factors(coef: int, pi_power: Optional[int], mono: str) -> str:
    parts = []
    if coef != 1 or (pi_power in (None, 0) and not mono):
        parts.append(str(coef))
    if pi_power:
        parts.append("u" if pi_power == 1 else f"u^{pi_power}")
    if mono:
        parts.append(mono)
    return "*".join(parts) if parts else "1"


class ResiduePoly:
    """Polynomial over the residue field F_p with integer coefficients in [1, p)."""

    __slots__ = ("p", "n", "terms")

    def __init__(self, p: int, n: int, terms: Dict[Exponents, int]):
        self.p = p
        self.n = n
        self.terms = {tuple(e): c % p for e, c in terms.items() if c % p}

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, point: Sequence[int]) -> int:
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * pow(x, k, self.p) % self.p
            total += v
        return total % self.p

    def partial_derivative(self, var: int) -> "ResiduePoly":
        acc: Dict[Exponents, int] = {}
        for e, c in self.terms.items():
            k = e[var]
            d = c * k % self.p
            if k == 0 or d == 0:
                continue
            exps = e[:var] + (k - 1,) + e[var + 1 :]
            acc[exps] = (acc.get(exps, 0) + d) % self.p
        return ResiduePoly(self.p, self.n, acc)

    def __mul__(self, other: "ResiduePoly") -> "ResiduePoly":
        if self.p != other.p or self.n != other.n:
            raise ValueError("incompatible polynomials")
        acc: Dict[Exponents, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = (acc.get(e, 0) + c1 * c2) % self.p
        return ResiduePoly(self.p, self.n, acc)

    def gradient(self):
        return [self.partial_derivative(i) for i in range(self.n)]

    def is_nonzero_constant(self) -> bool:
        return list(self.terms) == [(0,) * self.n]

    def is_linear_without_constant_term(self) -> bool:
        return bool(self.terms) and all(sum(e) == 1 for e in self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ResiduePoly)
            and (self.p, self.n, self.terms) == (other.p, other.n, other.terms)
        )

    def __hash__(self):
        return hash((self.p, self.n, tuple(sorted(self.terms.items()))))

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex, reverse=True):
            parts.append(_join_factors(self.terms[e], None, _render_monomial(self.n, e)))
        return " + ".join(parts)

    def __repr__(self):
        return self.render()


# -- parser --------------------------------------------------------------------
#
# Grammar:
#   expr   := ['-'] term (('+'|'-') term)*
#   term   := factor ('*' factor)*
#   factor := coeff | var ('^' nat)?
#   coeff  := nat | 'u' ('^' nat)?          (u only in characteristic p)
#   var    := 'x'|'y'|'z'|'w' | 'x' nat
# Whitespace is insignificant.

_NAMED_VARS = {"x": 0, "y": 1, "z": 2, "w": 3}


class _Token:
    __slots__ = ("kind", "value", "pos")

    def __init__(self, kind, value, pos):
        self.kind = kind
        self.value = value
        self.pos = pos


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("nat", int(text[i:j]), i))
            i = j
            continue
        if ch == "u":
            tokens.append(_Token("u", None, i))
            i += 1
            continue
        if ch == "x" and i + 1 < n and text[i + 1].isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            k = int(text[i + 1 : j])
            if k == 0:
                raise PolynomialSyntaxError("variable index must be >= 1", i)
            tokens.append(_Token("var", k - 1, i))
            i = j
            continue
        if ch in _NAMED_VARS:
            tokens.append(_Token("var", _NAMED_VARS[ch], i))
            i += 1
            continue
        if ch in "+-*^":
            tokens.append(_Token(ch, None, i))
            i += 1
            continue
        raise PolynomialSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", None, n))
    return tokens


class _Parser:
    def __init__(self, tokens, ring: LocalRing):
        self.tokens = tokens
        self.i = 0
        self.ring = ring

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise PolynomialSyntaxError(f"expected {kind}, found {tok.kind}", tok.pos)
        return self.advance()

    def parse_expr(self):
        terms = []
        negate = False
        if self.peek().kind == "-":
            self.advance()
            negate = True
        terms.append(self.parse_term(negate))
        while self.peek().kind in ("+", "-"):
            op = self.advance()
            terms.append(self.parse_term(op.kind == "-"))
        self.expect("end")
        return terms

    def parse_term(self, negate: bool):
        coeff = self.ring.one()
        exps: Dict[int, int] = {}
        while True:
            coeff, exps = self.parse_factor(coeff, exps)
            if self.peek().kind == "*":
                self.advance()
            else:
                break
        if negate:
            coeff = -coeff
        return coeff, exps

    def parse_factor(self, coeff, exps):
        tok = self.advance()
        if tok.kind == "nat":
            return coeff * self.ring.from_int(tok.value), exps
        if tok.kind == "u":
            if not self.ring.positive_char:
                raise UniformizerInCharZero("uniformizer symbol u in characteristic 0", tok.pos)
            power = self.parse_power()
            return coeff * self.ring.pi(power), exps
        if tok.kind == "var":
            power = self.parse_power()
            exps = dict(exps)
            exps[tok.value] = exps.get(tok.value, 0) + power
            return coeff, exps
        raise PolynomialSyntaxError(f"expected a coefficient or variable, found {tok.kind}", tok.pos)

    def parse_power(self) -> int:
        if self.peek().kind != "^":
            return 1
        self.advance()
        return self.expect("nat").value


def parse(text: str, ring: LocalRing, n_hint: Optional[int] = None) -> MultiPoly:
    """Parse polynomial text into a :class:`MultiPoly` over ``ring``.

    Variables resolve by name: x, y, z, w are slots 0..3 and x1..xk is slot
    k-1.  The variable count is the highest slot used (at least 1), or
    ``n_hint`` when that is larger.  In characteristic p the symbol ``u``
    denotes the uniformizer inside coefficients.
    """
    terms = _Parser(_tokenize(text), ring).parse_expr()
    max_slot = max((max(e) for _, e in terms if e), default=-1)
    n = max_slot + 1
    if n_hint is not None:
        if n_hint < n:
            raise PolynomialSyntaxError(f"n_hint {n_hint} below used variable count {n}", 0)
        n = n_hint
    n = max(n, 1)
    acc: Dict[Exponents, LocalRingElement] = {}
    for coeff, exps in terms:
        vec = tuple(exps.get(i, 0) for i in range(n))
        prev = acc.get(vec)
        c = coeff if prev is None else prev + coeff
        if c.is_zero():
            acc.pop(vec, None)
        else:
            acc[vec] = c
    return MultiPoly(ring, n, acc)
