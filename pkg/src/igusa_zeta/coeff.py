"""Exact coefficient rings for the two supported local fields.

The engine works over the ring of integers ``O_K`` of a local field ``K``
with prime residue field ``F_p``:

* characteristic 0: ``K = Q_p``, elements of ``O_K`` are represented by
  arbitrary-precision integers (the subring ``Z``) with the p-adic valuation;
* characteristic p: ``K = F_p((pi))``, elements are polynomials in the
  uniformizer ``pi`` over ``F_p``.  Inputs have finitely many terms and every
  engine operation (translation by lifted points, scaling by pi-powers,
  division by pi-powers) preserves polynomiality, so no truncation is needed.

Both representations are exact; nothing in this package is floating point.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Tuple, Union

from .errors import BudgetExceeded, InsufficientValuation

INFINITY = math.inf

DEFAULT_BUDGET = 10**8


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The residue field F_p (q = p throughout; see package docs)."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def elements(self) -> range:
        return range(self.p)

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def pow(self, a: int, e: int) -> int:
        return pow(a, e, self.p)


def enumerate_points(field: PrimeField, n: int, budget: int = DEFAULT_BUDGET) -> Iterator[Tuple[int, ...]]:
    """Yield the points of F_p^n in lexicographic order.

    Raises BudgetExceeded up front when p^n exceeds ``budget``.
    """
    if field.p**n > budget:
        raise BudgetExceeded(f"{field.p}^{n} points exceed budget {budget}")
    return itertools.product(field.elements(), repeat=n)


# Digit-tuple helpers for the characteristic-p representation.  A value is a
# trimmed tuple (c0, c1, ...) meaning sum c_k pi^k with c_k in [0, p).

def _trim(digits: Tuple[int, ...]) -> Tuple[int, ...]:
    k = len(digits)
    while k and digits[k - 1] == 0:
        k -= 1
    return digits[:k]


def _digit_add(a: Tuple[int, ...], b: Tuple[int, ...], p: int) -> Tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, d in enumerate(b):
        out[i] = (out[i] + d) % p
    return _trim(tuple(out))


def _digit_mul(a: Tuple[int, ...], b: Tuple[int, ...], p: int) -> Tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, da in enumerate(a):
        if da:
            for j, db in enumerate(b):
                out[i + j] += da * db
    return _trim(tuple(c % p for c in out))


class LocalRing:
    """O_K for one of the two supported fields, fixed prime residue field F_p."""

    __slots__ = ("p", "positive_char", "field")

    def __init__(self, p: int, positive_char: bool = False):
        self.field = PrimeField(p)
        self.p = p
        self.positive_char = positive_char

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LocalRing)
            and self.p == other.p
            and self.positive_char == other.positive_char
        )

    def __hash__(self):
        return hash((self.p, self.positive_char))

    def __repr__(self):
        return f"LocalRing(p={self.p}, char={'p' if self.positive_char else 0})"

    def zero(self) -> "LocalRingElement":
        return LocalRingElement(self, () if self.positive_char else 0)

    def one(self) -> "LocalRingElement":
        return LocalRingElement(self, (1,) if self.positive_char else 1)

    def from_int(self, k: int) -> "LocalRingElement":
        """Image of the rational integer k in the ring."""
        if self.positive_char:
            return LocalRingElement(self, _trim((k % self.p,)))
        return LocalRingElement(self, k)

    def pi(self, k: int = 1) -> "LocalRingElement":
        """pi^k as a ring element (k >= 0)."""
        if k < 0:
            raise ValueError("negative uniformizer power")
        if self.positive_char:
            return LocalRingElement(self, (0,) * k + (1,))
        return LocalRingElement(self, self.p**k)

    def from_digits(self, digits) -> "LocalRingElement":
        """Characteristic-p element from pi-adic digits (c0, c1, ...)."""
        if not self.positive_char:
            raise ValueError("digit construction only in characteristic p")
        return LocalRingElement(self, _trim(tuple(d % self.p for d in digits)))


class LocalRingElement:
    """An element of O_K: an integer (char 0) or a polynomial in pi (char p)."""

    __slots__ = ("ring", "payload")

    def __init__(self, ring: LocalRing, payload: Union[int, Tuple[int, ...]]):
        self.ring = ring
        self.payload = payload

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.payload == 0 if not self.ring.positive_char else not self.payload

    def valuation(self) -> Union[int, float]:
        """Exact pi-adic order; INFINITY for zero."""
        if self.is_zero():
            return INFINITY
        if self.ring.positive_char:
            digits = self.payload
            k = 0
            while digits[k] == 0:
                k += 1
            return k
        n, p, v = abs(self.payload), self.ring.p, 0
        while n % p == 0:
            n //= p
            v += 1
        return v

    def reduce(self) -> int:
        """Image in the residue field F_p, as an integer in [0, p)."""
        if self.ring.positive_char:
            return self.payload[0] if self.payload else 0
        return self.payload % self.ring.p

    def divide_by_uniformizer(self, k: int) -> "LocalRingElement":
        """The exact quotient by pi^k; requires valuation >= k."""
        if k == 0 or self.is_zero():
            return self
        if self.ring.positive_char:
            if any(d != 0 for d in self.payload[:k]):
                raise InsufficientValuation(f"valuation < {k}")
            return LocalRingElement(self.ring, self.payload[k:])
        q = self.ring.p**k
        if self.payload % q != 0:
            raise InsufficientValuation(f"valuation < {k}")
        return LocalRingElement(self.ring, self.payload // q)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "LocalRingElement":
        if isinstance(other, LocalRingElement):
            if other.ring != self.ring:
                raise ValueError("mixed rings")
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.ring.positive_char:
            return LocalRingElement(self.ring, _digit_add(self.payload, other.payload, self.ring.p))
        return LocalRingElement(self.ring, self.payload + other.payload)

    __radd__ = __add__

    def __neg__(self):
        if self.ring.positive_char:
            return LocalRingElement(self.ring, tuple((-d) % self.ring.p for d in self.payload))
        return LocalRingElement(self.ring, -self.payload)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.ring.positive_char:
            return LocalRingElement(self.ring, _digit_mul(self.payload, other.payload, self.ring.p))
        return LocalRingElement(self.ring, self.payload * other.payload)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring.from_int(other)
        return (
            isinstance(other, LocalRingElement)
            and self.ring == other.ring
            and self.payload == other.payload
        )

    def __hash__(self):
        return hash((self.ring, self.payload))

    def render(self) -> str:
        if not self.ring.positive_char:
            return str(self.payload)
        if self.is_zero():
            return "0"
        parts = []
        for k, d in enumerate(self.payload):
            if d == 0:
                continue
            if k == 0:
                parts.append(str(d))
            else:
                u = "u" if k == 1 else f"u^{k}"
                parts.append(u if d == 1 else f"{d}*{u}")
        return " + ".join(parts)

    def __repr__(self):
        return self.render()

    def to_json(self):
        """Integer in char 0, digit list in char p."""
        return list(self.payload) if self.ring.positive_char else self.payload


def valuation(x: LocalRingElement) -> Union[int, float]:
    return x.valuation()


def divide_by_uniformizer(x: LocalRingElement, k: int) -> LocalRingElement:
    return x.divide_by_uniformizer(k)


class Lifting:
    """A fixed set of representatives of F_p inside O_K.

    The canonical choice is {0, ..., p-1} in characteristic 0 and the
    constant polynomials in characteristic p.  Any bijective table of
    representatives is accepted; the computed zeta function cannot depend on
    the choice (it is an integral), which the test suite verifies.
    """

    def __init__(self, ring: LocalRing, table: Optional[Mapping[int, LocalRingElement]] = None):
        self.ring = ring
        if table is None:
            table = {a: ring.from_int(a) for a in range(ring.p)}
        else:
            table = dict(table)
            if sorted(table) != list(range(ring.p)):
                raise ValueError("lifting table must cover F_p exactly")
            for a, x in table.items():
                if x.ring != ring or x.reduce() != a:
                    raise ValueError(f"table entry for {a} does not reduce to {a}")
        self.table = table

    def __getitem__(self, a: int) -> LocalRingElement:
        return self.table[a % self.ring.p]

    def lift_point(self, point: Tuple[int, ...]) -> Tuple[LocalRingElement, ...]:
        return tuple(self[a] for a in point)
