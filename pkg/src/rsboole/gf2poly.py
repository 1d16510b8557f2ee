"""Polynomials over GF(2), packed into Python integers.

Bit k of ``Gf2Poly.bits`` is the coefficient of x^k, so addition is XOR and
the zero polynomial is ``bits == 0``.  Values are immutable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd as int_gcd
from typing import Iterable

from ._mersenne import MERSENNE_FACTORS
from .errors import InvalidArgument, ResourceLimit

MAX_DEGREE = 1 << 20


def _check_cap(bits):
    if bits.bit_length() > MAX_DEGREE + 1:
        raise ResourceLimit("gf2poly degree", bits.bit_length() - 1, MAX_DEGREE)
    return bits


def _clmul(a, b):
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    while b:
        low = b & -b
        r ^= a << (low.bit_length() - 1)
        b ^= low
    return r


def _divmod(a, b):
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    blen = b.bit_length()
    q = 0
    while a.bit_length() >= blen:
        s = a.bit_length() - blen
        a ^= b << s
        q |= 1 << s
    return q, a


def _mod(a, b):
    blen = b.bit_length()
    while a.bit_length() >= blen:
        a ^= b << (a.bit_length() - blen)
    return a


def _gcd(a, b):
    while b:
        a, b = b, _mod(a, b)
    return a


def _mulmod(a, b, m):
    return _mod(_clmul(a, b), m)


def _powmod(a, e, m):
    r = 1
    a = _mod(a, m)
    while e:
        if e & 1:
            r = _mulmod(r, a, m)
        e >>= 1
        if e:
            a = _mulmod(a, a, m)
    return _mod(r, m)


def _square(a):
    # Frobenius on GF(2)[x]: spread bits to even positions.
    r = 0
    k = 0
    while a:
        if a & 1:
            r |= 1 << (2 * k)
        a >>= 1
        k += 1
    return r


def _sqrt(a):
    # Inverse of _square; caller guarantees a is a perfect square.
    r = 0
    k = 0
    while a:
        if a & 1:
            r |= 1 << k
        a >>= 2
        k += 1
    return r


def _derivative(a):
    # d/dx keeps odd-degree terms, each dropping one degree.
    return (a >> 1) & int("01" * ((a.bit_length() + 1) // 2 + 1), 2)


class Gf2Poly:
    """Dense polynomial over GF(2)."""

    __slots__ = ("_bits",)

    def __init__(self, bits=0):
        if isinstance(bits, Gf2Poly):
            bits = bits.bits
        if bits < 0:
            raise InvalidArgument("coefficient bit vector must be non-negative")
        object.__setattr__(self, "_bits", _check_cap(int(bits)))

    def __setattr__(self, name, value):
        raise AttributeError("Gf2Poly is immutable")

    @property
    def bits(self) -> int:
        return self._bits

    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> Gf2Poly:
        bits = 0
        for e in exponents:
            if e < 0:
                raise InvalidArgument(f"negative exponent {e}")
            bits ^= 1 << e
        return cls(bits)

    @classmethod
    def x_power(cls, k: int) -> Gf2Poly:
        return cls(1 << k)

    @classmethod
    def parse(cls, text: str) -> Gf2Poly:
        """Parse ``"x^14+x^11+x+1"``; repeated terms cancel mod 2."""
        text = text.replace(" ", "")
        if text in ("", "0"):
            return cls(0)
        exps = []
        for term in text.split("+"):
            if term == "1":
                exps.append(0)
            elif term == "x":
                exps.append(1)
            elif term.startswith("x^") and term[2:].isdigit():
                exps.append(int(term[2:]))
            else:
                raise InvalidArgument(f"cannot parse polynomial term {term!r}")
        return cls.from_exponents(exps)

    @classmethod
    def from_hex(cls, text: str) -> Gf2Poly:
        text = text.strip().lower()
        if text.startswith("0x"):
            text = text[2:]
        try:
            return cls(int(text, 16))
        except ValueError:
            raise InvalidArgument(f"bad hex polynomial {text!r}") from None

    def to_hex(self) -> str:
        return format(self._bits, "x")

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return self._bits.bit_length() - 1

    def is_zero(self) -> bool:
        return self._bits == 0

    def exponents(self) -> list[int]:
        """Exponents with nonzero coefficient, in decreasing order."""
        b = self._bits
        return [k for k in range(b.bit_length() - 1, -1, -1) if (b >> k) & 1]

    def coefficient(self, k: int) -> int:
        return (self._bits >> k) & 1

    def derivative(self) -> Gf2Poly:
        return Gf2Poly(_derivative(self._bits))

    def __add__(self, other):
        return Gf2Poly(self._bits ^ _bits_of(other))

    __sub__ = __add__
    __radd__ = __add__
    __rsub__ = __add__

    def __mul__(self, other):
        return Gf2Poly(_clmul(self._bits, _bits_of(other)))

    __rmul__ = __mul__

    def __divmod__(self, other):
        q, r = _divmod(self._bits, _bits_of(other))
        return Gf2Poly(q), Gf2Poly(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        b = _bits_of(other)
        if b == 0:
            raise ZeroDivisionError("division by the zero polynomial")
        return Gf2Poly(_mod(self._bits, b))

    def __pow__(self, e, mod=None):
        if e < 0:
            raise InvalidArgument("negative power")
        if mod is not None:
            return Gf2Poly(_powmod(self._bits, e, _bits_of(mod)))
        r, a = 1, self._bits
        while e:
            if e & 1:
                r = _clmul(r, a)
            e >>= 1
            if e:
                a = _check_cap(_clmul(a, a))
        return Gf2Poly(r)

    def divides(self, other) -> bool:
        if self._bits == 0:
            return _bits_of(other) == 0
        return _mod(_bits_of(other), self._bits) == 0

    def __eq__(self, other):
        if isinstance(other, Gf2Poly):
            return self._bits == other._bits
        if isinstance(other, int):
            return self._bits == other
        return NotImplemented

    def __hash__(self):
        return hash(("Gf2Poly", self._bits))

    def sort_key(self):
        return (self.degree, self._bits)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __bool__(self):
        return self._bits != 0

    def __str__(self):
        if not self._bits:
            return "0"
        parts = []
        for k in self.exponents():
            parts.append("1" if k == 0 else "x" if k == 1 else f"x^{k}")
        return "+".join(parts)

    def __repr__(self):
        return f"Gf2Poly({self})"


def _bits_of(p):
    if isinstance(p, Gf2Poly):
        return p.bits
    if isinstance(p, int):
        return p
    raise TypeError(f"expected Gf2Poly or int, got {type(p).__name__}")


ONE = Gf2Poly(1)
X = Gf2Poly(2)


@dataclass(frozen=True)
class LaurentGf2:
    """A Laurent polynomial x^shift * body with body(0) = 1 (or body = 0)."""

    shift: int
    body: Gf2Poly

    def __post_init__(self):
        if self.body.bits and not self.body.bits & 1:
            raise InvalidArgument("Laurent body must have nonzero constant term")

    def equivalent(self, other: LaurentGf2) -> bool:
        """Equality up to multiplication by a power of x."""
        return self.body == other.body


@dataclass(frozen=True)
class Gf2Factorization:
    factors: tuple  # ((Gf2Poly, multiplicity), ...) sorted by (degree, bits)
    x_exponent: int = 0

    def expand(self) -> Gf2Poly:
        r = Gf2Poly(1 << self.x_exponent)
        for f, m in self.factors:
            r = r * f**m
        return r

    def __str__(self):
        parts = []
        if self.x_exponent:
            parts.append("x" if self.x_exponent == 1 else f"x^{self.x_exponent}")
        for f, m in self.factors:
            s = f"({f})"
            parts.append(s if m == 1 else f"{s}^{m}")
        return "*".join(parts) or "1"


def gf2_gcd(a, b) -> Gf2Poly:
    a, b = _bits_of(a), _bits_of(b)
    if a == 0 and b == 0:
        raise InvalidArgument("gcd(0, 0) is undefined")
    return Gf2Poly(_gcd(a, b))


def laurent_normalize(terms: Iterable[tuple[int, int]]) -> LaurentGf2:
    """Sum the present terms x^e mod 2 and factor out the lowest power of x."""
    parity = {}
    for e, present in terms:
        if present & 1:
            parity[e] = parity.get(e, 0) ^ 1
    live = [e for e, p in parity.items() if p]
    if not live:
        return LaurentGf2(0, Gf2Poly(0))
    low = min(live)
    return LaurentGf2(low, Gf2Poly.from_exponents(e - low for e in live))


def xpow1_valuation(p) -> int:
    """Multiplicity of (x+1) as a factor of p."""
    b = _bits_of(p)
    if b == 0:
        raise InvalidArgument("valuation of the zero polynomial")
    v = 0
    while True:
        q, r = _divmod(b, 0b11)
        if r:
            return v
        b = q
        v += 1


# ---------------------------------------------------------------- factoring


def _squarefree_parts(f):
    """Yun-style squarefree decomposition in characteristic 2.

    Returns a list of (squarefree factor, multiplicity) with f = prod g^m.
    """
    out = []
    mult = 1
    while f != 1:
        d = _derivative(f)
        if d == 0:
            f = _sqrt(f)
            mult *= 2
            continue
        c = _gcd(f, d)
        w = _divmod(f, c)[0]
        i = 1
        while w != 1:
            y = _gcd(w, c)
            z = _divmod(w, y)[0]
            if z != 1:
                out.append((z, i * mult))
            i += 1
            w = y
            c = _divmod(c, y)[0]
        if c == 1:
            break
        # What remains is a perfect square.
        f = _sqrt(c)
        mult *= 2
    return out


def _distinct_degree(f):
    out = []
    h = 0b10
    d = 0
    while f.bit_length() - 1 >= 2 * (d + 1):
        d += 1
        h = _mulmod(h, h, f)
        g = _gcd(h ^ 0b10, f)
        if g != 1:
            out.append((g, d))
            f = _divmod(f, g)[0]
            h = _mod(h, f)
    if f != 1:
        out.append((f, f.bit_length() - 1))
    return out


def _equal_degree(f, d, rng):
    n = f.bit_length() - 1
    if n == d:
        return [f]
    while True:
        a = rng.getrandbits(n) or 0b10
        t = a
        s = a
        for _ in range(d - 1):
            s = _mulmod(s, s, f)
            t ^= s
        g = _gcd(f, t)
        if g != 1 and g != f:
            return _equal_degree(g, d, rng) + _equal_degree(_divmod(f, g)[0], d, rng)


def gf2_factor(p, seed: int = 0) -> Gf2Factorization:
    """Complete factorization into irreducibles over GF(2).

    Squarefree decomposition, then distinct-degree and equal-degree
    splitting; the splitting RNG is seeded so the output is deterministic.
    """
    f = _bits_of(p)
    if f == 0:
        raise InvalidArgument("cannot factor the zero polynomial")
    xexp = (f & -f).bit_length() - 1
    f >>= xexp
    rng = random.Random(seed)
    counts = {}
    for sqf, m in _squarefree_parts(f):
        for g, d in _distinct_degree(sqf):
            for h in _equal_degree(g, d, rng):
                counts[h] = counts.get(h, 0) + m
    factors = tuple(sorted(((Gf2Poly(h), m) for h, m in counts.items()),
                           key=lambda fm: fm[0].sort_key()))
    return Gf2Factorization(factors, xexp)


def is_irreducible(p) -> bool:
    """Rabin's irreducibility test."""
    f = _bits_of(p)
    n = f.bit_length() - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if not f & 1:
        return False
    if _powmod(0b10, 1 << n, f) != 0b10:
        return False
    for q in _prime_divisors(n):
        h = _powmod(0b10, 1 << (n // q), f)
        if _gcd(h ^ 0b10, f) != 1:
            return False
    return True


def _prime_divisors(n):
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def x_order_mod(f) -> int:
    """Least k >= 1 with x^k = 1 modulo the irreducible f."""
    b = _bits_of(f)
    if b == 0b10:
        raise InvalidArgument("x has no multiplicative order modulo x")
    if not is_irreducible(b):
        raise InvalidArgument(f"{Gf2Poly(b)} is not irreducible")
    d = b.bit_length() - 1
    if d not in MERSENNE_FACTORS:
        raise ResourceLimit("x_order_mod degree", d, max(MERSENNE_FACTORS))
    k = (1 << d) - 1
    for q in sorted(set(MERSENNE_FACTORS[d])):
        while k % q == 0 and _powmod(0b10, k // q, b) == 1:
            k //= q
    return k


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // int_gcd(out, v)
    return out
