"""Dense univariate polynomials with Python-int coefficients."""

from __future__ import annotations

import json

from .errors import InvalidArgument


class IntPoly:
    """Immutable; ``coeffs[k]`` is the coefficient of x^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [int(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPoly:
        return cls([0] * k + [c])

    @classmethod
    def from_descending(cls, coeffs) -> IntPoly:
        return cls(list(coeffs)[::-1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.leading == 1

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        r = IntPoly((1,))
        a = self
        while e:
            if e & 1:
                r = r * a
            e >>= 1
            if e:
                a = a * a
        return r

    def divmod_monic(self, d: IntPoly):
        """Division by a monic divisor, staying in Z[x]."""
        if not d.is_monic():
            raise InvalidArgument("divisor must be monic")
        rem = list(self.coeffs)
        q = [0] * max(len(rem) - d.degree, 0)
        for k in range(len(rem) - 1, d.degree - 1, -1):
            c = rem[k]
            if c:
                q[k - d.degree] = c
                for j, dc in enumerate(d.coeffs):
                    rem[k - d.degree + j] -= c * dc
        return IntPoly(q), IntPoly(rem)

    def negate_x(self) -> IntPoly:
        """P(-x)."""
        return IntPoly(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs))

    def is_even(self) -> bool:
        return all(c == 0 for c in self.coeffs[1::2])

    def even_part(self) -> IntPoly:
        """g with P(x) = g(x^2); caller checks is_even()."""
        return IntPoly(self.coeffs[::2])

    def substitute_x2(self) -> IntPoly:
        """P(x^2)."""
        out = []
        for c in self.coeffs:
            out += [c, 0]
        return IntPoly(out)

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPoly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("IntPoly", self.coeffs))

    def to_json(self) -> str:
        """Ascending coefficient list as decimal strings."""
        return json.dumps([str(c) for c in self.coeffs])

    @classmethod
    def from_json(cls, text: str) -> IntPoly:
        return cls(int(c) for c in json.loads(text))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                xs = "x" if k == 1 else f"x^{k}"
                body = xs if mag == 1 else f"{mag}*{xs}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"IntPoly({self})"


def _as_poly(v):
    if isinstance(v, IntPoly):
        return v
    if isinstance(v, int):
        return IntPoly((v,))
    raise TypeError(f"cannot combine IntPoly with {type(v).__name__}")
