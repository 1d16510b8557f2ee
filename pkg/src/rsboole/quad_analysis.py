"""Number theory of quadratic RS functions: v-values, periods, balancedness."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

from . import boolfn
from .boolfn import QuadRsFunction, as_quad
from .errors import InvalidArgument, SignUndetermined, Unsupported
from .gf2poly import (
    Gf2Poly,
    LaurentGf2,
    gf2_factor,
    gf2_gcd,
    laurent_normalize,
    lcm,
    x_order_mod,
    xpow1_valuation,
)


def nu2(m: int) -> int:
    """2-adic valuation of a nonzero integer."""
    if m == 0:
        raise InvalidArgument("2-adic valuation of 0")
    m = abs(m)
    return (m & -m).bit_length() - 1


def _check_n(q, n, allow_short=False):
    if n < 2 * q.J + 1 and not (allow_short and n >= 2 * q.J):
        raise InvalidArgument(f"n={n} is below 2J+1={2 * q.J + 1} for {q}")


def build_A_n(q, n: int, *, allow_short: bool = False) -> Gf2Poly:
    q = as_quad(q)
    _check_n(q, n, allow_short)
    # When 2i = n the orbit of x_0 x_i has n/2 members and x^i enters once.
    exps = []
    for i in q.indices:
        exps += [i] if 2 * i == n else [i, n - i]
    return Gf2Poly.from_exponents(exps)


def build_A(q) -> LaurentGf2:
    q = as_quad(q)
    return laurent_normalize([(e, 1) for i in q.indices for e in (i, -i)])


def build_A_I(q) -> Gf2Poly:
    """x^J * A(x), written out term by term from the index list."""
    q = as_quad(q)
    top = q.J
    exps = [2 * top, 0]
    for a in q.indices[:-1]:
        exps += [top + a, top - a]
    return Gf2Poly.from_exponents(exps)


def v_value(q, n: int, *, allow_short: bool = False) -> int:
    """deg gcd(x^n + 1, A_n(x)) over GF(2)."""
    q = as_quad(q)
    a_n = build_A_n(q, n, allow_short=allow_short)
    if a_n.is_zero():
        # Terms cancelled completely (only possible with allow_short).
        return n
    return gf2_gcd(Gf2Poly.from_exponents([n, 0]), a_n).degree


def v_value_laurent(q, n: int) -> int:
    """Same quantity from the Laurent body: deg gcd(x^n + 1, A(x))."""
    body = build_A(q).body
    xn = Gf2Poly(2) ** n % body if body.degree > 0 else Gf2Poly(0)
    return gf2_gcd(body, xn + 1).degree


@dataclass(frozen=True)
class PeriodReport:
    V: int
    m: int
    t: int
    factor_details: tuple  # ((Gf2Poly, multiplicity, order), ...)
    max_v: int

    def to_dict(self):
        return {
            "V": self.V,
            "m": self.m,
            "t": self.t,
            "factors": [
                {"factor": str(f), "multiplicity": mult, "order": order}
                for f, mult, order in self.factor_details
            ],
            "max_v": self.max_v,
        }


def _prime_factors(n):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def divides_x_k_minus_1(f: Gf2Poly, k: int) -> bool:
    return (Gf2Poly(2) ** k % f) == (Gf2Poly(1) % f)


def period(q, seed: int = 0) -> PeriodReport:
    """Least k with A_I(x) | x^k - 1, via V = 2^t * m.

    m is the lcm of the orders of x modulo the irreducible factors and 2^t
    the least power of two covering every multiplicity.  The result is then
    checked directly against the divisibility definition.
    """
    q = as_quad(q)
    a_i = build_A_I(q)
    fac = gf2_factor(a_i, seed=seed)
    if fac.x_exponent:
        raise AssertionError("A_I has nonzero constant term by construction")
    details = []
    m = 1
    top_mult = 1
    for f, mult in fac.factors:
        order = x_order_mod(f)
        details.append((f, mult, order))
        m = lcm(m, order)
        top_mult = max(top_mult, mult)
    t = (top_mult - 1).bit_length()
    V = (1 << t) * m
    if not divides_x_k_minus_1(a_i, V):
        raise AssertionError(f"A_I does not divide x^{V}-1")
    for p in _prime_factors(V):
        if divides_x_k_minus_1(a_i, V // p):
            raise AssertionError(f"x^{V // p}-1 already divisible; period not minimal")
    return PeriodReport(V, m, t, tuple(details), 2 * q.J)


def period_bruteforce(q, limit: int = 1 << 16) -> int:
    """Independent check: scan k = 1, 2, ... for A_I | x^k - 1."""
    a_i = build_A_I(q)
    r = Gf2Poly(1)
    x = Gf2Poly(2)
    one = Gf2Poly(1) % a_i
    for k in range(1, limit + 1):
        r = (r * x) % a_i
        if r == one:
            return k
    raise InvalidArgument(f"no period up to {limit}")


def _check_pair(i, j):
    if not 1 <= j < i:
        raise InvalidArgument(f"need 1 <= j < i, got i={i}, j={j}")


def binomial_period(i: int, j: int) -> int:
    _check_pair(i, j)
    return 2 * lcm(i + j, i - j)


def gi_period(i: int) -> int:
    """Period of (0,1)+(0,i): 2(i+1)(i-1) for even i, (i+1)(i-1) for odd i."""
    if i < 2:
        raise InvalidArgument("gi_period needs i >= 2")
    base = (i + 1) * (i - 1)
    return 2 * base if i % 2 == 0 else base


def d_Q(q) -> int:
    """(x+1)-adic valuation of the Laurent body of A(x)."""
    q = as_quad(q)
    if len(q) % 2:
        raise Unsupported("d_Q is only defined here for an even number of terms")
    return xpow1_valuation(build_A(q).body)


def d_Q_binomial(i: int, j: int) -> int:
    _check_pair(i, j)
    return (1 << nu2(i + j)) + (1 << nu2(i - j))


def critical_n(i: int, j: int) -> int:
    _check_pair(i, j)
    return 1 << (max(nu2(i + j), nu2(i - j)) + 1)


class BalanceKind(enum.Enum):
    FRIENDLY = "Friendly"
    REFRACTORY = "Refractory"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class BalanceReport:
    kind: BalanceKind
    method: str
    nu: int | None = None
    residue: int | None = None
    modulus: int | None = None

    def balanced_at(self, n: int) -> bool | None:
        """True/False when the report decides n, None when it does not."""
        if self.kind is BalanceKind.REFRACTORY:
            return False
        if self.kind is BalanceKind.FRIENDLY:
            return n % self.modulus == self.residue
        return None

    def to_dict(self):
        return {
            "kind": self.kind.value,
            "nu": self.nu,
            "residue": self.residue,
            "modulus": self.modulus,
            "method": self.method,
        }


def _friendly(nu, method):
    return BalanceReport(BalanceKind.FRIENDLY, method, nu, 1 << (nu + 1), 1 << (nu + 2))


def balance_predict_binomial(i: int, j: int) -> BalanceReport:
    """Friendly iff nu2(i) != nu2(j); then balanced iff n = 2^(nu+1) mod 2^(nu+2)."""
    _check_pair(i, j)
    a, b = nu2(i), nu2(j)
    if a == b:
        return BalanceReport(BalanceKind.REFRACTORY, "binomial")
    return _friendly(min(a, b), "binomial")


def balance_predict_uniqmin(q) -> BalanceReport:
    q = as_quad(q)
    if len(q) % 2:
        raise Unsupported("unique-minimum test needs an even number of terms")
    vals = [nu2(i) for i in q.indices]
    low = min(vals)
    if vals.count(low) == 1:
        return _friendly(low, "unique-minimal-valuation")
    return BalanceReport(BalanceKind.UNKNOWN, "unique-minimal-valuation")


def balance_report(q) -> BalanceReport:
    """Best available closed-form prediction; Unknown when none applies."""
    q = as_quad(q)
    if len(q) == 2:
        j, i = q.indices
        return balance_predict_binomial(i, j)
    if len(q) % 2 == 0:
        return balance_predict_uniqmin(q)
    return BalanceReport(BalanceKind.UNKNOWN, "odd-term-count: brute force")


@dataclass(frozen=True)
class MonomialFacts:
    balanced: bool
    v: int  # from the gcd formula; authoritative
    v_closed_form: int  # gcd(n,2t) if balanced else 2*gcd(n,2t)

    @property
    def closed_form_agrees(self) -> bool:
        return self.v == self.v_closed_form


def monomial_balanced(t: int, n: int) -> bool:
    return n % (1 << (nu2(t) + 1)) != 0


def monomial_facts(t: int, n: int) -> MonomialFacts:
    if t < 1 or n < 2 * t + 1:
        raise InvalidArgument(f"need t >= 1 and n >= 2t+1, got t={t}, n={n}")
    bal = monomial_balanced(t, n)
    g = gcd(n, 2 * t)
    return MonomialFacts(bal, v_value([t], n), g if bal else 2 * g)


class SignOracle(enum.Enum):
    BRUTE_FORCE = "brute"
    MATRIX_TRACE = "matrix"
    AUTO = "auto"


def _walsh_zero_bruteforce(q, n, max_n):
    t = boolfn.truth_table(q, n, max_n=max_n)
    return (1 << n) - 2 * boolfn.weight(t)


def _walsh_zero_matrix(q, n):
    from . import rules_matrix

    return rules_matrix.trace_of_power(rules_matrix.rules_matrix_for(q), n)


def predicted_weight(q, n: int, sign_oracle=SignOracle.AUTO,
                     max_n: int = boolfn.MAX_TABLE_N) -> int:
    """2^(n-1), or 2^(n-1) +- 2^((n+v)/2 - 1) with the sign from an oracle.

    The oracle supplies W(0) = 2^n - 2 wt; only its sign is used, and its
    magnitude must match the plateau value.
    """
    q = as_quad(q)
    sign_oracle = SignOracle(sign_oracle)
    _check_n(q, n)
    half = 1 << (n - 1)
    decided = balance_report(q).balanced_at(n)
    if len(q) == 1:
        decided = monomial_balanced(q.J, n)
    if decided:
        return half
    v = v_value(q, n)
    step = 1 << ((n + v) // 2 - 1)
    candidates = (half - step, half + step)

    oracles = []
    if sign_oracle in (SignOracle.MATRIX_TRACE, SignOracle.AUTO) and len(q) <= 2:
        oracles.append(lambda: _walsh_zero_matrix(q, n))
    if sign_oracle is SignOracle.BRUTE_FORCE or (
            sign_oracle is SignOracle.AUTO and n <= max_n):
        oracles.append(lambda: _walsh_zero_bruteforce(q, n, max_n))
    for oracle in oracles:
        w0 = oracle()
        if decided is None and w0 == 0:
            return half
        if w0 == 2 * step:
            return half - step
        if w0 == -2 * step:
            return half + step
    raise SignUndetermined(candidates)


def affine_class_count_monomial(n: int) -> int:
    """tau(n) - 1, the number of affine classes among (0,t)_n."""
    if n < 3:
        raise InvalidArgument("affine class count needs n >= 3")
    return sum(1 for d in range(1, n + 1) if n % d == 0) - 1


def v_sequence(q, n_start: int, n_stop: int) -> list[int]:
    return [v_value(q, n) for n in range(n_start, n_stop)]


def least_period(seq: list[int]) -> int:
    """Least p with seq[k] == seq[k + p] for all valid k."""
    for p in range(1, len(seq) + 1):
        if all(seq[k] == seq[k + p] for k in range(len(seq) - p)):
            return p
    return len(seq)
