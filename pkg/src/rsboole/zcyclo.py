"""Cyclotomic polynomials over Z and their sqrt(d)-scaled variants.

``split_product`` and ``split_phi_tilde`` look for P in Z[x] with
P(x) P(-x) = +-poly.  Candidates are assembled from high-precision complex
roots, rounded, and accepted only after exact integer multiplication.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from math import gcd

import mpmath

from .errors import InvalidArgument, ResourceLimit
from .intpoly import IntPoly

MAX_CYCLO_N = 200
MAX_SPLIT_DEGREE = 24
MAX_STRUCTURED_DEGREE = 96
_ROUND_TOL = mpmath.mpf("0.25")


def euler_phi(n: int) -> int:
    out = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


def odd_part(n: int) -> int:
    while n % 2 == 0:
        n //= 2
    return n


def is_squarefree(d: int) -> bool:
    m = abs(d)
    p = 2
    while p * p <= m:
        if m % (p * p) == 0:
            return False
        p += 1
    return True


@functools.lru_cache(maxsize=None)
def _cyclotomic(n: int) -> IntPoly:
    poly = IntPoly.monomial(n) - 1
    for m in range(1, n):
        if n % m == 0:
            poly, rem = poly.divmod_monic(_cyclotomic(m))
            if rem.coeffs:
                raise AssertionError(f"Phi_{m} does not divide x^{n}-1")
    return poly


def cyclotomic_Z(n: int, max_n: int = MAX_CYCLO_N) -> IntPoly:
    """Phi_n by dividing x^n - 1 by Phi_m for the proper divisors m of n."""
    if n < 1:
        raise InvalidArgument("cyclotomic index must be positive")
    if n > max_n:
        raise ResourceLimit("max_cyclo_n", n, max_n)
    return _cyclotomic(n)


@dataclass(frozen=True)
class ScaledCycloInput:
    n: int
    d: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidArgument("n must be positive")
        if self.d == 0 or not is_squarefree(self.d):
            raise InvalidArgument(f"d={self.d} is not a nonzero square-free integer")

    @property
    def n_o(self) -> int:
        return odd_part(self.n)

    @property
    def phi(self) -> int:
        return euler_phi(self.n)

    @property
    def discriminant(self) -> int:
        return self.d if self.d % 4 == 1 else 4 * self.d


def phi_tilde(inp: ScaledCycloInput) -> IntPoly:
    """Monic integer polynomial whose roots are sqrt(d) * (suitable roots of unity)."""
    n, d = inp.n, inp.d
    if n % 4 == 0:
        # Phi_n(x) = g(x^2), so d^(phi/2) Phi_n(x / sqrt d) = sum g_k d^(phi/2-k) x^(2k)
        g = cyclotomic_Z(n).even_part()
        half = inp.phi // 2
        out = [0] * (inp.phi + 1)
        for k, c in enumerate(g.coeffs):
            out[2 * k] = c * d ** (half - k)
        return IntPoly(out)
    base = cyclotomic_Z(inp.n_o)
    top = inp.phi
    out = [0] * (2 * base.degree + 1)
    for k, c in enumerate(base.coeffs):
        out[2 * k] = c * d ** (top - k)
    return IntPoly(out)


def reducibility_criterion(inp: ScaledCycloInput) -> bool:
    n, d = inp.n, inp.d
    if d % 4 in (2, 3):
        m = 4 * abs(d)
        return n % m == 0 and (n // m) % 2 == 1
    # d = 1 mod 4
    return n % abs(d) == 0 and n % 4 != 0


# ------------------------------------------------------------ split oracles


def _prec_bits(poly):
    big = max(abs(c) for c in poly.coeffs)
    return 128 + 4 * poly.degree + 2 * big.bit_length()


def _round_poly(roots):
    """Integer polynomial with these roots, or None if not near-integral."""
    c = [mpmath.mpc(1)]
    for r in roots:
        nxt = [mpmath.mpc(0)] * (len(c) + 1)
        for k, v in enumerate(c):
            nxt[k + 1] += v
            nxt[k] -= r * v
        c = nxt
    out = []
    for v in c:
        if abs(v.imag) > _ROUND_TOL:
            return None
        k = int(mpmath.nint(v.real))
        if abs(v.real - k) > _ROUND_TOL:
            return None
        out.append(k)
    return IntPoly(out)


def _verified(P, poly):
    if P is None:
        return False
    prod = P * P.negate_x()
    return prod == poly or prod == -poly


def normalize_split(P: IntPoly) -> IntPoly:
    """Pick between P(x) and (-1)^m P(-x): the monic one whose first
    coefficient that changes sign under x -> -x is positive."""
    m = P.degree
    if P.leading < 0:
        P = -P
    other = P.negate_x()
    if other.leading < 0:
        other = -other
    for k in range(m - 1, -1, -1):
        if (m - k) % 2 and P.coeffs[k]:
            return P if P.coeffs[k] > 0 else other
    return P


def split_product(poly: IntPoly, max_degree: int = MAX_SPLIT_DEGREE) -> IntPoly | None:
    """P with P(x) P(-x) = +-poly, from numerically located roots.

    Roots come from the even part g(y), poly(x) = g(x^2); each root y gives
    the pair +-sqrt(y), and P takes one from each pair.  Real P forces the
    choices at conjugate y's to match, which prunes the search.
    """
    if poly.degree > max_degree:
        raise ResourceLimit("split degree", poly.degree, max_degree)
    if poly.degree < 2 or poly.degree % 2 or not poly.is_even():
        return None
    if abs(poly.leading) != 1 or poly.coeffs[0] == 0:
        raise InvalidArgument("split_product needs a monic polynomial with nonzero constant")
    g = poly.even_part()
    with mpmath.workprec(_prec_bits(poly)):
        ys = mpmath.polyroots(list(reversed(g.coeffs)), maxsteps=400, extraprec=_prec_bits(poly))
        ys = [mpmath.mpc(y) for y in ys]
        eps = mpmath.mpf(2) ** (-_prec_bits(poly) // 3)
        pairs = []  # each entry: list of alternative root tuples for a free bit
        used = [False] * len(ys)
        for a, y in enumerate(ys):
            if used[a]:
                continue
            used[a] = True
            s = mpmath.sqrt(y)
            if abs(y.imag) <= eps * max(1, abs(y)):
                if y.real < 0:
                    # +-i*sqrt|y| are conjugate, so a real P cannot hold one alone.
                    return None
                pairs.append(((s,), (-s,)))
                continue
            b = min((k for k in range(len(ys)) if not used[k]),
                    key=lambda k: abs(ys[k] - mpmath.conj(y)), default=None)
            if b is None:
                return None
            used[b] = True
            pairs.append(((s, mpmath.conj(s)), (-s, -mpmath.conj(s))))
        for mask in range(1 << (len(pairs) - 1)):
            roots = list(pairs[0][0])
            for k, alt in enumerate(pairs[1:]):
                roots.extend(alt[(mask >> k) & 1])
            P = _round_poly(roots)
            if _verified(P, poly):
                return normalize_split(P)
    return None


def _root_exponents(inp):
    """Roots are sqrt(d) * exp(2 pi i e / L) for e in the returned list."""
    if inp.n % 4 == 0:
        L = inp.n
        exps = [e for e in range(L) if gcd(e, L) == 1]
    else:
        L = 2 * inp.n_o
        exps = [e for e in range(L) if gcd(e, inp.n_o) == 1]
    return L, exps


def _square_orbits(inp, L, exps):
    # Squares of units mod lcm(L, 4|d|) fix sqrt(d), so any Galois-stable
    # root set is a union of these orbits.
    M = L * (4 * abs(inp.d)) // gcd(L, 4 * abs(inp.d))
    squares = sorted({(a * a) % M for a in range(1, M) if gcd(a, M) == 1})
    seen = set()
    orbits = []
    for e in exps:
        if e in seen:
            continue
        orb = sorted({(e * s) % L for s in squares})
        seen.update(orb)
        orbits.append(tuple(orb))
    return orbits


def split_phi_tilde(inp: ScaledCycloInput,
                    max_degree: int = MAX_STRUCTURED_DEGREE) -> IntPoly | None:
    """split_product specialised to phi_tilde, using its known roots."""
    poly = phi_tilde(inp)
    if poly.degree > max_degree:
        raise ResourceLimit("structured split degree", poly.degree, max_degree)
    L, exps = _root_exponents(inp)
    if len(exps) != poly.degree:
        raise AssertionError("root count does not match degree")
    orbits = _square_orbits(inp, L, exps)
    index = {o: k for k, o in enumerate(orbits)}
    pairs = []
    done = set()
    for o in orbits:
        if o in done:
            continue
        neg = tuple(sorted((e + L // 2) % L for e in o))
        if neg == o or neg not in index:
            return None
        done.update((o, neg))
        pairs.append((o, neg))
    with mpmath.workprec(_prec_bits(poly)):
        sd = mpmath.sqrt(mpmath.mpf(inp.d))
        root = lambda e: sd * mpmath.expjpi(mpmath.mpf(2 * e) / L)
        for mask in range(1 << (len(pairs) - 1)):
            chosen = list(pairs[0][0])
            for k, (a, b) in enumerate(pairs[1:]):
                chosen.extend(b if (mask >> k) & 1 else a)
            P = _round_poly([root(e) for e in chosen])
            if _verified(P, poly):
                return normalize_split(P)
    return None


def is_irreducible_by_roots(P: IntPoly, max_degree: int = 12) -> bool:
    """No proper nonempty subset of P's roots yields an integer factor."""
    if P.degree > max_degree:
        raise ResourceLimit("irreducibility degree", P.degree, max_degree)
    if P.degree <= 1:
        return P.degree == 1
    with mpmath.workprec(_prec_bits(P)):
        roots = mpmath.polyroots(list(reversed(P.coeffs)), maxsteps=400,
                                 extraprec=_prec_bits(P))
        roots = [mpmath.mpc(r) for r in roots]
        m = len(roots)
        for mask in range(1, (1 << m) - 1):
            # each factor has a complement; testing subsets holding root 0 suffices
            if not mask & 1:
                continue
            F = _round_poly([roots[k] for k in range(m) if (mask >> k) & 1])
            if F is None:
                continue
            q, r = P.divmod_monic(F) if P.is_monic() else (None, IntPoly((1,)))
            if not r.coeffs:
                return False
    return True


@dataclass(frozen=True)
class CriterionRow:
    n: int
    d: int
    criterion: bool
    oracle: bool

    @property
    def agree(self) -> bool:
        return self.criterion == self.oracle


@dataclass(frozen=True)
class CriterionReport:
    rows: tuple

    @property
    def disagreements(self) -> list:
        return [r for r in self.rows if not r.agree]

    def to_csv(self) -> str:
        lines = ["n,d,criterion,oracle,agree"]
        for r in self.rows:
            lines.append(f"{r.n},{r.d},{str(r.criterion).lower()},"
                         f"{str(r.oracle).lower()},{str(r.agree).lower()}")
        return "\n".join(lines) + "\n"


def criterion_vs_oracle(n_max: int, d_set, cross_check_degree: int = 0) -> CriterionReport:
    """Closed-form criterion against the split oracle on a grid.

    With ``cross_check_degree`` > 0, polynomials up to that degree are also
    run through the generic root-finding oracle and must agree with the
    structured one.
    """
    rows = []
    for d in d_set:
        for n in range(1, n_max + 1):
            inp = ScaledCycloInput(n, d)
            P = split_phi_tilde(inp)
            if cross_check_degree and phi_tilde(inp).degree <= cross_check_degree:
                P2 = split_product(phi_tilde(inp), max_degree=cross_check_degree)
                if (P is None) != (P2 is None) or (P is not None and P != P2):
                    raise AssertionError(f"split oracles disagree at n={n}, d={d}")
            rows.append(CriterionRow(n, d, reducibility_criterion(inp), P is not None))
    return CriterionReport(tuple(rows))
