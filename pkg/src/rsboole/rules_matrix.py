"""Rules matrices of monomial and binomial quadratic RS functions.

Everything is exact: matrices are numpy arrays of Python ints (dtype=object)
and spectral statements are checked as polynomial or matrix-power identities.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd

import numpy as np

from . import boolfn
from .boolfn import as_quad
from .errors import InvalidArgument, ResourceLimit, Unsupported
from .intpoly import IntPoly

MAX_RULES_I = 10
MAX_CHARPOLY_SIZE = 64

H0 = np.array([[1, 1], [1, -1]], dtype=object)
H1 = np.array([[1, 1], [-1, 1]], dtype=object)

# The 8x8 Hadamard matrix whose characteristic polynomial is
# (x^2-4x+8)(x^2+4x+8)(x^4-12x^2+64); rows as printed in the source example.
SYLVESTER_EXAMPLE = np.array([
    [1, -1, 1, -1, 1, -1, 1, -1],
    [1, 1, 1, 1, 1, 1, 1, 1],
    [1, -1, -1, 1, 1, -1, -1, 1],
    [1, 1, 1, 1, -1, -1, -1, -1],
    [1, -1, 1, -1, -1, 1, -1, 1],
    [1, 1, -1, -1, -1, -1, 1, 1],
    [1, -1, -1, 1, -1, 1, 1, -1],
    [1, 1, -1, -1, 1, 1, -1, -1],
], dtype=object)


def as_int_matrix(M) -> np.ndarray:
    a = np.array(M, dtype=object)
    if a.ndim != 2:
        raise InvalidArgument("expected a 2-d matrix")
    return np.vectorize(int, otypes=[object])(a) if a.size else a


def identity(size: int) -> np.ndarray:
    out = np.zeros((size, size), dtype=object)
    for k in range(size):
        out[k, k] = 1
    return out


def pad_columns(M, k: int) -> np.ndarray:
    """Append k zero columns after every column."""
    if k < 0:
        raise InvalidArgument("pad width must be non-negative")
    M = as_int_matrix(M)
    rows, cols = M.shape
    out = np.zeros((rows, cols * (k + 1)), dtype=object)
    out[:, :: k + 1] = M
    return out


def rotate_rows(M, k: int) -> np.ndarray:
    """Rotate every row right by k places (left for negative k)."""
    M = as_int_matrix(M)
    return np.roll(M, k, axis=1)


def _check_i(i):
    if i < 1:
        raise InvalidArgument("matrix index i must be >= 1")
    if i > MAX_RULES_I:
        raise ResourceLimit("max_rules_i", i, MAX_RULES_I)


def _stack(i, choose):
    blocks = 1 << (i - 1)
    pad = blocks - 1
    rows = [rotate_rows(pad_columns(choose(r), pad), r) for r in range(blocks)]
    return np.vstack(rows)


def build_R_mono(i: int) -> np.ndarray:
    """R(i), the 2^i x 2^i rules matrix of (0,i)."""
    _check_i(i)
    return _stack(i, lambda r: H0)


def build_R_binom(i: int, j: int) -> np.ndarray:
    """R(i,j) for (0,j)+(0,i): block r uses H1 iff floor(r / 2^(j-1)) is odd."""
    if not 1 <= j < i:
        raise InvalidArgument(f"need 1 <= j < i, got i={i}, j={j}")
    _check_i(i)
    batch = 1 << (j - 1)
    return _stack(i, lambda r: H1 if (r // batch) % 2 else H0)


def rules_matrix_for(q) -> np.ndarray:
    q = as_quad(q)
    if len(q) == 1:
        return build_R_mono(q.J)
    if len(q) == 2:
        j, i = q.indices
        return build_R_binom(i, j)
    raise Unsupported(f"no explicit rules matrix for {len(q)}-term functions")


def mat_pow(M, e: int) -> np.ndarray:
    M = as_int_matrix(M)
    if e < 0:
        raise InvalidArgument("negative matrix power")
    result = identity(M.shape[0])
    base = M
    while e:
        if e & 1:
            result = result @ base
        e >>= 1
        if e:
            base = base @ base
    return result


def mat_pow_naive(M, e: int) -> np.ndarray:
    """Repeated multiplication; an independent path for mat_pow."""
    M = as_int_matrix(M)
    result = identity(M.shape[0])
    for _ in range(e):
        result = result @ M
    return result


def trace_of_power(M, n: int) -> int:
    return int(np.trace(mat_pow(M, n)))


def is_hadamard(M) -> bool:
    M = as_int_matrix(M)
    rows, cols = M.shape
    if rows != cols:
        return False
    if not all(v in (1, -1) for v in M.flat):
        return False
    return bool(np.array_equal(M @ M.T, rows * identity(rows)))


def char_poly(M, max_size: int = MAX_CHARPOLY_SIZE) -> IntPoly:
    """det(xI - M) by Berkowitz's division-free algorithm."""
    A = as_int_matrix(M)
    n, cols = A.shape
    if n != cols:
        raise InvalidArgument("characteristic polynomial needs a square matrix")
    if n > max_size:
        raise ResourceLimit("max_charpoly_size", n, max_size)
    # coefficients stored highest degree first
    C = [1]
    for k in range(n):
        a = A[k, k]
        row = A[k, :k]
        col = A[:k, k]
        S = A[:k, :k]
        T = [1, -a]
        v = col
        for _ in range(k):
            T.append(-int(np.dot(row, v)))
            v = S @ v
        # Toeplitz (k+2) x (k+1) lower-triangular with first column T, times C
        new = [0] * (k + 2)
        for r in range(k + 2):
            s = 0
            for c in range(min(r + 1, k + 1)):
                s += T[r - c] * C[c]
            new[r] = s
        C = new
    return IntPoly.from_descending(C)


@dataclass(frozen=True)
class OrderVerdict:
    K_claim: int
    satisfies: bool
    minimal: bool
    least_even_K: int | None  # least even divisor of K_claim that works, if any

    def to_dict(self):
        return {"K_claim": self.K_claim, "satisfies": self.satisfies,
                "minimal": self.minimal, "least_even_K": self.least_even_K}


def _is_scaled_identity(P, K):
    return bool(np.array_equal(P, (1 << (K // 2)) * identity(P.shape[0])))


def scaled_order_check(M, K_claim: int) -> OrderVerdict:
    """Does M^K = 2^(K/2) I hold at K_claim, and at no smaller even divisor?"""
    if K_claim <= 0 or K_claim % 2:
        raise InvalidArgument("claimed order must be a positive even integer")
    M = as_int_matrix(M)
    satisfies = _is_scaled_identity(mat_pow(M, K_claim), K_claim)
    working = [d for d in range(2, K_claim + 1, 2)
               if K_claim % d == 0 and _is_scaled_identity(mat_pow(M, d), d)]
    least = working[0] if working else None
    minimal = satisfies and least == K_claim
    return OrderVerdict(K_claim, satisfies, minimal, least)


def conjectured_order(i: int, j: int) -> int:
    """2 * lcm(4, i - j, i + j)."""
    a = 4
    for b in (i - j, i + j):
        a = a * b // gcd(a, b)
    return 2 * a


@dataclass(frozen=True)
class EccRow:
    n: int
    trace: int
    walsh_zero: int  # 2^n - 2 wt, by brute force

    @property
    def equal(self) -> bool:
        return self.trace == self.walsh_zero


@dataclass(frozen=True)
class EccReport:
    terms: tuple
    proven: bool  # monomials: proven instance; binomials: conjecture check
    rows: tuple

    @property
    def all_equal(self) -> bool:
        return all(r.equal for r in self.rows)

    def to_dict(self):
        return {
            "terms": list(self.terms),
            "status": "proven-instance" if self.proven else "conjecture-check",
            "all_equal": self.all_equal,
            "rows": [{"n": r.n, "trace": str(r.trace), "walsh_zero": str(r.walsh_zero),
                      "equal": r.equal} for r in self.rows],
        }


def ecc_trace_check(q, n_range, max_n: int = boolfn.MAX_TABLE_N) -> EccReport:
    """Compare trace(R^n) with 2^n - 2 wt(Q_n) for each n."""
    q = as_quad(q)
    R = rules_matrix_for(q)
    rows = []
    P = None
    last = None
    for n in sorted(n_range):
        if n > max_n:
            raise ResourceLimit("max_table_n", n, max_n)
        P = mat_pow(R, n) if P is None else P @ mat_pow(R, n - last)
        last = n
        t = boolfn.truth_table(q, n, max_n=max_n)
        rows.append(EccRow(n, int(np.trace(P)), (1 << n) - 2 * boolfn.weight(t)))
    return EccReport(q.indices, len(q) == 1, tuple(rows))


def monomial_min_poly(t: int) -> IntPoly:
    """(x - 2)(x^(2t) - 2^t)."""
    return IntPoly((-2, 1)) * (IntPoly.monomial(2 * t) - (1 << t))


def weight_recurrence_check(q, charpoly: IntPoly, n_range,
                            max_n: int = boolfn.MAX_TABLE_N) -> bool:
    """Does wt(Q_n) satisfy the recurrence with this characteristic polynomial
    for every window inside n_range?"""
    q = as_quad(q)
    ns = sorted(n_range)
    deg = charpoly.degree
    if deg < 1 or not charpoly.is_monic():
        raise InvalidArgument("recurrence polynomial must be monic of degree >= 1")
    if not ns or ns != list(range(ns[0], ns[-1] + 1)):
        raise InvalidArgument("n_range must be a nonempty run of consecutive integers")
    if len(ns) <= deg:
        raise InvalidArgument(f"range of {len(ns)} values too short for degree {deg}")
    w = [boolfn.weight(boolfn.truth_table(q, n, max_n=max_n)) for n in ns]
    c = charpoly.coeffs
    for s in range(len(w) - deg):
        if sum(c[k] * w[s + k] for k in range(deg + 1)) != 0:
            return False
    return True


def matrix_to_json(M) -> str:
    M = as_int_matrix(M)
    return json.dumps([[str(v) for v in row] for row in M])


def matrix_from_json(text: str) -> np.ndarray:
    return as_int_matrix([[int(v) for v in row] for row in json.loads(text)])


def determinant(M) -> int:
    """(-1)^size * charpoly(0)."""
    M = as_int_matrix(M)
    cp = char_poly(M, max_size=max(MAX_CHARPOLY_SIZE, M.shape[0]))
    c0 = cp.coeffs[0] if cp.coeffs else 0
    return -c0 if M.shape[0] % 2 else c0
