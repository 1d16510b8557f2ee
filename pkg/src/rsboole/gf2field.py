"""Explicit arithmetic in GF(2^n) in a polynomial basis.

Elements are Python ints below 2^n (bit k = coefficient of the basis
element x^k).  Full-field scans are vectorized with numpy over uint64.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from .boolfn import BalanceClass, as_quad, classify_balance, classify_weight, truth_table
from .errors import InconsistencyError, InvalidArgument, ResourceLimit
from .gf2poly import Gf2Poly, _clmul, _mod, is_irreducible

MAX_FIELD_N = 24
MAX_SCAN_BITS = 24
_SCAN_CHUNK = 1 << 16


@functools.lru_cache(maxsize=None)
def least_irreducible(n: int) -> Gf2Poly:
    """Lexicographically least (as an integer) irreducible of degree n."""
    if n == 1:
        return Gf2Poly(0b10)
    cand = (1 << n) | 1
    while not is_irreducible(cand):
        cand += 2
    return Gf2Poly(cand)


@dataclass(frozen=True)
class FieldF2n:
    n: int
    modulus: Gf2Poly
    _trace_mask: int = field(default=0, repr=False, compare=False)

    def __post_init__(self):
        if self.modulus.degree != self.n or not is_irreducible(self.modulus):
            raise InvalidArgument(f"{self.modulus} is not an irreducible of degree {self.n}")
        mask = 0
        for k in range(self.n):
            if self._trace_slow(1 << k):
                mask |= 1 << k
        object.__setattr__(self, "_trace_mask", mask)

    @property
    def order(self) -> int:
        return 1 << self.n

    def describe(self) -> dict:
        return {"n": self.n, "modulus": str(self.modulus), "modulus_hex": self.modulus.to_hex()}

    def mul(self, a: int, b: int) -> int:
        return _mod(_clmul(a, b), self.modulus.bits)

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, self.order - 2)

    def frobenius(self, a: int, times: int = 1) -> int:
        for _ in range(times % self.n if self.n else 0):
            a = self.mul(a, a)
        return a

    def _trace_slow(self, a: int) -> int:
        s, y = 0, a
        for _ in range(self.n):
            s ^= y
            y = self.mul(y, y)
        if s > 1:
            raise InconsistencyError(f"trace landed outside GF(2): {s}")
        return s

    def trace(self, a: int) -> int:
        return (a & self._trace_mask).bit_count() & 1

    # vectorized helpers over uint64 arrays

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        top = np.uint64(1 << self.n)
        red = np.uint64(self.modulus.bits)
        one = np.uint64(1)
        a = a.copy()
        r = np.zeros_like(a)
        for k in range(self.n):
            r ^= np.where((b >> np.uint64(k)) & one, a, np.uint64(0))
            a <<= one
            a ^= np.where(a & top, red, np.uint64(0))
        return r

    def vtrace(self, a: np.ndarray) -> np.ndarray:
        return (np.bitwise_count(a & np.uint64(self._trace_mask)) & 1).astype(np.uint8)

    def to_hex(self, a: int) -> str:
        return format(a, "x")

    def from_hex(self, text: str) -> int:
        a = int(text, 16)
        if a >> self.n:
            raise InvalidArgument(f"{text} is not an element of GF(2^{self.n})")
        return a


def field_create(n: int, modulus=None, max_n: int = MAX_FIELD_N) -> FieldF2n:
    if n < 1:
        raise InvalidArgument("extension degree must be positive")
    if n > max_n:
        raise ResourceLimit("max_field_n", n, max_n)
    if modulus is None:
        modulus = least_irreducible(n)
    elif isinstance(modulus, str):
        modulus = Gf2Poly.parse(modulus)
    else:
        modulus = Gf2Poly(modulus)
    return FieldF2n(n, modulus)


def trace(F: FieldF2n, a: int) -> int:
    return F.trace(a)


def trace_form_eval(F: FieldF2n, q, a: int) -> int:
    """Q'(a) = sum over i of Tr(a^(2^i + 1))."""
    q = as_quad(q)
    return F.trace(_trace_form_arg(F, q, a))


def _trace_form_arg(F, q, a):
    # Tr is additive, so sum the arguments first.
    s = 0
    for i in q.indices:
        s ^= F.mul(F.frobenius(a, i), a)
    return s


def _trace_form_values(F, q, elems):
    s = np.zeros_like(elems)
    for i in q.indices:
        y = elems
        for _ in range(i % F.n):
            y = F.vmul(y, y)
        s ^= F.vmul(y, elems)
    return F.vtrace(s)


def trace_form_weight(F: FieldF2n, q, max_bits: int = MAX_SCAN_BITS,
                      chunk: int = _SCAN_CHUNK) -> int:
    """Number of a in GF(2^n) with Q'(a) = 1, by full scan."""
    q = as_quad(q)
    if F.n > max_bits:
        raise ResourceLimit("trace scan bits", F.n, max_bits)
    total = 0
    for start in range(0, F.order, chunk):
        elems = np.arange(start, min(start + chunk, F.order), dtype=np.uint64)
        total += int(_trace_form_values(F, q, elems).sum())
    return total


@dataclass(frozen=True)
class SubspaceBasis:
    ambient: FieldF2n
    vectors: tuple

    def __post_init__(self):
        if rank(self.vectors) != len(self.vectors):
            raise InvalidArgument("basis vectors are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def elements(self, max_dim: int = MAX_SCAN_BITS) -> np.ndarray:
        if self.dim > max_dim:
            raise ResourceLimit("span dimension", self.dim, max_dim)
        arr = np.zeros(1, dtype=np.uint64)
        for v in self.vectors:
            arr = np.concatenate([arr, arr ^ np.uint64(v)])
        return arr


def rank(vectors) -> int:
    pivots = {}
    r = 0
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top in pivots:
                v ^= pivots[top]
            else:
                pivots[top] = v
                r += 1
                break
    return r


def _kernel(images):
    """Kernel of the GF(2)-linear map sending basis vector c to images[c]."""
    pivots = {}
    kernel = []
    for c, img in enumerate(images):
        comb = 1 << c
        while img:
            top = img.bit_length() - 1
            if top in pivots:
                p_img, p_comb = pivots[top]
                img ^= p_img
                comb ^= p_comb
            else:
                pivots[top] = (img, comb)
                break
        if not img:
            kernel.append(comb)
    return kernel


def _solve(images, target):
    """Some x with L(x) = target, or None; L given by basis images."""
    pivots = {}
    for c, img in enumerate(images):
        comb = 1 << c
        while img:
            top = img.bit_length() - 1
            if top in pivots:
                p_img, p_comb = pivots[top]
                img ^= p_img
                comb ^= p_comb
            else:
                pivots[top] = (img, comb)
                break
    sol = 0
    while target:
        top = target.bit_length() - 1
        if top not in pivots:
            return None
        p_img, p_comb = pivots[top]
        target ^= p_img
        sol ^= p_comb
    return sol


def _apply(images, v):
    out = 0
    c = 0
    while v:
        if v & 1:
            out ^= images[c]
        v >>= 1
        c += 1
    return out


def frobenius_matrix(F: FieldF2n) -> list[int]:
    """Columns of Frobenius in the polynomial basis (as basis images)."""
    return [F.mul(1 << c, 1 << c) for c in range(F.n)]


def frobenius_kernel_power(F: FieldF2n, k: int) -> SubspaceBasis:
    """Basis of ker (Frob - id)^k.

    Its dimension is min(k, 2^nu2(n)): as a GF(2)[Frob]-module the field is
    GF(2)[y]/(y^n - 1), whose (y+1)-primary part has length 2^nu2(n).
    """
    if k < 0:
        raise InvalidArgument("kernel power must be non-negative")
    images = []
    for c in range(F.n):
        v = 1 << c
        for _ in range(k):
            v = F.mul(v, v) ^ v
        images.append(v)
    return SubspaceBasis(F, tuple(_kernel(images)))


def vanishes_on(F: FieldF2n, q, S: SubspaceBasis, max_dim: int = MAX_SCAN_BITS) -> bool:
    q = as_quad(q)
    elems = S.elements(max_dim)
    return not bool(_trace_form_values(F, q, elems).any())


def prime_field_basis(F: FieldF2n) -> SubspaceBasis:
    return SubspaceBasis(F, (1,))


class QuadraticExtension:
    """GF(2^2n) with an explicit embedding of a given GF(2^n)."""

    def __init__(self, base: FieldF2n):
        self.base = base
        self.big = field_create(2 * base.n, max_n=2 * MAX_FIELD_N)
        # The copy of GF(2^n) inside is ker(Frob^n - id); find a root of the
        # base modulus there and send x to it.
        imgs = []
        for c in range(self.big.n):
            imgs.append(self.big.frobenius(1 << c, base.n) ^ (1 << c))
        sub = SubspaceBasis(self.big, tuple(_kernel(imgs)))
        if sub.dim != base.n:
            raise InconsistencyError(f"subfield has dimension {sub.dim}, expected {base.n}")
        root = None
        coeffs = base.modulus.bits
        for y in sub.elements(max_dim=2 * MAX_FIELD_N):
            y = int(y)
            acc, p = 0, 1
            for c in range(base.n + 1):
                if (coeffs >> c) & 1:
                    acc ^= p
                p = self.big.mul(p, y)
            if acc == 0:
                root = y
                break
        if root is None:
            raise InconsistencyError("base modulus has no root in the extension")
        self.root = root
        self._embed_images = [self.big.pow(root, c) for c in range(base.n)]

    def embed(self, a: int) -> int:
        return _apply(self._embed_images, a)

    def restrict(self, b: int) -> int:
        """Preimage of b under the embedding; b must lie in the image."""
        a = _solve(self._embed_images, b)
        if a is None:
            raise InconsistencyError("element does not lie in the embedded base field")
        return a

    def artin_schreier_root(self, c: int) -> int:
        """A root u of u^2 + u = c in the big field."""
        imgs = [self.big.mul(1 << k, 1 << k) ^ (1 << k) for k in range(self.big.n)]
        u = _solve(imgs, c)
        if u is None:
            raise InconsistencyError("u^2 + u = c has no root in the extension")
        return u


@functools.lru_cache(maxsize=None)
def _extension(base: FieldF2n) -> QuadraticExtension:
    return QuadraticExtension(base)


def alpharec_identity(F: FieldF2n, alpha: int, k: int) -> tuple[int, int]:
    """(u^(2^k+1) + v^(2^k+1), 1 + alpha + alpha^2 + ... + alpha^(2^(k-1))).

    u, v are the roots of x^2 + x + alpha, taken in GF(2^2n) so the same code
    handles the split and the irreducible case; the left side is pulled back
    into F through the embedding.
    """
    if k < 0:
        raise InvalidArgument("k must be non-negative")
    ext = _extension(F)
    big = ext.big
    u = ext.artin_schreier_root(ext.embed(alpha))
    v = u ^ 1
    e = (1 << k) + 1
    lhs = ext.restrict(big.pow(u, e) ^ big.pow(v, e))
    rhs = 1
    term = alpha
    for _ in range(k):
        rhs ^= term
        term = F.mul(term, term)
    return lhs, rhs


def balance_transfer_check(q, n: int, max_n: int = MAX_FIELD_N) -> tuple[BalanceClass, BalanceClass]:
    """(class of Q over n variables, class of Q' over GF(2^n))."""
    q = as_quad(q)
    boolean_side = classify_balance(truth_table(q, n))
    F = field_create(n, max_n=max_n)
    trace_side = classify_weight(trace_form_weight(F, q), n)
    return boolean_side, trace_side
