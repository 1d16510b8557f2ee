"""Truth tables and Walsh spectra of quadratic rotation-symmetric functions.

Row r of a truth table holds f(x_0, ..., x_{n-1}) where x_k is bit k of r.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import InvalidArgument, NotPlateaued, ResourceLimit

MAX_TABLE_N = 26
_CHUNK_BITS = 20


@dataclass(frozen=True)
class QuadRsFunction:
    """Q = sum over i in ``indices`` of the rotation orbit of x_0 x_i."""

    indices: tuple

    def __init__(self, indices: Iterable[int]):
        idx = [int(i) for i in indices]
        if not idx:
            raise InvalidArgument("index set must be nonempty")
        if len(set(idx)) != len(idx):
            raise InvalidArgument(f"duplicate indices in {idx}")
        if min(idx) < 1:
            raise InvalidArgument(f"indices must be positive, got {idx}")
        object.__setattr__(self, "indices", tuple(sorted(idx)))

    @classmethod
    def parse(cls, text: str) -> QuadRsFunction:
        try:
            return cls(int(t) for t in text.split(",") if t.strip())
        except ValueError:
            raise InvalidArgument(f"bad term list {text!r}") from None

    @property
    def J(self) -> int:
        return self.indices[-1]

    def __len__(self):
        return len(self.indices)

    def __str__(self):
        return "+".join(f"(0,{i})" for i in self.indices)


def as_quad(q) -> QuadRsFunction:
    if isinstance(q, QuadRsFunction):
        return q
    if isinstance(q, str):
        return QuadRsFunction.parse(q)
    if isinstance(q, int):
        return QuadRsFunction([q])
    return QuadRsFunction(q)


class BalanceClass(enum.Enum):
    BALANCED = "Balanced"
    OVERBALANCED = "Overbalanced"
    UNDERBALANCED = "Underbalanced"

    def __str__(self):
        return self.value


def classify_weight(weight: int, n: int) -> BalanceClass:
    half = 1 << (n - 1)
    if weight == half:
        return BalanceClass.BALANCED
    return BalanceClass.OVERBALANCED if weight > half else BalanceClass.UNDERBALANCED


@dataclass(frozen=True, eq=False)
class TruthTable:
    n: int
    bits: np.ndarray  # uint8 0/1, length 2^n

    def __post_init__(self):
        bits = np.asarray(self.bits, dtype=np.uint8)
        if bits.shape != (1 << self.n,):
            raise InvalidArgument(f"table length {bits.shape} is not 2^{self.n}")
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    def __eq__(self, other):
        return (isinstance(other, TruthTable) and self.n == other.n
                and np.array_equal(self.bits, other.bits))

    @classmethod
    def constant(cls, n: int, value: int) -> TruthTable:
        return cls(n, np.full(1 << n, value & 1, dtype=np.uint8))

    def to_bytes(self) -> bytes:
        """Raw dump: rows packed LSB-first into bytes."""
        return np.packbits(self.bits, bitorder="little").tobytes()

    @classmethod
    def from_bytes(cls, n: int, data: bytes) -> TruthTable:
        raw = np.frombuffer(data, dtype=np.uint8)
        bits = np.unpackbits(raw, bitorder="little")[: 1 << n]
        return cls(n, bits)

    def to_hex(self) -> str:
        return self.to_bytes().hex()

    @classmethod
    def from_hex(cls, n: int, text: str) -> TruthTable:
        return cls.from_bytes(n, bytes.fromhex(text))


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    n: int
    values: np.ndarray  # int64, entry y is W(f)(y)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.int64)
        if vals.shape != (1 << self.n,):
            raise InvalidArgument(f"spectrum length {vals.shape} is not 2^{self.n}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __eq__(self, other):
        return (isinstance(other, WalshSpectrum) and self.n == other.n
                and np.array_equal(self.values, other.values))

    def to_csv(self) -> str:
        lines = ["y,W"]
        lines.extend(f"{y},{int(w)}" for y, w in enumerate(self.values))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> WalshSpectrum:
        rows = text.strip().splitlines()
        if not rows or rows[0].strip() != "y,W":
            raise InvalidArgument("spectrum CSV must start with header 'y,W'")
        pairs = [tuple(int(v) for v in r.split(",")) for r in rows[1:]]
        if [y for y, _ in pairs] != list(range(len(pairs))):
            raise InvalidArgument("spectrum CSV rows must be y = 0, 1, 2, ...")
        return cls(_log2_exact(len(pairs)), [w for _, w in pairs])

    def to_json(self) -> str:
        return json.dumps([int(w) for w in self.values])

    @classmethod
    def from_json(cls, text: str) -> WalshSpectrum:
        vals = json.loads(text)
        return cls(_log2_exact(len(vals)), vals)


def _log2_exact(m):
    n = m.bit_length() - 1
    if m <= 0 or 1 << n != m:
        raise InvalidArgument(f"length {m} is not a power of two")
    return n


def _check_n(n, max_n):
    if n > max_n:
        raise ResourceLimit("max_table_n", n, max_n)


def orbit_pairs(i: int, n: int) -> list[tuple[int, int]]:
    """Distinct cyclic shifts of the monomial x_0 x_i in n variables."""
    seen = set()
    out = []
    for k in range(n):
        pair = tuple(sorted((k, (k + i) % n)))
        if pair not in seen:
            seen.add(pair)
            out.append(pair)
    return out


def truth_table(q, n: int, *, wrap: bool = False, max_n: int = MAX_TABLE_N) -> TruthTable:
    """Evaluate Q on all 2^n inputs.

    Each term (0,i) contributes the distinct cyclic shifts of x_0 x_i, so
    (0,i) over n = 2i has n/2 monomials.  Indices above n/2 are rejected
    unless ``wrap`` is set, in which case (0,i) is read as (0,n-i).
    """
    q = as_quad(q)
    if n < 2:
        raise InvalidArgument("need at least two variables")
    for i in q.indices:
        if 2 * i > n and not (wrap and i < n):
            raise InvalidArgument(f"term (0,{i}) does not exist in {n} variables")
    _check_n(n, max_n)
    pairs = [p for i in q.indices for p in orbit_pairs(i, n)]
    size = 1 << n
    chunk = min(size, 1 << _CHUNK_BITS)
    out = np.empty(size, dtype=np.uint8)
    for start in range(0, size, chunk):
        rows = np.arange(start, start + chunk, dtype=np.uint64)
        xs = [((rows >> np.uint64(k)) & np.uint64(1)).astype(np.uint8) for k in range(n)]
        acc = np.zeros(chunk, dtype=np.uint8)
        for a, b in pairs:
            acc ^= xs[a] & xs[b]
        out[start:start + chunk] = acc
    return TruthTable(n, out)


def weight(t: TruthTable) -> int:
    return int(np.count_nonzero(t.bits))


def walsh_transform(t: TruthTable, max_n: int = MAX_TABLE_N) -> WalshSpectrum:
    """Fast Walsh-Hadamard transform of (-1)^f, exact in int64."""
    _check_n(t.n, max_n)
    a = 1 - 2 * t.bits.astype(np.int64)
    h = 1
    size = a.size
    while h < size:
        v = a.reshape(-1, 2, h)
        x = v[:, 0, :].copy()
        y = v[:, 1, :]
        v[:, 0, :] += y
        v[:, 1, :] = x - y
        h *= 2
    return WalshSpectrum(t.n, a)


def nonlinearity(s: WalshSpectrum) -> int:
    return (1 << (s.n - 1)) - int(np.max(np.abs(s.values))) // 2


def plateau_v(s: WalshSpectrum) -> int:
    """The v with every nonzero |W(y)| equal to 2^((n+v)/2)."""
    mags = np.unique(np.abs(s.values))
    mags = mags[mags != 0]
    if mags.size != 1:
        raise NotPlateaued(f"nonzero Walsh magnitudes {mags.tolist()}")
    m = int(mags[0])
    e = m.bit_length() - 1
    if 1 << e != m:
        raise NotPlateaued(f"Walsh magnitude {m} is not a power of two")
    v = 2 * e - s.n
    if v < 0:
        raise NotPlateaued(f"Walsh magnitude {m} below 2^(n/2)")
    return v


def classify_balance(t: TruthTable) -> BalanceClass:
    return classify_weight(weight(t), t.n)


def affine_equiv_quad(f: TruthTable, g: TruthTable) -> bool:
    """Affine-equivalence test valid for quadratic functions only."""
    if f.n != g.n:
        raise InvalidArgument(f"variable counts differ: {f.n} vs {g.n}")
    return (weight(f) == weight(g)
            and nonlinearity(walsh_transform(f)) == nonlinearity(walsh_transform(g)))


def rotate_rows_index(n: int) -> np.ndarray:
    """Row permutation induced by x_k -> x_{k+1 mod n}."""
    r = np.arange(1 << n, dtype=np.uint64)
    mask = np.uint64((1 << n) - 1)
    return ((r << np.uint64(1)) | (r >> np.uint64(n - 1))) & mask


def is_rotation_invariant(t: TruthTable) -> bool:
    return bool(np.array_equal(t.bits, t.bits[rotate_rows_index(t.n)]))


def possible_quadratic_weights(n: int) -> set[int]:
    """2^(n-1) and 2^(n-1) +- 2^j for n/2 - 1 <= j <= n - 2."""
    half = 1 << (n - 1)
    out = {half}
    j = 0
    while j <= n - 2:
        if 2 * j >= n - 2:
            out.add(half + (1 << j))
            out.add(half - (1 << j))
        j += 1
    return out
