import itertools
import random

import numpy as np
import pytest
import sympy as sp

from rsboole import boolfn, gf2field
from rsboole.boolfn import BalanceClass, QuadRsFunction
from rsboole.errors import InvalidArgument, ResourceLimit
from rsboole.gf2field import (
    SubspaceBasis,
    alpharec_identity,
    balance_transfer_check,
    field_create,
    frobenius_kernel_power,
    trace_form_eval,
    trace_form_weight,
    vanishes_on,
)
from rsboole.gf2poly import Gf2Poly
from rsboole.quad_analysis import nu2


def school_mul(a, b, modulus, n):
    """Shift-and-add multiplication, reducing after every shift."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> n & 1:
            a ^= modulus
    return r


def school_trace(a, modulus, n):
    s, y = 0, a
    for _ in range(n):
        s ^= y
        y = school_mul(y, y, modulus, n)
    return s


def quads(max_j):
    for J in range(1, max_j + 1):
        for r in range(J):
            for rest in itertools.combinations(range(1, J), r):
                yield QuadRsFunction(rest + (J,))


# ---- construction


def test_default_moduli():
    assert str(field_create(2).modulus) == "x^2+x+1"
    assert str(field_create(4).modulus) == "x^4+x+1"
    F = field_create(8, "x^8+x^4+x^3+x+1")
    assert F.n == 8


def test_default_modulus_is_least_irreducible():
    x = sp.symbols("x")
    for n in range(1, 11):
        for bits in range(1 << n, 1 << (n + 1)):
            expr = sum(x**k for k in range(n + 1) if bits >> k & 1)
            if sp.Poly(expr, x, modulus=2).is_irreducible:
                break
        assert field_create(n).modulus == Gf2Poly(bits), n


def test_reducible_modulus_rejected():
    with pytest.raises(InvalidArgument):
        field_create(4, "x^4+1")
    with pytest.raises(InvalidArgument):
        field_create(4, "x^3+x+1")


def test_field_cap():
    with pytest.raises(ResourceLimit):
        field_create(30)
    with pytest.raises(InvalidArgument):
        field_create(0)


@pytest.mark.parametrize("n", range(1, 13))
def test_field_axioms_random(n):
    F = field_create(n)
    rng = random.Random(n)
    m = F.modulus.bits
    for _ in range(200):
        a, b, c = (rng.randrange(F.order) for _ in range(3))
        assert F.mul(a, b) == school_mul(a, b, m, n)
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, b ^ c) == F.mul(a, b) ^ F.mul(a, c)
        if a:
            assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, F.order) == a
        assert F.frobenius(a, n) == a


def test_vectorized_mul_matches_scalar():
    F = field_create(11)
    rng = np.random.default_rng(3)
    a = rng.integers(0, F.order, 500, dtype=np.uint64)
    b = rng.integers(0, F.order, 500, dtype=np.uint64)
    got = F.vmul(a, b)
    assert [int(v) for v in got] == [F.mul(int(x), int(y)) for x, y in zip(a, b)]


def test_element_hex_io():
    F = field_create(8)
    assert F.from_hex(F.to_hex(0xA7)) == 0xA7
    with pytest.raises(InvalidArgument):
        F.from_hex("1ff")


def test_zero_inverse():
    with pytest.raises(ZeroDivisionError):
        field_create(3).inv(0)


# ---- trace


def test_trace_examples():
    assert field_create(3).trace(0) == 0
    assert field_create(2).trace(0b10) == 1
    F = field_create(4)
    roots = [a for a in range(2, 16) if F.pow(a, 5) == 1]
    assert len(roots) == 4
    assert all(F.trace(a) == 1 for a in roots)


@pytest.mark.parametrize("n", range(1, 17))
def test_trace_linear_surjective_and_matches_definition(n):
    F = field_create(n)
    rng = random.Random(n)
    seen = set()
    for _ in range(100):
        a, b = rng.randrange(F.order), rng.randrange(F.order)
        assert F.trace(a ^ b) == F.trace(a) ^ F.trace(b)
        assert F.trace(a) == school_trace(a, F.modulus.bits, n)
        seen.add(F.trace(a))
    assert seen == {0, 1}
    assert gf2field.trace(F, 1) == n % 2


def test_vtrace_matches_scalar():
    F = field_create(9)
    elems = np.arange(F.order, dtype=np.uint64)
    assert F.vtrace(elems).tolist() == [F.trace(a) for a in range(F.order)]


# ---- trace form


def test_trace_form_examples():
    F2 = field_create(2)
    assert all(trace_form_eval(F2, [1], a) == 0 for a in range(4))
    F8 = field_create(8)
    assert trace_form_eval(F8, [1, 3], 0) == 0


@pytest.mark.parametrize("n, q, w", [(4, [1], 12), (6, [1], 24), (2, [1], 0)])
def test_trace_form_weight_examples(n, q, w):
    assert trace_form_weight(field_create(n), q) == w


@pytest.mark.parametrize("n", [3, 5, 8])
def test_trace_form_weight_matches_scalar_scan(n):
    F = field_create(n)
    for q in ([1], [1, 2], [1, 3]):
        slow = sum(trace_form_eval(F, q, a) for a in range(F.order))
        assert trace_form_weight(F, q, chunk=7) == slow


def test_trace_form_weight_independent_of_modulus():
    a = trace_form_weight(field_create(8), [1, 3])
    b = trace_form_weight(field_create(8, "x^8+x^4+x^3+x^2+1"), [1, 3])
    assert a == b


def test_trace_form_weight_cap():
    with pytest.raises(ResourceLimit):
        trace_form_weight(field_create(10), [1], max_bits=8)


# ---- Frobenius kernels


def test_kernel_examples():
    F = field_create(8)
    S1 = frobenius_kernel_power(F, 1)
    assert S1.dim == 1 and sorted(int(v) for v in S1.elements()) == [0, 1]
    assert frobenius_kernel_power(F, 6).dim == 6


@pytest.mark.parametrize("nu", [0, 1, 2, 3])
def test_kernel_power_two_is_subfield(nu):
    n = 1 << (nu + 1)
    F = field_create(n)
    S = frobenius_kernel_power(F, 1 << nu)
    elems = [int(a) for a in S.elements()]
    sub = 1 << (1 << nu)
    assert len(elems) == sub
    assert all(F.pow(a, sub) == a for a in elems)
    # closed under multiplication
    es = set(elems)
    assert all(F.mul(a, b) in es for a in elems[:8] for b in elems[:8])


def test_kernel_dimension_law():
    for n in range(1, 17):
        F = field_create(n)
        for k in range(0, n + 1):
            assert frobenius_kernel_power(F, k).dim == min(k, 1 << nu2(n)), (n, k)


def test_kernel_dimension_is_not_min_k_n():
    # odd degree: only the prime field is fixed by any power of (Frob - id)
    F = field_create(3)
    assert [frobenius_kernel_power(F, k).dim for k in range(4)] == [0, 1, 1, 1]


def test_kernel_vectors_really_in_kernel():
    F = field_create(12)
    for k in range(1, 5):
        for v in frobenius_kernel_power(F, k).vectors:
            for _ in range(k):
                v = F.square(v) ^ v
            assert v == 0


def test_vanishes_examples():
    F = field_create(8)
    assert vanishes_on(F, [1, 3], frobenius_kernel_power(F, 6))
    full = SubspaceBasis(F, tuple(1 << k for k in range(8)))
    assert not vanishes_on(F, [1, 3], full)
    for n in range(1, 10):
        Fn = field_create(n)
        assert vanishes_on(Fn, [1], gf2field.prime_field_basis(Fn)) == (n % 2 == 0)


def test_subspace_checks():
    F = field_create(5)
    with pytest.raises(InvalidArgument):
        SubspaceBasis(F, (3, 5, 6))
    with pytest.raises(ResourceLimit):
        SubspaceBasis(F, (1, 2, 4)).elements(max_dim=2)
    assert gf2field.rank([3, 5, 6]) == 2


# ---- quadratic extension and the alpha recurrence identity


@pytest.mark.parametrize("n", [1, 2, 3, 4, 8])
def test_embedding_is_field_homomorphism(n):
    F = field_create(n)
    ext = gf2field.QuadraticExtension(F)
    big = ext.big
    assert ext.embed(0) == 0 and ext.embed(1) == 1
    rng = random.Random(n)
    for _ in range(100):
        a, b = rng.randrange(F.order), rng.randrange(F.order)
        assert ext.embed(a ^ b) == ext.embed(a) ^ ext.embed(b)
        assert ext.embed(F.mul(a, b)) == big.mul(ext.embed(a), ext.embed(b))
        assert ext.embed(F.square(a)) == big.frobenius(ext.embed(a))
        assert ext.restrict(ext.embed(a)) == a


def test_artin_schreier_root():
    F = field_create(4)
    ext = gf2field.QuadraticExtension(F)
    for a in range(16):
        c = ext.embed(a)
        u = ext.artin_schreier_root(c)
        assert ext.big.mul(u, u) ^ u == c


def test_alpharec_examples():
    F = field_create(4)
    for alpha in range(16):
        lhs, rhs = alpharec_identity(F, alpha, 1)
        assert lhs == rhs == 1 ^ alpha
        lhs, rhs = alpharec_identity(F, alpha, 2)
        assert lhs == rhs == 1 ^ alpha ^ F.square(alpha)
    assert alpharec_identity(F, 0, 3) == (1, 1)


def test_alpharec_random_1000():
    rng = random.Random(36)
    fields = {n: field_create(n) for n in (2, 4, 8)}
    irreducible_cases = 0
    for _ in range(1000):
        F = fields[rng.choice((2, 4, 8))]
        alpha = rng.randrange(F.order)
        k = rng.randint(1, 10)
        lhs, rhs = alpharec_identity(F, alpha, k)
        assert lhs == rhs
        irreducible_cases += F.trace(alpha)
    # both the split and the irreducible quadratic occur
    assert 100 < irreducible_cases < 900


# ---- balance transfer


@pytest.mark.parametrize("n, expected", [
    (4, (BalanceClass.UNDERBALANCED, BalanceClass.OVERBALANCED)),
    (5, (BalanceClass.BALANCED, BalanceClass.BALANCED)),
    (6, (BalanceClass.UNDERBALANCED, BalanceClass.UNDERBALANCED)),
])
def test_balance_transfer_examples(n, expected):
    assert balance_transfer_check([1], n) == expected


def test_example_weights_coincide_at_six():
    assert boolfn.weight(boolfn.truth_table([1], 6)) == 24
    assert trace_form_weight(field_create(6), [1]) == 24


def test_balance_transfer_sweep():
    for q in quads(3):
        for n in range(2 * q.J + 1, 15):
            b, t = balance_transfer_check(q, n)
            assert (b is BalanceClass.BALANCED) == (t is BalanceClass.BALANCED), (q, n)
