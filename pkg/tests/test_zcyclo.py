import pytest
import sympy as sp

from rsboole import zcyclo
from rsboole.errors import InvalidArgument, ResourceLimit
from rsboole.intpoly import IntPoly
from rsboole.zcyclo import (
    ScaledCycloInput,
    criterion_vs_oracle,
    cyclotomic_Z,
    phi_tilde,
    reducibility_criterion,
    split_phi_tilde,
    split_product,
)

x = sp.symbols("x")


def to_sympy(p: IntPoly):
    return sum(c * x**k for k, c in enumerate(p.coeffs))


def from_sympy(expr):
    return IntPoly.from_descending(int(c) for c in sp.Poly(expr, x).all_coeffs())


def sympy_irreducible(p: IntPoly):
    _, facs = sp.factor_list(to_sympy(p))
    return len(facs) == 1 and facs[0][1] == 1


def sympy_split_exists(poly: IntPoly) -> bool:
    """Independent check: some factor combination P has P(x)P(-x) = +-poly."""
    _, facs = sp.factor_list(to_sympy(poly))
    flat = []
    for f, m in facs:
        flat += [sp.Poly(f, x)] * m
    from itertools import product

    target = sp.Poly(to_sympy(poly), x)
    half = target.degree() // 2
    for choice in product((0, 1), repeat=len(flat)):
        Pp = sp.Poly(1, x)
        for f, c in zip(flat, choice):
            if c:
                Pp *= f
        if Pp.degree() != half:
            continue
        prod = Pp * sp.Poly(Pp.as_expr().subs(x, -x), x)
        if prod == target or prod == -target:
            return True
    return False


# ---- cyclotomic polynomials


def test_cyclotomic_examples():
    assert cyclotomic_Z(5) == IntPoly((1, 1, 1, 1, 1))
    assert cyclotomic_Z(17) == IntPoly([1] * 17)
    assert cyclotomic_Z(1) == IntPoly((-1, 1))


def test_cyclotomic_matches_sympy():
    for n in range(1, 201):
        assert cyclotomic_Z(n) == from_sympy(sp.cyclotomic_poly(n, x)), n


def test_cyclotomic_recombination():
    for n in range(1, 201):
        prod = IntPoly((1,))
        for m in range(1, n + 1):
            if n % m == 0:
                prod = prod * cyclotomic_Z(m)
        assert prod == IntPoly.monomial(n) - 1


def test_cyclotomic_caps():
    with pytest.raises(ResourceLimit):
        cyclotomic_Z(201)
    with pytest.raises(InvalidArgument):
        cyclotomic_Z(0)


# ---- inputs


def test_input_derived_fields():
    inp = ScaledCycloInput(24, 3)
    assert (inp.n_o, inp.phi, inp.discriminant) == (3, 8, 12)
    assert ScaledCycloInput(5, 5).discriminant == 5
    assert ScaledCycloInput(5, -1).discriminant == -4
    assert ScaledCycloInput(5, -3).discriminant == -3


@pytest.mark.parametrize("n, d", [(4, 4), (4, 0), (4, 12), (0, 2), (3, -8)])
def test_input_rejects(n, d):
    with pytest.raises(InvalidArgument):
        ScaledCycloInput(n, d)


def test_euler_phi_matches_sympy():
    assert all(zcyclo.euler_phi(n) == sp.totient(n) for n in range(1, 300))


# ---- phi tilde


@pytest.mark.parametrize("n, d, expected", [
    (8, 2, IntPoly((4, 0, 0, 0, 1))),
    (16, 2, IntPoly((16, 0, 0, 0, 0, 0, 0, 0, 1))),
    (5, 5, IntPoly((625, 0, 125, 0, 25, 0, 5, 0, 1))),
])
def test_phi_tilde_examples(n, d, expected):
    assert phi_tilde(ScaledCycloInput(n, d)) == expected


def test_phi_tilde_monic_and_degree():
    for d in (1, 2, 3, 5, 6, 7, -1, -2, -3, -5):
        for n in range(1, 61):
            inp = ScaledCycloInput(n, d)
            p = phi_tilde(inp)
            assert p.is_monic()
            assert p.degree == (inp.phi if n % 4 == 0 else 2 * zcyclo.euler_phi(inp.n_o))


def test_phi_tilde_scaling_identity_when_4_divides_n():
    # Phi~(sqrt(d) z) = d^(phi/2) Phi_n(z): substitute x -> sqrt(d) z symbolically
    z = sp.symbols("z")
    for d in (2, 3, 5, -1, -2):
        for n in range(4, 49, 4):
            inp = ScaledCycloInput(n, d)
            lhs = sp.expand(to_sympy(phi_tilde(inp)).subs(x, sp.sqrt(d) * z))
            rhs = sp.expand(sp.Integer(d) ** (inp.phi // 2) * sp.cyclotomic_poly(n, z))
            assert sp.simplify(lhs - rhs) == 0, (n, d)


def test_phi_tilde_roots_definition_odd_case():
    for d in (2, 3, -1):
        for n in (3, 5, 6, 10, 18):
            inp = ScaledCycloInput(n, d)
            expected = sp.expand(sp.Integer(d) ** inp.phi
                                 * sp.cyclotomic_poly(inp.n_o, x**2 / d))
            assert to_sympy(phi_tilde(inp)) - expected == 0


# ---- criterion


@pytest.mark.parametrize("n, d, expected", [(8, 2, True), (16, 2, False), (5, 5, True),
                                            (12, 3, True), (20, 5, False)])
def test_criterion_examples(n, d, expected):
    assert reducibility_criterion(ScaledCycloInput(n, d)) is expected


# ---- split oracles


def test_split_examples():
    assert split_product(IntPoly((4, 0, 0, 0, 1))) == IntPoly((2, 2, 1))
    assert split_product(IntPoly((16, 0, 0, 0, 0, 0, 0, 0, 1))) is None
    # P is fixed only up to P(x) <-> +-P(-x); the normal form picks one
    for n_o in (3, 5, 7, 9, 15, 21):
        phi = cyclotomic_Z(n_o)
        got = split_product(phi.substitute_x2())
        assert got in (phi, -phi.negate_x() if phi.degree % 2 else phi.negate_x())
        assert got == zcyclo.normalize_split(phi)


def test_split_cap():
    with pytest.raises(ResourceLimit):
        split_product(IntPoly.monomial(26) + 1)


def test_split_non_even_input():
    assert split_product(IntPoly((1, 1, 1))) is None


def test_split_12_3():
    P = split_phi_tilde(ScaledCycloInput(12, 3))
    assert P is not None
    assert P * P.negate_x() == phi_tilde(ScaledCycloInput(12, 3))


def test_two_oracles_agree_and_match_sympy():
    for d in (2, 3, 5, -1, -2, -3, 6, 7):
        for n in range(1, 41):
            inp = ScaledCycloInput(n, d)
            poly = phi_tilde(inp)
            a = split_phi_tilde(inp)
            if poly.degree <= 24:
                assert split_product(poly) == a, (n, d)
            if poly.degree <= 16:
                assert (a is not None) == sympy_split_exists(poly), (n, d)


def test_split_results_verified_and_irreducible():
    for d in (2, 3, 5, -1, -2, -3):
        for n in range(1, 41):
            inp = ScaledCycloInput(n, d)
            P = split_phi_tilde(inp)
            if P is None:
                continue
            prod = P * P.negate_x()
            assert prod == phi_tilde(inp) or prod == -phi_tilde(inp)
            if P.degree <= 8:
                assert zcyclo.is_irreducible_by_roots(P)
            assert sympy_irreducible(P), (n, d, P)


def test_irreducible_by_roots_detects_products():
    assert not zcyclo.is_irreducible_by_roots(IntPoly((2, 2, 1)) * IntPoly((2, -2, 1)))
    assert not zcyclo.is_irreducible_by_roots(IntPoly((-1, 1)) * IntPoly((1, 0, 1)))
    assert zcyclo.is_irreducible_by_roots(IntPoly((2, 2, 1)))


def test_normalization_is_deterministic():
    P = IntPoly((2, 2, 1))
    assert zcyclo.normalize_split(P) == P
    assert zcyclo.normalize_split(P.negate_x()) == P


# ---- grid report


def test_criterion_vs_oracle_grid():
    rep = criterion_vs_oracle(40, [2, 3, 5, -1, -2], cross_check_degree=24)
    assert len(rep.rows) == 200
    assert rep.disagreements == []
    true_rows = {(r.n, r.d) for r in rep.rows if r.criterion}
    assert (8, 2) in true_rows and (12, 3) in true_rows and (16, 2) not in true_rows


def test_criterion_csv():
    text = criterion_vs_oracle(8, [2]).to_csv()
    lines = text.splitlines()
    assert lines[0] == "n,d,criterion,oracle,agree"
    assert lines[8] == "8,2,true,true,true"
