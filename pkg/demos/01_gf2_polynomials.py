"""Polynomials over GF(2): parsing, factoring, irreducibility and orders."""

from rsboole.gf2poly import Gf2Poly, gf2_factor, gf2_gcd, is_irreducible, x_order_mod, xpow1_valuation

f = Gf2Poly.parse("x^12 + x^8 + x^4 + 1")
print("f           =", f)
print("hex         =", f.to_hex())

# f is a perfect 4th power, so factoring finds high multiplicities
fac = gf2_factor(f)
print("factored    =", fac)
print("round trip  =", fac.expand() == f)

# Gcd with x^15 - 1 picks out the part of f living on 15th roots of unity
print("gcd(f, x^15+1) =", gf2_gcd(f, Gf2Poly.parse("x^15 + 1")))

# The order of x modulo an irreducible tells which x^k - 1 it divides
for text in ("x^4 + x + 1", "x^4 + x^3 + x^2 + x + 1", "x^6 + x^4 + x^3 + x + 1"):
    p = Gf2Poly.parse(text)
    print(f"{text:28s} irreducible={is_irreducible(p)}  ord(x)={x_order_mod(p)}")

# Multiplicity of the root 1
print("(x+1)-valuation of f =", xpow1_valuation(f))
