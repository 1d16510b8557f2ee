"""Truth tables and Walsh spectra of quadratic rotation-symmetric functions."""

from rsboole import boolfn

for terms, n in [([1], 7), ([1, 2], 6), ([1, 3], 8), ([2], 4)]:
    t = boolfn.truth_table(terms, n)
    s = boolfn.walsh_transform(t)
    q = boolfn.QuadRsFunction(terms)
    v = boolfn.plateau_v(s)
    print(f"{str(q):14s} n={n:2d}  weight={boolfn.weight(t):4d}  "
          f"NL={boolfn.nonlinearity(s):3d}  v={v}  bent={v == 0}  {boolfn.classify_balance(t)}")

# The table is invariant under cyclically shifting the variables
t = boolfn.truth_table([1, 3], 9)
print("rotation invariant:", boolfn.is_rotation_invariant(t))

# Quadratic weights can only take a handful of values
print("possible weights at n=6:", sorted(boolfn.possible_quadratic_weights(6)))

# Tables and spectra serialise compactly
print("hex of (0,1) at n=4:", boolfn.truth_table([1], 4).to_hex())
print(boolfn.walsh_transform(boolfn.truth_table([1], 3)).to_csv(), end="")
