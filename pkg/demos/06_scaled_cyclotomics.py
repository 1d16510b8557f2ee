"""Cyclotomic polynomials rescaled by sqrt(d), and when they split."""

from rsboole import zcyclo

print("Phi_12 =", zcyclo.cyclotomic_Z(12))

for n, d in [(8, 2), (16, 2), (12, 3), (5, 5), (4, -1), (24, 6)]:
    inp = zcyclo.ScaledCycloInput(n, d)
    P = zcyclo.split_phi_tilde(inp)
    print(f"n={n:2d} d={d:2d}: {str(zcyclo.phi_tilde(inp)):30s} "
          f"criterion={zcyclo.reducibility_criterion(inp)!s:5s}  split={P}")

# Grid: closed-form criterion against the root-based oracle
rep = zcyclo.criterion_vs_oracle(24, [2, 3, 5, -1])
print("grid rows:", len(rep.rows), " disagreements:", len(rep.disagreements))
print(rep.to_csv().splitlines()[:4])
