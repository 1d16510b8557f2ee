"""Integer matrices whose power traces count weights."""

import numpy as np

from rsboole import boolfn
from rsboole import rules_matrix as rm
from rsboole.intpoly import IntPoly

R = rm.build_R_binom(2, 1)
print("R(2,1) =\n", R)
print("R^2 is Hadamard:", rm.is_hadamard(rm.mat_pow(R, 2)))
print("char poly:", rm.char_poly(R))

# trace(R^n) against 2^n - 2 wt, for a monomial and a binomial
for q in ([2], [1, 2]):
    rep = rm.ecc_trace_check(q, range(2 * max(q) + 1, 13))
    print(f"terms {q}: status {rep.to_dict()['status']}, all equal = {rep.all_equal}")

# The characteristic polynomial times (x - 2) annihilates the weight sequence
rec = IntPoly((-2, 1)) * rm.char_poly(rm.build_R_binom(3, 1))
print("recurrence for (1,3) holds:", rm.weight_recurrence_check([1, 3], rec, range(7, 22)))
print("char poly alone:", rm.weight_recurrence_check([1, 3], rm.char_poly(rm.build_R_binom(3, 1)), range(7, 22)))

# Scaled order: R^K should be 2^(K/2) I
K = rm.conjectured_order(3, 2)
v = rm.scaled_order_check(rm.build_R_binom(3, 2), K)
print(f"R(3,2): claimed K={K}, satisfies={v.satisfies}, least K={v.least_even_K}")

print("Sylvester example char poly:", rm.char_poly(rm.SYLVESTER_EXAMPLE))
print("det R(3) =", rm.determinant(rm.build_R_mono(3)))
print("weights of (0,1) vs traces:",
      [(int(np.trace(rm.mat_pow(rm.build_R_mono(1), n))),
        (1 << n) - 2 * boolfn.weight(boolfn.truth_table([1], n))) for n in (3, 4, 5)])
