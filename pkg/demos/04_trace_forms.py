"""The same quadratic forms seen through the trace on GF(2^n)."""

import random

from rsboole import boolfn, gf2field

F = gf2field.field_create(8)
print("field:", F.describe())

a, b = 0x53, 0xCA
print(f"{a:#x} * {b:#x} = {F.mul(a, b):#x},  Tr({a:#x}) = {gf2field.trace(F, a)}")

# Weights of x -> Tr(x^3) in a few fields
for n in (2, 4, 6):
    print(f"weight of Tr(x^3) on GF(2^{n}) = {gf2field.trace_form_weight(gf2field.field_create(n), [1])}")

# Kernels of (Frobenius - id)^k grow up to the 2-part of n
print("ker dims over GF(2^8):", [len(gf2field.frobenius_kernel_power(F, k).vectors) for k in range(1, 9)])
K6 = gf2field.frobenius_kernel_power(F, 6)
print("Tr(x^3 + x^9) vanishes on ker^6:", gf2field.vanishes_on(F, [1, 3], K6))

# The Boolean and trace sides agree on balance, though not always on its sign
for q, n in [([1, 2], 6), ([1, 3], 8), ([1], 4)]:
    side_a, side_b = gf2field.balance_transfer_check(q, n)
    print(f"{str(boolfn.QuadRsFunction(q)):12s} n={n}: boolean {side_a}, trace {side_b}")

# An identity in the quadratic extension, on random inputs
rng = random.Random(1)
ok = all(len(set(gf2field.alpharec_identity(F, rng.randrange(256), rng.randint(1, 9)))) == 1
         for _ in range(200))
print("alpha recurrence identity on 200 samples:", ok)
