"""The sequence n -> v(n) is periodic; when is a function balanced?"""

from rsboole import boolfn
from rsboole import quad_analysis as qa

# The v value comes from a gcd over GF(2), no truth table needed
q = [1, 4, 7]
print("v for (0,1)+(0,4)+(0,7), n = 15..30:", qa.v_sequence(q, 15, 31))

rep = qa.period(q)
print("period V =", rep.V, " (2-part", 2 ** rep.t, "x odd part", rep.m, ")")
for f, mult, order in rep.factor_details:
    print(f"   factor {str(f):24s} multiplicity {mult}  ord(x) {order}")

# Binomials have a closed form for the period
for i, j in [(3, 1), (5, 2), (6, 1)]:
    print(f"binomial ({j},{i}): closed form {qa.binomial_period(i, j)}, "
          f"computed {qa.period([j, i]).V}")

# Balancedness: predicted residue class vs brute force
for i, j in [(2, 1), (3, 1), (6, 3)]:
    b = qa.balance_report([j, i])
    hits = [n for n in range(2 * i + 1, 25)
            if boolfn.classify_balance(boolfn.truth_table([j, i], n)) is boolfn.BalanceClass.BALANCED]
    print(f"({j},{i}): {b.kind.value:10s} residue={b.residue} mod {b.modulus}  balanced at {hits}")

# Weight without building a table: v fixes |W(0)|, the sign comes from elsewhere
print("predicted weight of (0,1)+(0,2) at n=40:", qa.predicted_weight([1, 2], 40))
