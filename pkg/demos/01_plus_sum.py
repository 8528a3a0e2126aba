"""
The 8k+1 sum modulo [n] Phi_n(q)^2
==================================

Summands are kept as products of cyclotomic factors, so the Phi_n-adic
valuation of every term can be read off without expanding anything.
"""

from qcong.cli import format_verdict
from qcong.qfactor import cyclo_multiplicity, expand
from qcong.qseries import rhs_plus, term_plus, theorem_t
from qcong.verify import verify_plus_sum

n = 13
t, M = theorem_t(n, "plus")
print(f"n = {n}: t = {t}, truncation point M = {M}")

# how often Phi_13 divides each summand; the tail k > M carries Phi_13^3
for k in range(n):
    print(f"  k = {k:2}  multiplicity {cyclo_multiplicity(term_plus(k), n)}")

# the first two summands as rational functions of q
for k in range(2):
    print(f"  term {k} = {expand(term_plus(k))}")

# the closed form on the right
print("right-hand side:", rhs_plus(n))

# the full verification: headline congruence plus the intermediate ones
print(format_verdict(verify_plus_sum(n)))
