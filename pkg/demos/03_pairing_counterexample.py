"""
When the well-poised pairing breaks
===================================

The sum of [2dk+r] (q^r, aq^r, q^r/a, bq^r, q^r/b, q^2; q^d)_k / (...)_k up to m,
with dm = -r (mod n), is expected to vanish modulo Phi_n because the summands at
k and m-k cancel.  That cancellation reflects (q^2;q^d)_k against
(q^{d+r-2};q^d)_{m-k}, which is only legitimate when no factor 1 - q^e of
(q^{d+r-2};q^d)_m has n | e.  For n=5, d=3, r=1 the factor 1 - q^5 sits there,
and the sum is indeed nonzero modulo Phi_5.
"""

from qcong.cli import format_verdict
from qcong.verify import verify_pairing

for n, d, r in [(5, 4, 1), (5, 4, -1), (7, 4, 1), (5, 3, 1), (5, 3, -1)]:
    v = verify_pairing(n, d, r, a_val=2, b_val=3)
    print(f"n={n} d={d} r={r}: {v.status.value}")
    for note in v.notes:
        print("   ", note)

# full report for the failing case, including the first failing grid point
print(format_verdict(verify_pairing(5, 3, 1)))
