"""
Letting q tend to 1
===================

At q = 1 the congruences become statements about p-adic valuations of rational
numbers.  The last table is evidence for a strengthened, unproved statement: it
reports valuations, it does not pass or fail anything.
"""

from qcong.verify import explore_conjecture, verify_corollary, verify_van_hamme

for p in (3, 5, 7, 11, 13, 17, 19):
    v = verify_corollary(1, p)
    print(f"8k+1, p={p:2}: {v.status.value:5} {v.notes[-1]}")
for p in (5, 7, 11, 13, 17, 19):
    v = verify_corollary(2, p)
    print(f"8k-1, p={p:2}: {v.status.value:5} {v.notes[-1]}")

# the classical 4k+1 sum serves as a calibration of the valuation code
for p in (5, 7, 11, 13):
    print(f"4k+1, p={p:2}: {verify_van_hamme(p).notes[-1]}")

for p, r in [(3, 1), (5, 1), (7, 1), (11, 1), (3, 2), (5, 2)]:
    print(explore_conjecture(p, r).line())
