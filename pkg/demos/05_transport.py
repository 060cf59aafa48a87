"""
Carrying certificates to derived matroids
=========================================

Truncation, direct sums with a nearly finitary matroid, finite deletions and
contraction by coloops all keep the unbounded-gap property.  A certificate for
M transports to each of them and re-verifies under the new oracle.
"""

from nearfin.grid_sets import Point
from nearfin.oracles import Tagged
from nearfin.witnesses import Contraction, Deletion, DirectSumWith, Truncation, transport, verify_certificate, witness

ops = [Truncation(1), DirectSumWith("toy"), Deletion((Point(1, 1), Point(2, 2), Point(3, 3)))]
for op in ops:
    gaps = []
    for k in range(1, 9):
        c = transport(witness(k), op)
        assert verify_certificate(c, 40).passed
        gaps.append(c.k)
    print(f"{op.describe():40s} {c.oracle:30s} gaps {gaps}")

###############################################################################
# Contraction needs genuine coloops; a free summand supplies them
# ----------------------------------------------------------------

c = transport(witness(3), DirectSumWith("free(2)"))
c = transport(c, Contraction((Tagged("R", 1),)))
print(c.oracle, c.transported_via, "gap", c.k)
print(verify_certificate(c, 40).text())
