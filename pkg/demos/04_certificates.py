"""
Unbounded base gaps
===================

B = column k without its first k points is a base of M, and the whole column
k is a base of M1, the finitarization of M.  The two differ in exactly k
points, so no single bound k covers every base pair.
"""

from nearfin import grid_sets as gs
from nearfin.grid_sets import SetExpr
from nearfin.witnesses import Certificate, base_gap, sample_completion, verify_certificate, witness

import numpy as np

c = witness(5)
print(c.to_json())
print(verify_certificate(c, 100).text())

print("gaps:", [witness(k).k for k in range(1, 11)])

###############################################################################
# Tampering is caught: verification never trusts the stored verdicts
# -------------------------------------------------------------------

bad = Certificate.from_json(c.to_json())
bad.B = SetExpr.column(5, 5)
print(verify_certificate(bad, 20).text())

###############################################################################
# Every base of M still has a finite gap
# --------------------------------------

rng = np.random.default_rng(0)
for B in (SetExpr.column(3, 4), SetExpr.ray(1, 1, 1), gs.parse_set("coltail 7 9; point 1 2")):
    F = sample_completion(B, rng)
    print(B, "gap", base_gap(B), "sampled completion differs by", gs.diff_size(F, B))
