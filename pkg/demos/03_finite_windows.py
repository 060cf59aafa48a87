"""
Brute force on finite windows
=============================

Restricting an oracle to the window [1..R] x [1..C] gives an explicit finite
matroid whose independent sets are stored as a boolean array over bitmasks.
"""

from nearfin import finite_engine as fe
from nearfin.combinators import parse_oracle, restrict_window
from nearfin.oracles import M, M1

fm = restrict_window(M1, 2, 2)
print(fm, "bases:", [sorted(b) for b in fe.bases(fm)])
print(fe.check_axioms(fm).text())

# finite sets are independent in M exactly when they are in M1
print(restrict_window(M, 4, 4) == restrict_window(M1, 4, 4))

###############################################################################
# Duals, loops and coloops
# ------------------------

d = fe.dualize(fm)
print("dual bases:", [sorted(b) for b in fe.bases(d)])
print("involution:", fe.dualize(d) == fm, " coloops:", set(fe.coloops(fm)))

###############################################################################
# A family that is not a matroid
# ------------------------------

bad = restrict_window(parse_oracle("badfamily"), 1, 2)
print(fe.check_axioms(bad).text())

###############################################################################
# Sampled cross-check against the enumerated prefix rule
# ------------------------------------------------------

print(fe.crosscheck(parse_oracle("trunc(2,m1)"), 4, 4, 2000, seed=0).text())
