"""
The grid matroid M1 and the dominant-column matroid M
=====================================================

M1: a set is independent when its first n rows hold at most n points, for
every n.  M keeps the finite M1-sets and the infinite ones without a dominant
column; a set whose points lie eventually in column l must leave room for at
least l more points.
"""

from nearfin import grid_sets as gs
from nearfin import oracles
from nearfin.grid_sets import SetExpr
from nearfin.oracles import M, M1

full = SetExpr.column(3)
cut = SetExpr.column(3, 4)      # column 3 without its first 3 points
diag = SetExpr.ray(1, 1, 1)

for name, S in [("full column 3", full), ("column 3 from row 4", cut), ("diagonal", diag)]:
    print(f"{name:22s} M1: indep={M1.is_independent(S)!s:5} base={M1.is_base(S)!s:5}  "
          f"M: indep={M.is_independent(S)!s:5} base={M.is_base(S)}")

###############################################################################
# Capacity: how many points can still be added in M1
# --------------------------------------------------

for S in (cut, SetExpr.column(3, 6), SetExpr.finite([(5, 5)])):
    print(S, "capacity", oracles.m1_capacity(S))

###############################################################################
# Augmentation
# ------------
# Given an independent S and a base B of M, m_augment returns the first point
# of B outside S (row-major) that keeps S independent.

S = SetExpr.column(2, 5)
B = SetExpr.column(2, 3)
p = oracles.m_augment(S, B)
print("augment", S, "from", B, "->", p)
print(M.is_independent(gs.insert(S, p)))

print("augment", SetExpr.column(4, 6), "from the diagonal ->", oracles.m_augment(SetExpr.column(4, 6), diag))
