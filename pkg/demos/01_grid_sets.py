"""
Infinite subsets of the grid
============================

Sets live on N x N with 1-based (row, col) coordinates.  A set is a finite
part plus a few tails (columns or rays, one point per row) minus finitely
many exceptions.
"""

from nearfin import grid_sets as gs
from nearfin.grid_sets import ColumnTail, Point, SetExpr

# column 3 from row 4 on, and the diagonal
col = SetExpr.column(3, 4)
diag = SetExpr.ray(1, 1, 1)
print(col, diag)

# the same set written loosely normalizes to one canonical form
messy = SetExpr(frozenset({Point(6, 3), Point(1, 1)}), (ColumnTail(3, 4), ColumnTail(3, 9)), frozenset({Point(1, 1)}))
print(gs.normalize(messy) == col)

# rows 1..n of a set are always finite
print(sorted(gs.materialize_rows(diag, 4)))

###############################################################################
# Deficiency profiles
# -------------------
# d(n) = n - (number of points in the first n rows).  After a stabilization
# row the profile is affine, so it is stored as a finite prefix plus a slope.

prof = gs.deficiency_profile(col)
print([prof.at(n) for n in range(1, 9)], "eventually", prof.eventual_value)

two = gs.normalize(SetExpr(tails=(ColumnTail(1, 1), ColumnTail(2, 1))))
print("two columns: slope", gs.deficiency_profile(two).eventual_slope)

###############################################################################
# Differences and containment
# ---------------------------

print(gs.diff_points(SetExpr.column(3), col))        # the three cut-off points
print(gs.diff_size(SetExpr.column(1), diag))         # inf: the sets part ways
print(gs.is_subset(col, SetExpr.column(3)))

# sets have a small text syntax and a JSON record
S = gs.parse_set("coltail 3 4; point 1 1; except 6 3")
print(gs.format_set(S))
print(gs.to_record(S))
