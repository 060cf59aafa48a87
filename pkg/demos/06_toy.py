"""
A matroid on N with gap exactly two
===================================

Independent sets are the subsets of N missing at least two elements.  Every
subset of N is independent in the finitarization, so each base sits inside N
with exactly two points to spare.
"""

from nearfin.oracles import FREE_NAT, NAT, TOY, Cofinite, Finite
from nearfin.witnesses import base_gap, certify, verify_certificate

print(TOY.is_base(Cofinite(frozenset({1, 2}))), TOY.is_independent(Cofinite(frozenset({7}))))
print(TOY.is_independent(Finite(frozenset(range(1, 101)))), FREE_NAT.is_independent(Cofinite(frozenset({5}))))

for missing in ({1, 2}, {3, 99}, {10, 11}):
    B = Cofinite(frozenset(missing))
    print(sorted(missing), "gap", base_gap(B, TOY), NAT.diff_size(Cofinite(), B))

c = certify(TOY, Cofinite(), Cofinite(frozenset({1, 2})))
print(verify_certificate(c, 100).text())
