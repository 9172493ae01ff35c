"""Nested sets and chambers of the positive root cone.

For small classical root systems print the number of maximal proper nested
sets, how many distinct basic subsets they produce, and the number of chambers
of the positive cone.  Then show how a single partition function value in B3
is assembled: the nested sets selected by the perturbed point, their torus subgroups and the quasipolynomial
valid on the chamber.
"""

from kostant import RootSystem
from kostant import nested, partition

print("system  MPNS  chambers")
for fam, rank in [("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 4)]:
    rs = RootSystem(fam, rank)
    print(f"  {fam}{rank}   {len(nested.maximal_proper_nested_sets(rs)):4d}  {nested.count_chambers(rs):8d}")

rs = RootSystem("B", 3)
b = (3, 5, 6)  # simple coordinates
a = tuple(sum(c * s[k] for c, s in zip(b, rs.simple_roots)) for k in range(rs.dim))
mpns = nested.maximal_proper_nested_sets(rs)
chosen = nested.select_mpns_lex(mpns, partition.lex_vectors(rs, b))
print()
print("B3, a =", [str(x) for x in a], "(simple coordinates", b, ")")
print(f"{len(chosen)} of {len(mpns)} nested sets contain the perturbed point in their cone")
for m in chosen:
    print("  basis", [rs.positive_roots[i] for i in m.theta], " vol", m.vol,
          " torus", len(partition.torus_subgroup(rs, m.theta)))
q = partition.kostant_partition_quasipoly(rs, a)
print("quasipolynomial in a[i]:", q)
print("value", q.evaluate(a), "dynamic programming", partition.kostant_partition_dp(rs, a))
