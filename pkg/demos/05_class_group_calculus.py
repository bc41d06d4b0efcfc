# The finite abelian group engine: subgroups, indices, quotients.
#
#   python3 demos/05_class_group_calculus.py
#
# Class groups arrive as explicit cyclic decompositions; subgroup
# membership and quotient structure are decided by an integer normal form
# of the generator matrix stacked with the ambient relations.

from selectis import FiniteAbelianGroup, join, power_subgroup, quotient, subgroup

g = FiniteAbelianGroup((4, 2))
s = subgroup(g, [(2, 0), (0, 1)])
print(f"in Z/4 + Z/2, <(2,0),(0,1)> has order {s.order} and index {s.index}")
print("  members:", sorted(s.elements()))

g33 = FiniteAbelianGroup((3, 3))
diag = subgroup(g33, [(1, 1)])
q = quotient(g33, diag)
print(f"\n(Z/3 + Z/3) / <(1,1)> = Z/{q.group.cyclic_orders[0]}")
for v in [(1, 0), (0, 1), (2, 2)]:
    print(f"  {v} projects to {q.project(v)}")

# p-th powers and joins are how the type group is built
g9 = FiniteAbelianGroup((9,))
cubes = power_subgroup(g9, 3)
print(f"\ncubes in Z/9: index {cubes.index}, members {sorted(cubes.elements())}")
print("quotient by cubes:", quotient(g9, cubes).group.cyclic_orders)

mixed = FiniteAbelianGroup((2, 4))
doubles = power_subgroup(mixed, 2)
print(f"\nsquares in Z/2 + Z/4: index {doubles.index}")
joined = join(doubles, subgroup(mixed, [(1, 0)]))
print(f"joined with <(1,0)>: index {joined.index}")
print("exponent of the quotient:", quotient(mixed, joined).group.exponent())
