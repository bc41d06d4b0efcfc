# The four equivalent optimality tests, on the classic 2x2 worked example.
#
#   python3 demos/03_optimality_criteria_worked_example.py
#
# An embedding of a rank-2 order sends e_2 to A = [[a, b], [c, d]]; it is
# optimal exactly when one of b, c, d - a is a unit.  The six position
# selections below are the whole story: their determinants are
# b, c, d-a, 0, -b, -c, so a unit among them is a unit among b, c, d-a.

import itertools

from selectis import (
    LocalMatrix,
    LocalRing,
    basis_action_det_expansion,
    basis_action_matrix,
    is_optimal_independence,
    is_optimal_minor,
    is_optimal_oracle,
    quadratic_criterion,
    regular_representation,
    selection_matrix,
)
from selectis.sampling import embedding_from_matrix

ring = LocalRing(3, 1)
emb = embedding_from_matrix(LocalMatrix.from_rows(ring, [[2, 1], [0, 2]]))
print("A =", emb.matrices[1].entries, " (defining polynomial coeffs:", emb.order.monic_poly, ")")

positions = [(s, t) for s in (1, 2) for t in (1, 2)]
for selection in itertools.combinations(positions, 2):
    det = selection_matrix(emb, selection).det()
    print(f"  selection {selection}: det = {det.value}  unit: {det.is_unit}")

print("\nindependence:", is_optimal_independence(emb))
print("minor search:", is_optimal_minor(emb))
print("brute-force oracle:", is_optimal_oracle(emb))
print("closed form (b, c or d-a unit):", quadratic_criterion(emb))

# a non-optimal embedding: scalar residue, with the dependence certificate
bad = embedding_from_matrix(LocalMatrix.diagonal(ring, [2, 2]))
print("\nA = 2I:", is_optimal_minor(bad))

# the column matrix (A_1 alpha | A_2 alpha | ...) and its determinant
# expansion; an invertible instance conjugates the embedding onto the
# regular representation, which is how local uniqueness is proved
order = emb.order
reg = regular_representation(order)
alpha = (1, 0)
v = basis_action_matrix(reg, alpha)
print("\nregular representation with alpha = e_1 gives V =", v.entries)
for alpha in itertools.product(range(3), repeat=2):
    direct = basis_action_matrix(emb, alpha).det().value
    expanded = basis_action_det_expansion(emb, alpha).value
    assert direct == expanded
    print(f"  alpha={alpha}: det V = {direct} (expansion agrees)")
