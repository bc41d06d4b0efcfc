# Local uniqueness: all optimal embeddings of one order are conjugate.
#
#   python3 demos/04_counting_conjugacy_orbits.py
#
# For a monogenic order the embedding is pinned by the image of x, so we
# can scan every matrix over the residue field, keep the solutions of
# f(A) = 0, and partition the optimal ones under conjugation by the full
# invertible group.  The orbit count m comes out 1 whenever the residue
# algebra is split etale or an unramified field - and the sweep shows it.

from selectis import (
    AlgebraKind,
    LocalRing,
    count_orbits,
    enumerate_precision_embeddings,
    enumerate_residue_embeddings,
    from_monic_poly,
    local_embedding_number,
)

EXAMPLES = [
    (2, [1, 1], "x^2 + x + 1 (unramified field)"),
    (3, [2, 0], "x^2 - 1 (split etale)"),
    (2, [1, 0, 0], "x^3 + 1 (etale, mixed factors)"),
    (2, [0, 0], "x^2 (nilpotent case)"),
]

for q, coeffs, label in EXAMPLES:
    order = from_monic_poly(LocalRing(q, 1), coeffs)
    candidates = enumerate_residue_embeddings(order)
    result = count_orbits(candidates)
    print(f"{label} over F_{q}:")
    print(
        f"  solutions {result.total_embeddings}, optimal {result.optimal_embeddings}, "
        f"orbits m = {result.orbit_count}"
    )
    for rep in result.representatives:
        print(f"  representative generator image: {rep.matrices[1].entries}")

# the same count survives one more digit of precision (mod q^2)
order = from_monic_poly(LocalRing(3, 2), [8, 0])  # x^2 - 1 mod 9
lifted = count_orbits(enumerate_precision_embeddings(order, 2))
print(
    f"\nx^2 - 1 mod 9: {lifted.optimal_embeddings} optimal homomorphisms, "
    f"m = {lifted.orbit_count} under the invertible group mod 9"
)

# the division-algebra side has no sweep: the unique maximal order decides
for q, coeffs, closed in [(2, [1, 1], True), (3, [2, 0], True), (2, [1, 1], False)]:
    order = from_monic_poly(LocalRing(q, 1), coeffs)
    result = local_embedding_number(order, AlgebraKind.DIVISION, integrally_closed=closed)
    print(f"division side, f={coeffs}, integrally closed={closed}: count {result.count} ({result.note})")
