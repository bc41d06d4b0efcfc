# Rank-n commutative orders from structure constants, and what their
# reductions mod q look like.
#
#   python3 demos/02_orders_and_their_residue_algebras.py

from selectis import LocalRing, classify_residue_algebra, from_monic_poly, from_structure_constants

ring = LocalRing(3, 2)

# The monogenic constructor: R[x]/(f) on the basis 1, x, ..., x^(n-1).
# a_0 = 8 is -1 mod 9, so this is x^2 - 1.
order = from_monic_poly(ring, [8, 0])
print("x^2 - 1 over Z/9:")
print("  e_2 * e_2 =", order.structure_constants[1][1], " (coordinates over the basis)")
print("  validates:", order.validate().ok)

# Finite precision can merge orders: x^2 - 9 is indistinguishable from x^2 at k = 2.
collapsed = from_monic_poly(ring, [-9, 0])
print("\nx^2 - 9 at precision 2 has e_2*e_2 =", collapsed.structure_constants[1][1])

# The residue algebra S/qS drives all the local embedding theory.
for q, coeffs, label in [
    (3, [2, 0], "x^2 - 1"),
    (2, [1, 1], "x^2 + x + 1"),
    (3, [0, 0], "x^2"),
    (2, [1, 0, 0], "x^3 + 1"),
]:
    klass = classify_residue_algebra(from_monic_poly(LocalRing(q, 1), coeffs))
    warn = "  [precision-sensitive]" if klass.precision_warning else ""
    print(f"\n{label} mod {q}: {klass.tag.value}{warn}")
    print(f"  {klass.note}; roots: {list(klass.roots)}")

# Structure constants can also be given directly; axioms are checked
# exhaustively and the first violated identity is reported.
bad = from_structure_constants(
    LocalRing(2, 1),
    [
        [[1, 0], [0, 0]],  # e_1 * e_2 = 0 breaks the unit law
        [[0, 0], [1, 0]],
    ],
)
report = bad.validate()
print(f"\nbroken table: ok={report.ok}, {report.violation.kind} at {report.violation.indices}")
print(" ", report.violation.message)
