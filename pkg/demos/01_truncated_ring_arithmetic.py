# Exact arithmetic in Z/q^k, the finite-precision model of a local ring.
#
#   python3 demos/01_truncated_ring_arithmetic.py
#
# Everything below is exact modulo q^k: no floats, no rounding, and
# mixed-precision operands are rejected instead of silently truncated.

from selectis import LocalMatrix, LocalRing, conjugate, reduced_norm_preimage, residue

ring = LocalRing(q=3, k=2)  # the ring Z/9 with uniformizer 3
print(f"working in {ring}, modulus {ring.modulus}")

x = ring.scalar(2)
print(f"2^-1 = {x.inverse().value}  (check: 2*5 = {(x * x.inverse()).value} mod 9)")

for value in (1, 3, 6, 0):
    s = ring.scalar(value)
    print(f"valuation({value}) = {s.valuation()}   unit: {s.is_unit}")
print("note: valuation(0) is capped at the precision k, here 2")

# matrices: exact determinants detect non-invertibility over the local ring
m = LocalMatrix.from_rows(ring, [[0, 1], [3, 0]])
d = m.det()
print(f"\ndet [[0,1],[3,0]] = {d.value} mod 9, valuation {d.valuation()}, invertible: {m.is_invertible}")

# conjugation needs a unit determinant; the residue map commutes with it
u = LocalMatrix.from_rows(ring, [[1, 1], [0, 1]])
print(f"u^-1 m u = {conjugate(u, m).entries}")
print(f"residue of the conjugate: {residue(conjugate(u, m)).entries}")

# a diagonal witness with any prescribed determinant, even a non-unit
for f in (1, 2, 0):
    w = reduced_norm_preimage(ring.scalar(f), 3)
    print(f"diag witness for determinant {f}: {w.entries}, det = {w.det().value}")
