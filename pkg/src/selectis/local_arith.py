"""Exact arithmetic in truncated local rings and matrices over them.

The ring here is ``Z/q^k`` for a prime ``q`` and a precision ``k >= 1``,
used as a finite-precision model of a complete discrete valuation ring
with uniformizer ``q``.  Every operation is exact modulo ``q^k``; nothing
is ever rounded.  Valuations are capped at the precision, with
``valuation(0) = k`` by convention.

Matrices over the truncated ring support exact multiplication,
determinants and conjugation; reduction modulo ``q`` lands in
:class:`ResidueMatrix`, matrices over the ``q``-element field, where rank
and dependence computations are performed by Gaussian elimination.

>>> ring = LocalRing(3, 2)
>>> ring.scalar(2).inverse().value
5
>>> ring.scalar(3).valuation()
1
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    NonInvertibleConjugator,
    NonInvertibleMatrix,
    NonUnitInverse,
    RingMismatch,
)


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class LocalRing:
    """The ring ``Z/q^k``: prime residue characteristic ``q``, precision ``k``."""

    q: int
    k: int

    def __post_init__(self) -> None:
        if not is_prime(self.q):
            raise ValueError(f"residue characteristic {self.q} is not prime")
        if self.k < 1:
            raise ValueError(f"precision must be >= 1, got {self.k}")

    @property
    def modulus(self) -> int:
        return self.q**self.k

    def scalar(self, value: int) -> LocalScalar:
        return LocalScalar(self, value % self.modulus)

    def zero(self) -> LocalScalar:
        return LocalScalar(self, 0)

    def one(self) -> LocalScalar:
        return LocalScalar(self, 1 % self.modulus)

    def __repr__(self) -> str:
        return f"LocalRing(q={self.q}, k={self.k})"


@dataclass(frozen=True)
class LocalScalar:
    """A residue in ``[0, q^k)`` carrying its ring.

    Mixed-precision arithmetic is rejected (:class:`RingMismatch`) rather
    than silently truncated; plain ints coerce into the ring of the other
    operand.
    """

    ring: LocalRing
    value: int

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.ring.modulus:
            raise ValueError(f"residue {self.value} outside [0, {self.ring.modulus})")

    def _coerce(self, other: LocalScalar | int) -> LocalScalar:
        if isinstance(other, int):
            return self.ring.scalar(other)
        if not isinstance(other, LocalScalar):
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        return other

    def __add__(self, other: LocalScalar | int) -> LocalScalar:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.ring.scalar(self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other: LocalScalar | int) -> LocalScalar:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.ring.scalar(self.value - other.value)

    def __rsub__(self, other: LocalScalar | int) -> LocalScalar:
        return (-self) + other

    def __neg__(self) -> LocalScalar:
        return self.ring.scalar(-self.value)

    def __mul__(self, other: LocalScalar | int) -> LocalScalar:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.ring.scalar(self.value * other.value)

    __rmul__ = __mul__

    @property
    def is_unit(self) -> bool:
        return self.value % self.ring.q != 0

    def valuation(self) -> int:
        """q-adic valuation capped at the precision; valuation(0) = k."""
        if self.value == 0:
            return self.ring.k
        v, x = 0, self.value
        while x % self.ring.q == 0:
            x //= self.ring.q
            v += 1
        return v

    def inverse(self) -> LocalScalar:
        if not self.is_unit:
            raise NonUnitInverse(f"{self.value} is divisible by {self.ring.q}")
        return self.ring.scalar(pow(self.value, -1, self.ring.modulus))

    def residue(self) -> int:
        return self.value % self.ring.q

    def __repr__(self) -> str:
        return f"LocalScalar({self.value} mod {self.ring.q}^{self.ring.k})"


# --- raw modular matrix kernels -------------------------------------------
#
# The classes below stay thin; the actual arithmetic happens on nested
# tuples of ints so that the exhaustive sweeps elsewhere stay cheap.


def _mat_mul(a, b, m: int):
    n = len(a)
    inner = len(b)
    cols = len(b[0]) if inner else 0
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(inner)) % m for j in range(cols))
        for i in range(n)
    )


def _mat_add(a, b, m: int):
    return tuple(tuple((x + y) % m for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mat_scale(c: int, a, m: int):
    return tuple(tuple((c * x) % m for x in row) for row in a)


def _identity(n: int, m: int):
    one = 1 % m
    return tuple(tuple(one if i == j else 0 for j in range(n)) for i in range(n))


def _det_cofactor(a, m: int) -> int:
    n = len(a)
    if n == 1:
        return a[0][0] % m
    if n == 2:
        return (a[0][0] * a[1][1] - a[0][1] * a[1][0]) % m
    total = 0
    for j in range(n):
        if a[0][j] == 0:
            continue
        minor = tuple(row[:j] + row[j + 1 :] for row in a[1:])
        term = a[0][j] * _det_cofactor(minor, m)
        total += term if j % 2 == 0 else -term
    return total % m


def _det_bareiss_int(a) -> int:
    # Fraction-free elimination over the integer lift; all divisions exact.
    rows = [list(r) for r in a]
    n = len(rows)
    sign = 1
    prev = 1
    for t in range(n - 1):
        if rows[t][t] == 0:
            for i in range(t + 1, n):
                if rows[i][t] != 0:
                    rows[t], rows[i] = rows[i], rows[t]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(t + 1, n):
            for j in range(t + 1, n):
                rows[i][j] = (rows[i][j] * rows[t][t] - rows[i][t] * rows[t][j]) // prev
            rows[i][t] = 0
        prev = rows[t][t]
    return sign * rows[n - 1][n - 1]


def _mat_det(a, m: int) -> int:
    n = len(a)
    if n == 0:
        return 1 % m
    if n <= 4:
        return _det_cofactor(a, m)
    return _det_bareiss_int(a) % m


def _mat_inverse(a, m: int, q: int):
    """Gauss-Jordan with unit pivots; valid over Z/q^k exactly when det is a unit."""
    n = len(a)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] % q != 0), None)
        if piv is None:
            raise NonInvertibleMatrix("no unit pivot; determinant is not a unit")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], -1, m)
        aug[col] = [x * inv % m for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(x - f * y) % m for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def _row_reduce(rows, q: int):
    """Return (rank, rref, pivot_columns) of an integer matrix over F_q."""
    mat = [[x % q for x in row] for row in rows]
    ncols = len(mat[0]) if mat else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][col], -1, q)
        mat[r] = [v * inv % q for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [(v - f * w) % q for v, w in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    return r, mat, pivots


# --- matrices over the truncated ring --------------------------------------


@dataclass(frozen=True)
class LocalMatrix:
    """An ``n x n`` matrix over ``Z/q^k`` with entries stored as residues."""

    ring: LocalRing
    entries: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    @classmethod
    def from_rows(cls, ring: LocalRing, rows: Iterable[Iterable[int]]) -> LocalMatrix:
        m = ring.modulus
        ent = tuple(tuple(int(x) % m for x in row) for row in rows)
        n = len(ent)
        if any(len(row) != n for row in ent):
            raise DimensionMismatch("matrix must be square")
        return cls(ring, ent)

    @classmethod
    def identity(cls, ring: LocalRing, n: int) -> LocalMatrix:
        return cls(ring, _identity(n, ring.modulus))

    @classmethod
    def diagonal(cls, ring: LocalRing, values: Sequence[int]) -> LocalMatrix:
        m = ring.modulus
        n = len(values)
        return cls(
            ring,
            tuple(
                tuple(values[i] % m if i == j else 0 for j in range(n)) for i in range(n)
            ),
        )

    def _check(self, other: LocalMatrix) -> None:
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if self.n != other.n:
            raise DimensionMismatch(f"{self.n} vs {other.n}")

    def __matmul__(self, other: LocalMatrix) -> LocalMatrix:
        self._check(other)
        return LocalMatrix(self.ring, _mat_mul(self.entries, other.entries, self.ring.modulus))

    def __add__(self, other: LocalMatrix) -> LocalMatrix:
        self._check(other)
        return LocalMatrix(self.ring, _mat_add(self.entries, other.entries, self.ring.modulus))

    def __sub__(self, other: LocalMatrix) -> LocalMatrix:
        self._check(other)
        neg = _mat_scale(-1, other.entries, self.ring.modulus)
        return LocalMatrix(self.ring, _mat_add(self.entries, neg, self.ring.modulus))

    def __pow__(self, exponent: int) -> LocalMatrix:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = _identity(self.n, self.ring.modulus)
        base = self.entries
        e = exponent
        while e:
            if e & 1:
                result = _mat_mul(result, base, self.ring.modulus)
            base = _mat_mul(base, base, self.ring.modulus)
            e >>= 1
        return LocalMatrix(self.ring, result)

    def scale(self, c: LocalScalar | int) -> LocalMatrix:
        value = c.value if isinstance(c, LocalScalar) else int(c)
        return LocalMatrix(self.ring, _mat_scale(value, self.entries, self.ring.modulus))

    def entry(self, i: int, j: int) -> LocalScalar:
        return LocalScalar(self.ring, self.entries[i][j])

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product, the vector given and returned as residues."""
        if len(vector) != self.n:
            raise DimensionMismatch(f"vector length {len(vector)} vs dimension {self.n}")
        m = self.ring.modulus
        return tuple(
            sum(self.entries[i][j] * (vector[j] % m) for j in range(self.n)) % m
            for i in range(self.n)
        )

    def det(self) -> LocalScalar:
        return LocalScalar(self.ring, _mat_det(self.entries, self.ring.modulus))

    @property
    def is_invertible(self) -> bool:
        return self.det().is_unit

    def inverse(self) -> LocalMatrix:
        inv = _mat_inverse(self.entries, self.ring.modulus, self.ring.q)
        return LocalMatrix(self.ring, inv)

    def residue(self) -> ResidueMatrix:
        q = self.ring.q
        return ResidueMatrix(q, tuple(tuple(x % q for x in row) for row in self.entries))

    def __repr__(self) -> str:
        rows = ", ".join(str(list(r)) for r in self.entries)
        return f"LocalMatrix(q={self.ring.q}, k={self.ring.k}, [{rows}])"


@dataclass(frozen=True)
class ResidueMatrix:
    """A square matrix over the ``q``-element residue field."""

    q: int
    entries: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    @classmethod
    def from_rows(cls, q: int, rows: Iterable[Iterable[int]]) -> ResidueMatrix:
        ent = tuple(tuple(int(x) % q for x in row) for row in rows)
        n = len(ent)
        if any(len(row) != n for row in ent):
            raise DimensionMismatch("matrix must be square")
        return cls(q, ent)

    @classmethod
    def identity(cls, q: int, n: int) -> ResidueMatrix:
        return cls(q, _identity(n, q))

    def __matmul__(self, other: ResidueMatrix) -> ResidueMatrix:
        if self.q != other.q or self.n != other.n:
            raise DimensionMismatch("incompatible residue matrices")
        return ResidueMatrix(self.q, _mat_mul(self.entries, other.entries, self.q))

    def __pow__(self, exponent: int) -> ResidueMatrix:
        result = _identity(self.n, self.q)
        base = self.entries
        e = exponent
        while e:
            if e & 1:
                result = _mat_mul(result, base, self.q)
            base = _mat_mul(base, base, self.q)
            e >>= 1
        return ResidueMatrix(self.q, result)

    def det(self) -> int:
        return _mat_det(self.entries, self.q)

    def inverse(self) -> ResidueMatrix:
        return ResidueMatrix(self.q, _mat_inverse(self.entries, self.q, self.q))

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def flatten(self) -> tuple[int, ...]:
        return tuple(x for row in self.entries for x in row)


def conjugate(u: LocalMatrix, m: LocalMatrix) -> LocalMatrix:
    """Return ``u^-1 @ m @ u``; the conjugator must have unit determinant."""
    if u.ring != m.ring:
        raise RingMismatch(f"{u.ring} vs {m.ring}")
    if u.n != m.n:
        raise DimensionMismatch(f"{u.n} vs {m.n}")
    if not u.is_invertible:
        raise NonInvertibleConjugator("conjugator determinant is not a unit")
    return u.inverse() @ m @ u


def conjugate_residue(u: ResidueMatrix, m: ResidueMatrix) -> ResidueMatrix:
    if u.q != m.q or u.n != m.n:
        raise DimensionMismatch("incompatible residue matrices")
    if u.det() == 0:
        raise NonInvertibleConjugator("conjugator is singular over the residue field")
    return u.inverse() @ m @ u


def residue(matrix: LocalMatrix) -> ResidueMatrix:
    """Reduce every entry modulo the maximal ideal (q)."""
    return matrix.residue()


def _common_shape(matrices: Sequence[ResidueMatrix]) -> tuple[int, int]:
    if not matrices:
        raise DimensionMismatch("need at least one matrix")
    q, n = matrices[0].q, matrices[0].n
    for mat in matrices[1:]:
        if mat.q != q or mat.n != n:
            raise DimensionMismatch("residue matrices disagree in q or dimension")
    return q, n


def residue_rank(matrices: Sequence[ResidueMatrix]) -> int:
    """Rank over F_q of the matrix whose rows are the flattened inputs."""
    q, _ = _common_shape(matrices)
    rank, _, _ = _row_reduce([mat.flatten() for mat in matrices], q)
    return rank


def residue_dependence(matrices: Sequence[ResidueMatrix]) -> tuple[int, ...] | None:
    """A nonzero vector ``c`` with ``sum c_i M_i = 0`` over F_q, or None.

    The matrices are placed as columns of a linear system and the kernel
    vector attached to the first free column is returned, normalized so
    its last nonzero coordinate is 1.

    >>> z = ResidueMatrix.from_rows(3, [[0, 0], [0, 0]])
    >>> i = ResidueMatrix.identity(3, 2)
    >>> residue_dependence([i, z])
    (0, 1)
    """
    q, n = _common_shape(matrices)
    cols = [mat.flatten() for mat in matrices]
    system = [[cols[j][pos] for j in range(len(cols))] for pos in range(n * n)]
    rank, rref, pivots = _row_reduce(system, q)
    if rank == len(cols):
        return None
    free = next(j for j in range(len(cols)) if j not in pivots)
    c = [0] * len(cols)
    c[free] = 1
    for row, pcol in enumerate(pivots):
        if pcol < free:
            c[pcol] = (-rref[row][free]) % q
    return tuple(c)


def reduced_norm_preimage(f: LocalScalar, n: int) -> LocalMatrix:
    """The diagonal witness ``diag(f, 1, ..., 1)`` whose determinant is ``f``."""
    return LocalMatrix.diagonal(f.ring, [f.value] + [1] * (n - 1))
