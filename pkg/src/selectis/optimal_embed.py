"""Optimal embeddings of local orders into matrix rings.

An embedding sends the order basis ``e_1, ..., e_n`` to matrices
``A_1, ..., A_n`` over ``Z/q^k`` respecting the multiplication table, with
``A_1 = I``.  It is *optimal* when the order is cut out exactly: no
element with a denominator maps into the matrix ring.  Four equivalent
tests are implemented:

* ``is_optimal_independence`` -- the reductions ``A_i mod q`` are linearly
  independent over the residue field;
* ``is_optimal_minor`` -- some n positions, searched in lexicographic
  order, yield an n x n coordinate matrix with unit determinant (returns
  the witness selection, or a dependence vector on failure);
* ``is_optimal_oracle`` -- brute force over all q^n - 1 nonzero residue
  vectors, the independent oracle the other criteria are validated
  against;
* ``quadratic_criterion`` -- the closed form for n = 2: one of ``b``,
  ``c``, ``d - a`` is a unit, reading ``A_2 = [[a, b], [c, d]]``.

The module also hosts the regular representation (the canonical optimal
embedding), exhaustive enumeration of residue-level embeddings, and
conjugacy-orbit counting under the invertible group at a chosen
truncation, which realizes the local uniqueness statement m = 1.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    DimensionMismatch,
    InvalidOrder,
    NotAHomomorphism,
    SizeGuardExceeded,
    WrongDimension,
)
from .local_arith import (
    LocalMatrix,
    LocalRing,
    ResidueMatrix,
    _identity,
    _mat_det,
    _mat_inverse,
    _mat_mul,
    residue_dependence,
    residue_rank,
)
from .orders import (
    AlgebraClass,
    OrderPresentation,
    classify_residue_algebra,
    from_monic_poly,
    from_structure_constants,
)

# Desk-scale guard: exhaustive sweeps never scan more candidate matrices
# than this (q^k)^(n^2) bound.
MAX_SWEEP = 2_000_000


@dataclass(frozen=True)
class LocalEmbedding:
    """Matrices ``A_1..A_n`` representing the order basis."""

    order: OrderPresentation
    matrices: tuple[LocalMatrix, ...]

    @property
    def ring(self) -> LocalRing:
        return self.matrices[0].ring

    @property
    def n(self) -> int:
        return self.order.n

    def residues(self) -> tuple[ResidueMatrix, ...]:
        return tuple(a.residue() for a in self.matrices)

    def identity_ok(self) -> bool:
        return self.matrices[0] == LocalMatrix.identity(self.ring, self.matrices[0].n)

    def homomorphism_defect(self) -> tuple[int, int] | None:
        """First (i, j), 1-based, where A_i A_j misses the structure constants."""
        c = self.order.structure_constants
        mats = self.matrices
        mm = self.ring.modulus
        dim = mats[0].n
        for i in range(self.n):
            for j in range(self.n):
                product = _mat_mul(mats[i].entries, mats[j].entries, mm)
                for r in range(dim):
                    for col in range(dim):
                        want = sum(
                            c[i][j][l] * mats[l].entries[r][col] for l in range(self.n)
                        ) % mm
                        if product[r][col] != want:
                            return (i + 1, j + 1)
        return None

    def is_homomorphism(self) -> bool:
        return self.identity_ok() and self.homomorphism_defect() is None


def _require_homomorphism(emb: LocalEmbedding) -> None:
    if not emb.identity_ok():
        raise NotAHomomorphism("A_1 must be the identity matrix")
    defect = emb.homomorphism_defect()
    if defect is not None:
        raise NotAHomomorphism(f"A_{defect[0]}*A_{defect[1]} violates the multiplication table")


def embedding_from_generator(order: OrderPresentation, generator: LocalMatrix) -> LocalEmbedding:
    """Embedding of a monogenic order determined by the image of ``x``."""
    if not order.is_monogenic:
        raise InvalidOrder("generator form requires a monogenic order")
    return LocalEmbedding(order, tuple(generator**i for i in range(order.n)))


def regular_representation(order: OrderPresentation) -> LocalEmbedding:
    """The order acting on itself: column j of A_i holds e_i * e_j.

    The first column of ``A_i`` is the i-th standard vector, so an element
    with any non-integral coordinate maps outside the matrix ring; the
    result is always optimal.
    """
    check = order.validate()
    if not check.ok:
        raise InvalidOrder(check.violation.message)
    c = order.structure_constants
    n = order.n
    mats = tuple(
        LocalMatrix.from_rows(
            order.ring, [[c[i][j][l] for j in range(n)] for l in range(n)]
        )
        for i in range(n)
    )
    return LocalEmbedding(order, mats)


# --- the four optimality criteria -------------------------------------------


@dataclass(frozen=True)
class MinorFound:
    """Positions (row, col), 1-based, whose coordinate matrix has unit det."""

    positions: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class DependenceFound:
    """Nonzero residue coefficients with ``sum c_i A_i = 0 mod q``."""

    coefficients: tuple[int, ...]


OptimalityWitness = MinorFound | DependenceFound


def is_optimal_independence(emb: LocalEmbedding) -> bool:
    _require_homomorphism(emb)
    return residue_rank(emb.residues()) == emb.n


def selection_matrix(
    emb: LocalEmbedding, positions: tuple[tuple[int, int], ...]
) -> LocalMatrix:
    """Row j collects entry (s_j, t_j) of every A_i (positions 1-based)."""
    if len(positions) != emb.n:
        raise DimensionMismatch(f"need {emb.n} positions, got {len(positions)}")
    rows = [
        [emb.matrices[i].entries[s - 1][t - 1] for i in range(emb.n)]
        for (s, t) in positions
    ]
    return LocalMatrix.from_rows(emb.ring, rows)


def is_optimal_minor(emb: LocalEmbedding) -> tuple[bool, OptimalityWitness]:
    """Search all position selections in lexicographic order.

    Lexicographic ordering pins the witness: swapping two selected
    positions only flips the sign of the determinant, so the first unit
    selection is canonical.
    """
    _require_homomorphism(emb)
    q = emb.ring.q
    res = [mat.entries for mat in emb.residues()]
    n = emb.n
    dim = emb.matrices[0].n
    all_positions = [(s, t) for s in range(1, dim + 1) for t in range(1, dim + 1)]
    for selection in itertools.combinations(all_positions, n):
        rows = [[res[i][s - 1][t - 1] for i in range(n)] for (s, t) in selection]
        if _mat_det(rows, q) != 0:
            return True, MinorFound(selection)
    dep = residue_dependence(emb.residues())
    assert dep is not None  # no unit minor forces a linear dependence
    return False, DependenceFound(dep)


def is_optimal_oracle(emb: LocalEmbedding) -> bool:
    """Exhaustive scan: some nonzero residue vector kills the matrices
    exactly when an element with denominator q maps into the matrix ring.
    """
    _require_homomorphism(emb)
    q = emb.ring.q
    res = [mat.entries for mat in emb.residues()]
    n = emb.n
    dim = emb.matrices[0].n
    for coeffs in itertools.product(range(q), repeat=n):
        if not any(coeffs):
            continue
        if all(
            sum(coeffs[i] * res[i][r][c] for i in range(n)) % q == 0
            for r in range(dim)
            for c in range(dim)
        ):
            return False
    return True


def quadratic_criterion(emb: LocalEmbedding) -> bool:
    """n = 2 closed form: b, c or d - a is a unit in A_2 = [[a, b], [c, d]]."""
    if emb.n != 2 or emb.matrices[0].n != 2:
        raise WrongDimension("closed form only covers 2 x 2 embeddings")
    _require_homomorphism(emb)
    (a, b), (c, d) = emb.matrices[1].entries
    q = emb.ring.q
    return b % q != 0 or c % q != 0 or (d - a) % q != 0


# --- action on column vectors ------------------------------------------------


def basis_action_matrix(emb: LocalEmbedding, alpha) -> LocalMatrix:
    """The matrix whose i-th column is ``A_i @ alpha``.

    Invertibility of this matrix for some alpha is what conjugates an
    optimal embedding onto the regular representation.
    """
    cols = [mat.apply(alpha) for mat in emb.matrices]
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(len(alpha))]
    return LocalMatrix.from_rows(emb.ring, rows)


def basis_action_det_expansion(emb: LocalEmbedding, alpha):
    """Evaluate det of :func:`basis_action_matrix` by the selection expansion.

    Row indices are fixed to s_i = i while the column indices range over
    all n-tuples; each term is the selection determinant times the matching
    alpha coordinates.  Agrees entrywise with the direct determinant.
    """
    ring = emb.ring
    n = emb.n
    total = ring.zero()
    for ts in itertools.product(range(1, n + 1), repeat=n):
        positions = tuple((i + 1, ts[i]) for i in range(n))
        term = selection_matrix(emb, positions).det()
        for t in ts:
            term = term * int(alpha[t - 1])
        total = total + term
    return total


# --- enumeration and orbit counting ------------------------------------------


@dataclass(frozen=True)
class CandidateEmbedding:
    """One solution of f(A) = 0 at the sweep precision, with flags.

    At residue level injectivity of the induced algebra map coincides with
    the optimality criterion (both say the powers of A are independent);
    degenerate solutions such as A = 0 for f = x^2 fail both.
    """

    embedding: LocalEmbedding
    optimal: bool
    injective: bool


@dataclass(frozen=True)
class OrbitCount:
    """Conjugacy-orbit census of the optimal embeddings at one precision."""

    total_embeddings: int
    optimal_embeddings: int
    orbit_count: int
    representatives: tuple[LocalEmbedding, ...]
    precision: int

    @property
    def m(self) -> int:
        return self.orbit_count


def _guard_sweep(order: OrderPresentation, precision: int) -> int:
    if not order.is_monogenic:
        raise InvalidOrder("enumeration requires a monogenic order")
    if order.n > 3 or order.ring.q > 5:
        raise SizeGuardExceeded("enumeration limited to n <= 3, q <= 5")
    if not 1 <= precision <= order.ring.k:
        raise ValueError(f"precision must lie in [1, {order.ring.k}]")
    mm = order.ring.q**precision
    if mm ** (order.n * order.n) > MAX_SWEEP:
        raise SizeGuardExceeded(
            f"candidate space {mm}^{order.n * order.n} exceeds {MAX_SWEEP}"
        )
    return mm


def _power_tuple(entries, count: int, mm: int):
    powers = [_identity(len(entries), mm), entries]
    for _ in range(count - 2):
        powers.append(_mat_mul(powers[-1], entries, mm))
    return powers[:count]


def enumerate_precision_embeddings(
    order: OrderPresentation, precision: int
) -> list[CandidateEmbedding]:
    """All homomorphisms ``x -> A`` over ``Z/q^precision``, with flags.

    Every matrix with ``f(A) = 0`` at the sweep modulus appears, including
    non-optimal ones; optimality is judged at residue level.
    """
    mm = _guard_sweep(order, precision)
    q = order.ring.q
    n = order.n
    a = [c % mm for c in order.monic_poly]
    ring = LocalRing(q, precision)
    truncated = order_at_precision(order, precision)
    out: list[CandidateEmbedding] = []
    for flat in itertools.product(range(mm), repeat=n * n):
        entries = tuple(flat[r * n : (r + 1) * n] for r in range(n))
        powers = _power_tuple(entries, n + 1, mm)
        top = powers[n]
        satisfied = True
        for r in range(n):
            for c in range(n):
                val = top[r][c] + sum(a[i] * powers[i][r][c] for i in range(n))
                if val % mm:
                    satisfied = False
                    break
            if not satisfied:
                break
        if not satisfied:
            continue
        mats = tuple(LocalMatrix(ring, p) for p in powers[:n])
        emb = LocalEmbedding(truncated, mats)
        rank = residue_rank(emb.residues())
        out.append(CandidateEmbedding(emb, optimal=rank == n, injective=rank == n))
    return out


def order_at_precision(order: OrderPresentation, precision: int) -> OrderPresentation:
    """The same presentation truncated to a coarser precision."""
    if precision == order.ring.k:
        return order
    ring = LocalRing(order.ring.q, precision)
    if order.is_monogenic:
        return from_monic_poly(ring, [c % ring.modulus for c in order.monic_poly])
    return from_structure_constants(ring, order.structure_constants)


def enumerate_residue_embeddings(order: OrderPresentation) -> list[CandidateEmbedding]:
    """Residue-level sweep (precision 1); the search space for orbit counts."""
    return enumerate_precision_embeddings(order, 1)


@lru_cache(maxsize=32)
def _invertible_group(q: int, n: int, precision: int):
    """All invertible matrices over Z/q^precision, paired with inverses."""
    mm = q**precision
    if mm ** (n * n) > MAX_SWEEP:
        raise SizeGuardExceeded(f"unit group sweep {mm}^{n * n} exceeds {MAX_SWEEP}")
    group = []
    for flat in itertools.product(range(mm), repeat=n * n):
        entries = tuple(flat[r * n : (r + 1) * n] for r in range(n))
        if _mat_det(entries, mm) % q == 0:
            continue
        group.append((entries, _mat_inverse(entries, mm, q)))
    return tuple(group)


def count_orbits(
    candidates: list[CandidateEmbedding], q: int | None = None, n: int | None = None
) -> OrbitCount:
    """Partition the optimal candidates into conjugacy orbits.

    Uses a direct sweep: the orbit of the lexicographically least
    unassigned representative is computed under the full invertible group
    and removed, so the returned representatives are pairwise
    non-conjugate by construction.
    """
    optimal = [c for c in candidates if c.optimal]
    if not optimal:
        if not candidates:
            return OrbitCount(0, 0, 0, (), 1)
        precision = candidates[0].embedding.ring.k
        return OrbitCount(len(candidates), 0, 0, (), precision)
    ring = optimal[0].embedding.ring
    q = ring.q if q is None else q
    dim = optimal[0].embedding.matrices[0].n
    precision = ring.k
    mm = q**precision
    group = _invertible_group(q, dim, precision)
    by_generator = {c.embedding.matrices[1].entries if len(c.embedding.matrices) > 1
                    else c.embedding.matrices[0].entries: c for c in optimal}
    remaining = set(by_generator)
    reps: list[LocalEmbedding] = []
    while remaining:
        key = min(remaining)
        reps.append(by_generator[key].embedding)
        orbit = {
            _mat_mul(_mat_mul(uinv, key, mm), u, mm) for (u, uinv) in group
        }
        remaining -= orbit
    return OrbitCount(
        total_embeddings=len(candidates),
        optimal_embeddings=len(optimal),
        orbit_count=len(reps),
        representatives=tuple(reps),
        precision=precision,
    )


# --- theorem-backed local counts ----------------------------------------------


class AlgebraKind(enum.Enum):
    MATRIX = "matrix"
    DIVISION = "division"


@dataclass(frozen=True)
class LocalEmbeddingNumber:
    """Local conjugacy-class count with the applicability flag.

    ``theorem_applies`` marks the split-etale / unramified-field cases in
    which the uniqueness statement guarantees the count is 1; the count
    itself is always the computed (or case-decided) value.
    """

    count: int
    theorem_applies: bool
    note: str
    orbits: OrbitCount | None = None


def local_embedding_number(
    order: OrderPresentation,
    algebra_kind: AlgebraKind,
    *,
    integrally_closed: bool = False,
) -> LocalEmbeddingNumber:
    """Local embedding count into the matrix order or the division order.

    Matrix kind: counts conjugacy orbits at residue level (an explicit
    precision caveat: the sweep is exact modulo q, not over the full
    valuation ring).  Division kind: the unique maximal order forces the
    case logic -- count 1 exactly for an unramified-field order flagged
    integrally closed by the caller, otherwise 0.
    """
    klass = classify_residue_algebra(order)
    if algebra_kind is AlgebraKind.MATRIX:
        orbits = count_orbits(enumerate_residue_embeddings(order))
        applies = klass.tag in (AlgebraClass.SPLIT_ETALE, AlgebraClass.UNRAMIFIED_FIELD)
        return LocalEmbeddingNumber(
            count=orbits.orbit_count,
            theorem_applies=applies,
            note=f"orbit count at residue precision 1; residue class {klass.tag.value}",
            orbits=orbits,
        )
    if klass.tag is AlgebraClass.UNRAMIFIED_FIELD and integrally_closed:
        return LocalEmbeddingNumber(
            count=1,
            theorem_applies=True,
            note="unramified field with integrally closed order: unique up to normalizer",
        )
    if klass.tag is AlgebraClass.UNRAMIFIED_FIELD:
        return LocalEmbeddingNumber(
            count=0,
            theorem_applies=True,
            note="order not flagged integrally closed: no optimal embedding",
        )
    return LocalEmbeddingNumber(
        count=0,
        theorem_applies=True,
        note="completed extension is not an unramified field: no embedding",
    )
