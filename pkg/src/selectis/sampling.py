"""Seeded generators for orders, embeddings and global instances.

Everything here is deterministic given a ``random.Random``: the
cross-check harness and the test suite replay identical corpora from a
seed.  Embeddings are manufactured from an arbitrary square matrix by
pairing it with its characteristic polynomial, which it satisfies over
any commutative ring, so every sample is homomorphic by construction
while ranging over optimal and non-optimal cases alike.
"""

from __future__ import annotations

import itertools
import math
import random
from typing import Iterator

from .abelian_groups import FiniteAbelianGroup, Subgroup, subgroup
from .local_arith import LocalMatrix, LocalRing
from .optimal_embed import LocalEmbedding, embedding_from_generator
from .orders import OrderPresentation, from_monic_poly
from .selectivity import (
    ExtensionData,
    Frobenius,
    GlobalInstance,
    RamifiedPrime,
)


def random_monogenic_order(rng: random.Random, q: int, k: int, n: int) -> OrderPresentation:
    ring = LocalRing(q, k)
    coeffs = [rng.randrange(ring.modulus) for _ in range(n)]
    return from_monic_poly(ring, coeffs)


def characteristic_coeffs(matrix: LocalMatrix) -> tuple[int, ...]:
    """Coefficients a_0..a_{n-1} of the characteristic polynomial, n <= 3."""
    m = matrix.ring.modulus
    e = matrix.entries
    n = matrix.n
    if n == 2:
        tr = e[0][0] + e[1][1]
        det = e[0][0] * e[1][1] - e[0][1] * e[1][0]
        return (det % m, (-tr) % m)
    if n == 3:
        tr = e[0][0] + e[1][1] + e[2][2]
        minors = (
            e[1][1] * e[2][2] - e[1][2] * e[2][1]
            + e[0][0] * e[2][2] - e[0][2] * e[2][0]
            + e[0][0] * e[1][1] - e[0][1] * e[1][0]
        )
        det = matrix.det().value
        return ((-det) % m, minors % m, (-tr) % m)
    raise ValueError("characteristic coefficients implemented for n in {2, 3}")


def embedding_from_matrix(matrix: LocalMatrix) -> LocalEmbedding:
    """Pair a matrix with the order it defines via its characteristic polynomial."""
    order = from_monic_poly(matrix.ring, characteristic_coeffs(matrix))
    return embedding_from_generator(order, matrix)


def exhaustive_quadratic_embeddings(q: int, k: int) -> Iterator[LocalEmbedding]:
    """Every 2x2 matrix over Z/q^k as a homomorphic embedding.

    Each matrix satisfies its own induced quadratic relation, so this is
    the full space of rank-2 embeddings up to the choice of defining
    polynomial.
    """
    ring = LocalRing(q, k)
    mm = ring.modulus
    for flat in itertools.product(range(mm), repeat=4):
        matrix = LocalMatrix(ring, (flat[0:2], flat[2:4]))
        yield embedding_from_matrix(matrix)


def random_matrix(rng: random.Random, ring: LocalRing, n: int) -> LocalMatrix:
    mm = ring.modulus
    return LocalMatrix(
        ring, tuple(tuple(rng.randrange(mm) for _ in range(n)) for _ in range(n))
    )


def random_invertible(rng: random.Random, ring: LocalRing, n: int) -> LocalMatrix:
    while True:
        candidate = random_matrix(rng, ring, n)
        if candidate.is_invertible:
            return candidate


def random_cubic_embedding(rng: random.Random, q: int, k: int) -> LocalEmbedding:
    """A random rank-3 embedding, stratified to mix optimal and degenerate cases."""
    ring = LocalRing(q, k)
    kind = rng.randrange(4)
    if kind == 0:
        matrix = random_matrix(rng, ring, 3)
    elif kind == 1:
        # scalar plus uniformizer: residue is scalar, never optimal
        scalar = rng.randrange(ring.modulus)
        bump = random_matrix(rng, ring, 3).scale(q)
        matrix = LocalMatrix.diagonal(ring, [scalar] * 3) + bump
    elif kind == 2:
        # repeated spectrum, conjugated: residue rank 2 at most
        a, b = rng.randrange(ring.modulus), rng.randrange(ring.modulus)
        u = random_invertible(rng, ring, 3)
        matrix = u.inverse() @ LocalMatrix.diagonal(ring, [a, a, b]) @ u
    else:
        # conjugated companion matrix: always optimal
        coeffs = [rng.randrange(ring.modulus) for _ in range(3)]
        companion = LocalMatrix.from_rows(
            ring,
            [[0, 0, -coeffs[0]], [1, 0, -coeffs[1]], [0, 1, -coeffs[2]]],
        )
        u = random_invertible(rng, ring, 3)
        matrix = u.inverse() @ companion @ u
    return embedding_from_matrix(matrix)


# --- global instances ---------------------------------------------------------


def random_class_group(
    rng: random.Random, *, must_divide: int | None = None, max_order: int = 4000
) -> FiniteAbelianGroup:
    """A small class group; optionally guaranteed to have order divisible by p."""
    factors: list[int] = []
    if must_divide is not None:
        factors.append(rng.choice([d for d in range(2, 28) if d % must_divide == 0]))
    for _ in range(rng.randrange(0, 3)):
        candidate = rng.randrange(2, 28)
        if math.prod(factors) * candidate <= max_order:
            factors.append(candidate)
    return FiniteAbelianGroup(tuple(factors))


def random_index_p_subgroup(
    rng: random.Random, group: FiniteAbelianGroup, p: int
) -> Subgroup | None:
    """A random index-p subgroup, or None when the group has none.

    Index-p subgroups are kernels of surjections onto Z/p; one is sampled
    by choosing a nonzero functional on the coordinates whose cyclic order
    p divides.
    """
    positions = [i for i, d in enumerate(group.cyclic_orders) if d % p == 0]
    if not positions:
        return None
    lam = {i: rng.randrange(p) for i in positions}
    anchor = rng.choice(positions)
    lam[anchor] = rng.randrange(1, p)
    inv = pow(lam[anchor], -1, p)
    gens: list[tuple[int, ...]] = []
    for j in range(group.rank):
        if j == anchor:
            gens.append(group.reduce(tuple(p if i == anchor else 0 for i in range(group.rank))))
        else:
            c = (lam.get(j, 0) * inv) % p
            vec = [0] * group.rank
            vec[j] = 1
            vec[anchor] = -c
            gens.append(group.reduce(tuple(vec)))
    return subgroup(group, gens)


def _random_class_outside(
    rng: random.Random, group: FiniteAbelianGroup, avoid: Subgroup
) -> tuple[int, ...] | None:
    elements = [v for v in group.elements() if not avoid.contains(v)]
    if not elements:
        return None
    return rng.choice(elements)


SCENARIOS = (
    "selective",
    "nonselective_inert",
    "split_blocked",
    "ramified_extension",
    "non_galois",
)


def random_instance(
    rng: random.Random, scenario: str | None = None, *, max_order: int = 2000
) -> GlobalInstance:
    """A consistent global instance drawn from one of the named scenarios."""
    if scenario is None:
        scenario = rng.choice(SCENARIOS)
    p = rng.choice((3, 5))

    if scenario in ("selective", "nonselective_inert", "split_blocked"):
        group = random_class_group(rng, must_divide=p, max_order=max_order)
        norm_sub = random_index_p_subgroup(rng, group, p)
        assert norm_sub is not None
        ext = ExtensionData(True, True, True, True, norm_sub)
        if scenario == "selective":
            return GlobalInstance(p, group, (), ext)
        if scenario == "nonselective_inert":
            primes = []
            for _ in range(rng.randrange(1, 3)):
                cls = _random_class_outside(rng, group, norm_sub)
                primes.append(RamifiedPrime(cls, Frobenius.INERT))
            return GlobalInstance(p, group, tuple(primes), ext)
        split_class = rng.choice([v for v in group.elements() if norm_sub.contains(v)])
        return GlobalInstance(
            p, group, (RamifiedPrime(split_class, Frobenius.SPLIT),), ext
        )

    group = random_class_group(rng, max_order=max_order)
    primes = tuple(
        RamifiedPrime(
            rng.choice(list(group.elements())),
            rng.choice((Frobenius.INERT, Frobenius.NOT_APPLICABLE)),
        )
        for _ in range(rng.randrange(0, 3))
    )
    if scenario == "ramified_extension":
        ext = ExtensionData(True, True, False, rng.random() < 0.5, None)
    else:
        ext = ExtensionData(False, False, rng.random() < 0.5, rng.random() < 0.5, None)
    return GlobalInstance(p, group, primes, ext)
