"""Finite abelian group calculus: subgroups, quotients, indices, exponents.

Groups are always given by an explicit cyclic decomposition
``Z/d_1 + ... + Z/d_r`` and elements are coordinate vectors.  Subgroups
are generated sets whose canonical form -- an integer normal form of the
generator matrix stacked with the ambient relations, tracked by a
unimodular column transform -- decides membership, index and quotient
structure exactly.

>>> G = FiniteAbelianGroup((6,))
>>> S = subgroup(G, [(2,)])
>>> S.index
2
>>> quotient(G, S).group.cyclic_orders
(2,)
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import OutOfRangeVector

MAX_GROUP_ORDER = 2**32

Vector = tuple[int, ...]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Direct sum of cyclic groups of the given orders (each >= 2)."""

    cyclic_orders: tuple[int, ...]

    def __post_init__(self) -> None:
        for d in self.cyclic_orders:
            if d < 2:
                raise ValueError(f"cyclic order {d} must be >= 2")
        if self.order > MAX_GROUP_ORDER:
            raise ValueError(f"group order exceeds desk-scale bound {MAX_GROUP_ORDER}")

    @property
    def rank(self) -> int:
        return len(self.cyclic_orders)

    @property
    def order(self) -> int:
        return math.prod(self.cyclic_orders)

    def exponent(self) -> int:
        return math.lcm(*self.cyclic_orders) if self.cyclic_orders else 1

    def zero(self) -> Vector:
        return (0,) * self.rank

    def validate(self, v: Sequence[int]) -> Vector:
        if len(v) != self.rank:
            raise OutOfRangeVector(f"vector length {len(v)} vs rank {self.rank}")
        vec = tuple(int(x) for x in v)
        for x, d in zip(vec, self.cyclic_orders):
            if not 0 <= x < d:
                raise OutOfRangeVector(f"coordinate {x} outside [0, {d})")
        return vec

    def reduce(self, v: Sequence[int]) -> Vector:
        return tuple(int(x) % d for x, d in zip(v, self.cyclic_orders))

    def add(self, u: Sequence[int], v: Sequence[int]) -> Vector:
        return tuple((a + b) % d for a, b, d in zip(u, v, self.cyclic_orders))

    def scale(self, c: int, v: Sequence[int]) -> Vector:
        return tuple((c * a) % d for a, d in zip(v, self.cyclic_orders))

    def elements(self) -> Iterator[Vector]:
        return itertools.product(*(range(d) for d in self.cyclic_orders))

    def invariant_factors(self) -> tuple[int, ...]:
        """Canonical divisor chain, for isomorphism-invariant comparisons.

        >>> FiniteAbelianGroup((2, 3)).invariant_factors()
        (6,)
        """
        relations = [
            tuple(d if i == j else 0 for j in range(self.rank))
            for i, d in enumerate(self.cyclic_orders)
        ]
        diag, _ = _normal_form(relations, self.rank)
        return tuple(d for d in diag if d > 1)


def _normal_form(rows: Sequence[Sequence[int]], ncols: int):
    """Diagonalize by unimodular row and column operations.

    Returns ``(diag, V)`` where ``diag`` (length ncols, successive entries
    dividing the next) is the diagonal of ``U @ A @ V`` and ``V`` is the
    accumulated column transform.  A vector lies in the row lattice of the
    input exactly when every coordinate of ``v @ V`` is divisible by the
    matching diagonal entry (zero entries demanding zero coordinates).
    """
    a = [list(map(int, row)) for row in rows]
    m = len(a)
    n = ncols
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def col_op(dst: int, src: int, mult: int) -> None:
        for row in a:
            row[dst] += mult * row[src]
        for row in v:
            row[dst] += mult * row[src]

    def col_swap(x: int, y: int) -> None:
        for row in a:
            row[x], row[y] = row[y], row[x]
        for row in v:
            row[x], row[y] = row[y], row[x]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            if best[0] != t:
                a[t], a[best[0]] = a[best[0]], a[t]
            if best[1] != t:
                col_swap(t, best[1])
            dirty = False
            pivot = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    f = a[i][t] // pivot
                    if f:
                        a[i] = [x - f * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    f = a[t][j] // pivot
                    if f:
                        col_op(j, t, -f)
                    if a[t][j]:
                        dirty = True
            if dirty:
                continue
            offender = next(
                (
                    (i, j)
                    for i in range(t + 1, m)
                    for j in range(t + 1, n)
                    if a[i][j] % pivot
                ),
                None,
            )
            if offender is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[offender[0]])]
        if t < m and t < n and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
    diag = tuple(a[i][i] if i < m else 0 for i in range(n))
    return diag, tuple(tuple(row) for row in v)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by generators, carrying its canonical normal form."""

    ambient: FiniteAbelianGroup
    generators: tuple[Vector, ...]
    diag: tuple[int, ...]
    transform: tuple[tuple[int, ...], ...]

    @property
    def index(self) -> int:
        """Index in the ambient group.

        >>> G = FiniteAbelianGroup((4, 2))
        >>> subgroup(G, [(2, 0), (0, 1)]).index
        2
        """
        return math.prod(self.diag) if self.diag else 1

    @property
    def order(self) -> int:
        return self.ambient.order // self.index

    def contains(self, v: Sequence[int]) -> bool:
        vec = self.ambient.validate(v)
        image = [
            sum(vec[i] * self.transform[i][j] for i in range(len(vec)))
            for j in range(len(self.diag))
        ]
        return all(
            (x % d == 0) if d else (x == 0) for x, d in zip(image, self.diag)
        )

    def contains_subgroup(self, other: Subgroup) -> bool:
        if other.ambient != self.ambient:
            raise OutOfRangeVector("subgroups of different ambient groups")
        return all(self.contains(g) for g in other.generators)

    def elements(self) -> Iterator[Vector]:
        """Enumerate members; intended for desk-scale spot checks."""
        return (v for v in self.ambient.elements() if self.contains(v))


def subgroup(ambient: FiniteAbelianGroup, generators: Iterable[Sequence[int]]) -> Subgroup:
    """The subgroup generated by the given coordinate vectors.

    >>> G = FiniteAbelianGroup((3, 3))
    >>> subgroup(G, [(1, 0)]).index
    3
    """
    gens = tuple(ambient.validate(g) for g in generators)
    relations = [
        tuple(d if i == j else 0 for j in range(ambient.rank))
        for i, d in enumerate(ambient.cyclic_orders)
    ]
    diag, transform = _normal_form(list(gens) + relations, ambient.rank)
    return Subgroup(ambient, gens, diag, transform)


def full_subgroup(ambient: FiniteAbelianGroup) -> Subgroup:
    basis = [
        tuple(1 if i == j else 0 for j in range(ambient.rank))
        for i in range(ambient.rank)
    ]
    return subgroup(ambient, basis)


def trivial_subgroup(ambient: FiniteAbelianGroup) -> Subgroup:
    return subgroup(ambient, [])


def join(first: Subgroup, *rest: Subgroup) -> Subgroup:
    """Smallest subgroup containing all the arguments."""
    gens = list(first.generators)
    for other in rest:
        if other.ambient != first.ambient:
            raise OutOfRangeVector("subgroups of different ambient groups")
        gens.extend(other.generators)
    return subgroup(first.ambient, gens)


def power_subgroup(ambient: FiniteAbelianGroup, m: int) -> Subgroup:
    """The subgroup of m-th multiples ``{m*g}``.

    >>> power_subgroup(FiniteAbelianGroup((9,)), 3).index
    3
    """
    if m < 1:
        raise ValueError(f"multiplier must be >= 1, got {m}")
    gens = [
        tuple((m % d) if i == j else 0 for j, d in enumerate(ambient.cyclic_orders))
        for i in range(ambient.rank)
    ]
    return subgroup(ambient, gens)


def exponent(group: FiniteAbelianGroup) -> int:
    return group.exponent()


@dataclass(frozen=True)
class Quotient:
    """Invariant-factor form of ambient/S with the projection map."""

    ambient: FiniteAbelianGroup
    by: Subgroup
    group: FiniteAbelianGroup
    positions: tuple[int, ...]

    def project(self, v: Sequence[int]) -> Vector:
        vec = self.ambient.validate(v)
        image = [
            sum(vec[i] * self.by.transform[i][j] for i in range(len(vec)))
            for j in range(self.ambient.rank)
        ]
        return tuple(image[p] % self.by.diag[p] for p in self.positions)

    def subgroup_image(self, s: Subgroup) -> Subgroup:
        """Image of a subgroup of the ambient group in the quotient."""
        if s.ambient != self.ambient:
            raise OutOfRangeVector("subgroup of a different ambient group")
        return subgroup(self.group, [self.project(g) for g in s.generators])


def quotient(ambient: FiniteAbelianGroup, by: Subgroup) -> Quotient:
    """Quotient by a subgroup, in invariant-factor form.

    >>> G = FiniteAbelianGroup((3, 3))
    >>> quotient(G, subgroup(G, [(1, 1)])).group.cyclic_orders
    (3,)
    """
    if by.ambient != ambient:
        raise OutOfRangeVector("subgroup of a different ambient group")
    positions = tuple(i for i, d in enumerate(by.diag) if d > 1)
    group = FiniteAbelianGroup(tuple(by.diag[p] for p in positions))
    return Quotient(ambient, by, group, positions)
