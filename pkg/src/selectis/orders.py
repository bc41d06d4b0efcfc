"""Rank-n commutative orders over a truncated local ring.

An order is presented abstractly by structure constants ``c[i][j][l]`` on
a basis ``e_1, ..., e_n`` with ``e_1 = 1``, meaning
``e_i * e_j = sum_l c[i][j][l] * e_l``.  The primary ingestion path is the
monogenic constructor ``R[x]/(f)`` for a monic polynomial ``f``; arbitrary
structure constants are accepted and validated but only monogenic orders
receive a residue-algebra classification.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .errors import SizeGuardExceeded
from .local_arith import LocalRing, LocalScalar

Constants = tuple[tuple[tuple[int, ...], ...], ...]


@dataclass(frozen=True)
class Violation:
    """First failed multiplication-table identity, with 1-based indices."""

    kind: str  # "identity" | "commutativity" | "associativity"
    indices: tuple[int, ...]
    message: str


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    violation: Violation | None = None


@dataclass(frozen=True)
class OrderPresentation:
    """A rank-n commutative order given by structure constants.

    ``structure_constants[i][j][l]`` is the coefficient of ``e_{l+1}`` in
    ``e_{i+1} * e_{j+1}`` (indices 0-based internally, 1-based in reports).
    ``monic_poly`` records the defining coefficients ``a_0..a_{n-1}`` when
    the order was built as ``R[x]/(x^n + a_{n-1}x^{n-1} + ... + a_0)``.
    """

    ring: LocalRing
    n: int
    structure_constants: Constants
    monic_poly: tuple[int, ...] | None = None

    @property
    def is_monogenic(self) -> bool:
        return self.monic_poly is not None

    def multiply(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of the product of two coordinate vectors."""
        m = self.ring.modulus
        c = self.structure_constants
        out = [0] * self.n
        for i in range(self.n):
            if x[i] % m == 0:
                continue
            for j in range(self.n):
                if y[j] % m == 0:
                    continue
                coef = x[i] * y[j]
                for l in range(self.n):
                    out[l] += coef * c[i][j][l]
        return tuple(v % m for v in out)

    def validate(self) -> ValidationResult:
        """Check unit, commutativity and associativity exhaustively.

        Returns a structured report; never raises.
        """
        c = self.structure_constants
        n = self.n
        for j in range(n):
            for l in range(n):
                want = 1 if j == l else 0
                if c[0][j][l] != want % self.ring.modulus:
                    return ValidationResult(
                        False,
                        Violation(
                            "identity",
                            (1, j + 1),
                            f"e_1*e_{j + 1} does not equal e_{j + 1}",
                        ),
                    )
                if c[j][0][l] != want % self.ring.modulus:
                    return ValidationResult(
                        False,
                        Violation(
                            "identity",
                            (j + 1, 1),
                            f"e_{j + 1}*e_1 does not equal e_{j + 1}",
                        ),
                    )
        for i in range(n):
            for j in range(i + 1, n):
                if c[i][j] != c[j][i]:
                    return ValidationResult(
                        False,
                        Violation(
                            "commutativity",
                            (i + 1, j + 1),
                            f"e_{i + 1}*e_{j + 1} != e_{j + 1}*e_{i + 1}",
                        ),
                    )
        basis = [tuple(1 if t == s else 0 for t in range(n)) for s in range(n)]
        for i in range(n):
            for j in range(n):
                ij = self.multiply(basis[i], basis[j])
                for m_ in range(n):
                    left = self.multiply(ij, basis[m_])
                    right = self.multiply(basis[i], self.multiply(basis[j], basis[m_]))
                    if left != right:
                        return ValidationResult(
                            False,
                            Violation(
                                "associativity",
                                (i + 1, j + 1, m_ + 1),
                                f"(e_{i + 1}e_{j + 1})e_{m_ + 1} != e_{i + 1}(e_{j + 1}e_{m_ + 1})",
                            ),
                        )
        return ValidationResult(True)


def from_structure_constants(
    ring: LocalRing, constants: Sequence[Sequence[Sequence[int]]]
) -> OrderPresentation:
    n = len(constants)
    m = ring.modulus
    reduced = tuple(
        tuple(tuple(int(x) % m for x in constants[i][j]) for j in range(n))
        for i in range(n)
    )
    if any(len(reduced[i]) != n or any(len(reduced[i][j]) != n for j in range(n)) for i in range(n)):
        raise ValueError("structure constants must form an n x n x n array")
    return OrderPresentation(ring, n, reduced)


def from_monic_poly(
    ring: LocalRing, coeffs: Sequence[int | LocalScalar]
) -> OrderPresentation:
    """The order ``R[x]/(f)`` on the basis ``1, x, ..., x^{n-1}``.

    ``coeffs`` lists ``a_0..a_{n-1}`` of ``f = x^n + a_{n-1}x^{n-1} + ... + a_0``.

    >>> ring = LocalRing(3, 2)
    >>> order = from_monic_poly(ring, [8, 0])   # x^2 - 1
    >>> order.structure_constants[1][1]
    (1, 0)
    """
    m = ring.modulus
    a = [c.value if isinstance(c, LocalScalar) else int(c) % m for c in coeffs]
    for c in coeffs:
        if isinstance(c, LocalScalar) and c.ring != ring:
            raise ValueError("coefficient from a different ring")
    n = len(a)
    if n < 2:
        raise ValueError("degree must be at least 2")
    # Coordinates of x^t for t = 0..2n-2, reduced by x^n = -(a_0 + ... + a_{n-1}x^{n-1}).
    powers = [tuple(1 if t == s else 0 for t in range(n)) for s in range(n)]
    for _ in range(n - 1):
        prev = powers[-1]
        top = prev[n - 1]
        nxt = [(-top * a[0]) % m]
        for i in range(1, n):
            nxt.append((prev[i - 1] - top * a[i]) % m)
        powers.append(tuple(nxt))
    constants = tuple(
        tuple(powers[i + j] for j in range(n)) for i in range(n)
    )
    return OrderPresentation(ring, n, constants, monic_poly=tuple(a))


# --- residue-algebra classification ----------------------------------------


class AlgebraClass(enum.Enum):
    SPLIT_ETALE = "split_etale"
    UNRAMIFIED_FIELD = "unramified_field"
    OTHER = "other"


@dataclass(frozen=True)
class ResidueAlgebraClass:
    """Classification of S/qS with the factorization evidence."""

    tag: AlgebraClass
    poly_mod_q: tuple[int, ...] | None
    roots: tuple[int, ...]
    note: str
    precision_warning: bool = False


def _poly_eval(coeffs: Sequence[int], x: int, q: int) -> int:
    # coeffs low-to-high, leading coefficient included
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % q
    return acc


def _poly_trim(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_mod(f: list[int], g: list[int], q: int) -> list[int]:
    f = [x % q for x in f]
    g = _poly_trim([x % q for x in g])
    lead_inv = pow(g[-1], -1, q)
    while len(f) >= len(g) and _poly_trim(f):
        shift = len(f) - len(g)
        factor = f[-1] * lead_inv % q
        for i, gc in enumerate(g):
            f[shift + i] = (f[shift + i] - factor * gc) % q
        f = _poly_trim(f)
    return f


def _poly_gcd_degree(f: list[int], g: list[int], q: int) -> int:
    f, g = _poly_trim(list(f)), _poly_trim(list(g))
    while g:
        f, g = g, _poly_mod(f, g, q)
        g = _poly_trim(g)
    return len(f) - 1 if f else -1


def _is_squarefree(full: list[int], q: int) -> bool:
    deriv = _poly_trim([(i * c) % q for i, c in enumerate(full)][1:])
    if not deriv:
        return False
    return _poly_gcd_degree(full, deriv, q) == 0


def _monic_irreducible_quadratics(q: int):
    for b in range(q):
        for c in range(q):
            g = [c, b, 1]
            if all(_poly_eval(g, r, q) != 0 for r in range(q)):
                yield g


def classify_residue_algebra(order: OrderPresentation) -> ResidueAlgebraClass:
    """Classify the residue algebra of a monogenic order.

    Factors the defining polynomial modulo q by exhaustive root search,
    with an irreducibility test (root-free suffices in degree <= 3, plus a
    quadratic-factor scan in degree 4).  Orders with a repeated factor are
    classed Other and flagged precision-sensitive: truncation at q^k cannot
    distinguish them from nearby non-isomorphic orders.
    """
    if not order.is_monogenic:
        return ResidueAlgebraClass(
            AlgebraClass.OTHER, None, (), "not monogenic; no certificate computed"
        )
    if order.n > 4:
        raise SizeGuardExceeded(f"classification limited to degree <= 4, got {order.n}")
    q = order.ring.q
    n = order.n
    full = [c % q for c in order.monic_poly] + [1]
    roots = tuple(r for r in range(q) if _poly_eval(full, r, q) == 0)
    squarefree = _is_squarefree(full, q)
    if len(roots) == n:
        return ResidueAlgebraClass(
            AlgebraClass.SPLIT_ETALE,
            tuple(full),
            roots,
            f"{n} distinct roots mod {q}",
        )
    if not roots:
        irreducible = n <= 3 or all(
            _poly_trim(_poly_mod(list(full), g, q)) for g in _monic_irreducible_quadratics(q)
        )
        if irreducible:
            return ResidueAlgebraClass(
                AlgebraClass.UNRAMIFIED_FIELD,
                tuple(full),
                (),
                f"irreducible mod {q}",
            )
        return ResidueAlgebraClass(
            AlgebraClass.OTHER,
            tuple(full),
            (),
            f"root-free but reducible mod {q}",
            precision_warning=not squarefree,
        )
    return ResidueAlgebraClass(
        AlgebraClass.OTHER,
        tuple(full),
        roots,
        "partial or repeated factorization mod q",
        precision_warning=not squarefree,
    )
