"""Global selectivity decisions over a finite class-group model.

A global instance packages the degree ``p`` (an odd prime), a supplied
class group, the classes and splitting behaviour of the primes where the
algebra ramifies, and flags describing the degree-p extension.  All idelic
norm groups are represented through their images in the finite class
group; the extension's norm subgroup (index p, present exactly when the
extension is abelian and everywhere unramified) is the only extra datum
class field theory needs at desk scale.

The engine computes the type group (an elementary abelian p-group), the
three-step norm-group sandwich whose unique possible strict step decides
selectivity, and the distribution of embedding-admitting types: exactly
1/p of the types when selective, all of them otherwise.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .abelian_groups import (
    FiniteAbelianGroup,
    Quotient,
    Subgroup,
    full_subgroup,
    join,
    power_subgroup,
    quotient,
    subgroup,
)
from .errors import InconsistentInstance, MissingFrobenius
from .local_arith import is_prime


class Frobenius(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    # The prime is not unramified in the extension, so no Frobenius exists;
    # it still does not split, so it never obstructs embedding.
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class RamifiedPrime:
    """A prime where the algebra ramifies: its ideal class and splitting."""

    class_vector: tuple[int, ...]
    frobenius: Frobenius | None = None


@dataclass(frozen=True)
class ExtensionData:
    """Shape of the degree-p extension.

    ``norm_subgroup`` is the index-p subgroup of the class group cut out
    by the extension's norms; it exists in the finite model exactly when
    the extension is abelian and unramified at every finite and real
    place, and is required then.
    """

    galois: bool
    abelian: bool
    unramified_finite: bool
    unramified_real: bool
    norm_subgroup: Subgroup | None = None


@dataclass(frozen=True)
class GlobalInstance:
    degree: int
    class_group: FiniteAbelianGroup
    ramified_primes: tuple[RamifiedPrime, ...]
    extension: ExtensionData
    local_embedding_numbers: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        p = self.degree
        if p < 3 or p % 2 == 0 or not is_prime(p):
            raise InconsistentInstance(f"degree {p} must be an odd prime")
        if self.extension.galois != self.extension.abelian:
            raise InconsistentInstance(
                "a galois extension of prime degree is cyclic, hence abelian"
            )
        for rp in self.ramified_primes:
            self.class_group.validate(rp.class_vector)
        ns = self.extension.norm_subgroup
        if ns is not None:
            if not self.is_modeled_unramified:
                raise InconsistentInstance(
                    "a norm subgroup is only meaningful for an abelian extension "
                    "unramified at all finite and real places"
                )
            if ns.ambient != self.class_group:
                raise InconsistentInstance("norm subgroup lives in a different group")
            if ns.index != p:
                raise InconsistentInstance(
                    f"norm subgroup has index {ns.index}, expected {p}"
                )
        if self.local_embedding_numbers is not None:
            for v in self.local_embedding_numbers:
                if v < 0:
                    raise InconsistentInstance("local embedding numbers must be >= 0")

    @property
    def is_modeled_unramified(self) -> bool:
        """True when the extension's norms are faithfully visible in the class group."""
        return (
            self.extension.galois
            and self.extension.abelian
            and self.extension.unramified_finite
            and self.extension.unramified_real
        )


def can_embed_globally(inst: GlobalInstance) -> bool:
    """The degree-p embedding criterion: no ramified prime may split."""
    for rp in inst.ramified_primes:
        if rp.frobenius is None:
            raise MissingFrobenius(
                f"ramified prime with class {list(rp.class_vector)} lacks splitting data"
            )
    return all(rp.frobenius is not Frobenius.SPLIT for rp in inst.ramified_primes)


@dataclass(frozen=True)
class TypeGroupResult:
    """The type group T = Cl/U with its defining subgroup and projection."""

    group: FiniteAbelianGroup
    norm_image: Subgroup
    projection: Quotient
    derivation: tuple[str, ...]

    @property
    def type_number(self) -> int:
        return self.group.order


_TYPE_GROUP_DERIVATION = (
    "at a prime where the algebra is a full matrix ring, the normalizer of the "
    "standard order is generated by its units and scalars, so its norms cover all "
    "local units and all p-th powers and the class contributes nothing beyond "
    "p-th powers",
    "at a prime where the algebra ramifies, the unique maximal order is "
    "normalized by every invertible element, so the full local group enters and "
    "the prime's whole ideal class is absorbed",
    "global scalars absorb sign conditions at the real places, collapsing the "
    "idelic quotient onto the class-group quotient",
)


def type_group(inst: GlobalInstance) -> TypeGroupResult:
    """Isomorphism classes in the genus as a quotient of the class group.

    The quotient is by p-th powers joined with the classes of the ramified
    primes, so it is always elementary abelian of exponent dividing p.
    """
    cl = inst.class_group
    norm_image = join(
        power_subgroup(cl, inst.degree),
        subgroup(cl, [rp.class_vector for rp in inst.ramified_primes]),
    )
    proj = quotient(cl, norm_image)
    return TypeGroupResult(proj.group, norm_image, proj, _TYPE_GROUP_DERIVATION)


class NormRole(enum.Enum):
    EXTENSION_NORMS = "extension_norms"
    EXTENSION_AND_NORMALIZER_NORMS = "extension_and_normalizer_norms"
    EMBEDDING_NORMS = "embedding_norms"


@dataclass(frozen=True)
class NormImageSubgroup:
    """One rung of the sandwich, with its index in the full group.

    ``subgroup`` is None when only the index is known (extension not
    modeled inside the class group)."""

    role: NormRole
    index_in_ambient: int
    subgroup: Subgroup | None = None


@dataclass(frozen=True)
class SandwichReport:
    """The three nested norm groups and the successive indices.

    ``indices`` lists, left to right, the index of each group in the next
    (the last one in the full group).  For a galois extension they multiply
    to p with at most one strict step; otherwise all are 1.
    """

    left: NormImageSubgroup
    middle: NormImageSubgroup
    right: NormImageSubgroup
    indices: tuple[int, int, int]
    notes: tuple[str, ...] = ()


def sandwich_report(inst: GlobalInstance) -> SandwichReport:
    cl = inst.class_group
    p = inst.degree
    if not inst.extension.galois:
        full = full_subgroup(cl)
        return SandwichReport(
            NormImageSubgroup(NormRole.EXTENSION_NORMS, 1, full),
            NormImageSubgroup(NormRole.EXTENSION_AND_NORMALIZER_NORMS, 1, full),
            NormImageSubgroup(NormRole.EMBEDDING_NORMS, 1, full),
            (1, 1, 1),
            ("non-galois extension: its abelian closure over the base is trivial, "
             "so every norm group is the full group",),
        )
    modeled = inst.is_modeled_unramified
    if modeled and inst.extension.norm_subgroup is None:
        raise InconsistentInstance(
            "galois everywhere-unramified extension requires its norm subgroup"
        )
    u_order = type_group(inst).norm_image
    if not modeled:
        full = full_subgroup(cl)
        return SandwichReport(
            NormImageSubgroup(NormRole.EXTENSION_NORMS, p, None),
            NormImageSubgroup(NormRole.EXTENSION_AND_NORMALIZER_NORMS, 1, full),
            NormImageSubgroup(NormRole.EMBEDDING_NORMS, 1, full),
            (p, 1, 1),
            ("extension ramifies somewhere, so it cannot lie inside the "
             "everywhere-unramified class field of the order: the first "
             "inclusion is the strict one; its index-p group is tracked "
             "formally, outside the class-group model",),
        )
    u_ext = inst.extension.norm_subgroup
    middle = join(u_ext, u_order)
    # Maximal orders: the middle and right groups coincide; the strict step
    # is the first exactly when the order's norms escape the extension's.
    i1 = u_ext.index // middle.index
    i3 = middle.index
    return SandwichReport(
        NormImageSubgroup(NormRole.EXTENSION_NORMS, u_ext.index, u_ext),
        NormImageSubgroup(NormRole.EXTENSION_AND_NORMALIZER_NORMS, middle.index, middle),
        NormImageSubgroup(NormRole.EMBEDDING_NORMS, middle.index, middle),
        (i1, 1, i3),
        ("middle and right groups identified under the maximal-order hypothesis "
         "(always in force for this engine)",),
    )


class AllTypes:
    """Sentinel: every type in the genus admits an optimal embedding."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "AllTypes"


ADMITS_ALL = AllTypes()


@dataclass(frozen=True)
class SelectivityReport:
    can_embed: bool
    selective: bool
    type_group: FiniteAbelianGroup | None = None
    type_number: int | None = None
    norm_image: Subgroup | None = None
    admitting_types: Subgroup | AllTypes | None = None
    proportion: Fraction | None = None
    sandwich: SandwichReport | None = None
    notes: tuple[str, ...] = ()


_READING_NOTE = (
    "the distribution statement is read for optimal embeddings, matching the "
    "membership test on reduced norms that defines the admitting classes"
)


def _check_frobenius_consistency(inst: GlobalInstance) -> None:
    """An unramified abelian extension determines every Frobenius from the
    ideal class; supplied splitting data must agree or be rejected."""
    u_ext = inst.extension.norm_subgroup
    for rp in inst.ramified_primes:
        inside = u_ext.contains(rp.class_vector)
        if rp.frobenius is Frobenius.NOT_APPLICABLE:
            raise InconsistentInstance(
                "extension is everywhere unramified, so every prime carries a "
                "Frobenius; 'not_applicable' is contradictory"
            )
        if rp.frobenius is Frobenius.INERT and inside:
            raise InconsistentInstance(
                f"prime with class {list(rp.class_vector)} is marked inert but its "
                "class lies in the extension's norm subgroup, which forces splitting"
            )
        if rp.frobenius is Frobenius.SPLIT and not inside:
            raise InconsistentInstance(
                f"prime with class {list(rp.class_vector)} is marked split but its "
                "class lies outside the extension's norm subgroup"
            )


def decide_selectivity(inst: GlobalInstance) -> SelectivityReport:
    """Decide optimal selectivity and the distribution of admitting types.

    Non-embeddable instances short-circuit.  For embeddable ones:
    selective exactly when the extension is abelian, everywhere unramified,
    and the order's norm image lies inside the extension's norm subgroup;
    then 1/p of the types admit, given by an index-p subgroup of the type
    group.  Otherwise every type admits.
    """
    if not can_embed_globally(inst):
        return SelectivityReport(
            can_embed=False,
            selective=False,
            notes=("a ramified prime splits in the extension: no embedding exists, "
                   "selectivity does not arise",),
        )
    modeled = inst.is_modeled_unramified and inst.extension.norm_subgroup is not None
    if inst.is_modeled_unramified and inst.extension.norm_subgroup is None:
        raise InconsistentInstance(
            "galois everywhere-unramified extension requires its norm subgroup"
        )
    if modeled:
        _check_frobenius_consistency(inst)
    tg = type_group(inst)
    selective = modeled and inst.extension.norm_subgroup.contains_subgroup(tg.norm_image)
    # Emergent consistency: a ramified prime's class sits in the order's norm
    # image; were the instance selective, that class would lie in the
    # extension's norm subgroup, forcing a split prime (rejected above) or an
    # inconsistent inert marking (also rejected).  So selectivity can only
    # survive with no ramification at all.
    assert not (selective and inst.ramified_primes)
    sandwich = sandwich_report(inst)
    if selective:
        admitting = tg.projection.subgroup_image(inst.extension.norm_subgroup)
        proportion = Fraction(1, inst.degree)
    else:
        admitting = ADMITS_ALL
        proportion = Fraction(1, 1)
    return SelectivityReport(
        can_embed=True,
        selective=selective,
        type_group=tg.group,
        type_number=tg.type_number,
        norm_image=tg.norm_image,
        admitting_types=admitting,
        proportion=proportion,
        sandwich=sandwich,
        notes=(_READING_NOTE,) + tg.derivation,
    )


@dataclass(frozen=True)
class GlobalEmbeddingCount:
    """Product of the supplied local conjugacy counts."""

    count: int
    violations: tuple[str, ...]


def global_embedding_count(inst: GlobalInstance) -> GlobalEmbeddingCount:
    """Product formula over the supplied local data; omitted primes give 1.

    Under the maximal-order hypotheses every factor is 1; any other factor
    is reported as a hypothesis violation rather than silently multiplied.
    """
    factors = inst.local_embedding_numbers or ()
    violations = tuple(
        f"local factor {v} at position {i} deviates from the maximal-order value 1"
        for i, v in enumerate(factors)
        if v != 1
    )
    return GlobalEmbeddingCount(math.prod(factors), violations)
