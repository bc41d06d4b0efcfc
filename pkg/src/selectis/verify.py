"""Randomized and exhaustive cross-check suite behind ``selectis verify``.

Each property family replays a deterministic corpus from the configured
seed and reports case/failure counts plus the first counterexample.  A
testing hook can inject a mutant (one flipped structure constant) to
demonstrate that the criterion-equivalence family actually detects
corruption.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, replace

from . import optimal_embed, sampling, selectivity
from .abelian_groups import power_subgroup, quotient
from .errors import SelectisError, SizeGuardExceeded
from .local_arith import LocalRing, conjugate, conjugate_residue, reduced_norm_preimage
from .optimal_embed import (
    LocalEmbedding,
    count_orbits,
    enumerate_residue_embeddings,
    is_optimal_independence,
    is_optimal_minor,
    is_optimal_oracle,
    quadratic_criterion,
    regular_representation,
)
from .orders import AlgebraClass, classify_residue_algebra, from_monic_poly


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 0
    max_q: int = 5
    max_n: int = 3
    max_k: int = 2
    max_group_order: int = 2000
    cubic_samples: int = 300
    order_samples: int = 150
    instance_samples: int = 120
    inject_mutant: bool = False


@dataclass
class FamilyResult:
    name: str
    cases: int = 0
    failures: int = 0
    counterexample: dict | None = None

    def record(self, ok: bool, witness: dict | None = None) -> None:
        self.cases += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = witness or {}


@dataclass(frozen=True)
class SuiteResult:
    seed: int
    families: tuple[FamilyResult, ...]

    @property
    def all_pass(self) -> bool:
        return all(f.failures == 0 for f in self.families)


def _describe_embedding(emb: LocalEmbedding) -> dict:
    return {
        "q": emb.ring.q,
        "k": emb.ring.k,
        "n": emb.n,
        "matrices": [[list(row) for row in m.entries] for m in emb.matrices],
        "monic_poly": list(emb.order.monic_poly or ()),
    }


def _mutate(emb: LocalEmbedding) -> LocalEmbedding:
    """Flip one structure constant, leaving the matrices untouched."""
    c = [
        [[x for x in row] for row in plane] for plane in emb.order.structure_constants
    ]
    c[1][1][0] = (c[1][1][0] + 1) % emb.ring.modulus
    broken = replace(
        emb.order,
        structure_constants=tuple(
            tuple(tuple(row) for row in plane) for plane in c
        ),
    )
    return LocalEmbedding(broken, emb.matrices)


def _quadratic_space(cfg: VerifyConfig):
    for q in (2, 3):
        if q > cfg.max_q:
            continue
        for k in range(1, min(cfg.max_k, 2) + 1):
            yield from sampling.exhaustive_quadratic_embeddings(q, k)


def _f_criterion_equivalence(cfg: VerifyConfig, rng: random.Random) -> FamilyResult:
    fam = FamilyResult("criterion_equivalence")
    samples: list[LocalEmbedding] = list(_quadratic_space(cfg))
    if cfg.max_n >= 3:
        qs = [q for q in (2, 3, 5) if q <= cfg.max_q]
        for _ in range(cfg.cubic_samples):
            q = rng.choice(qs)
            k = rng.randrange(1, cfg.max_k + 1)
            samples.append(sampling.random_cubic_embedding(rng, q, k))
    if cfg.inject_mutant and samples:
        samples[len(samples) // 2] = _mutate(samples[len(samples) // 2])
    for emb in samples:
        try:
            verdicts = [
                is_optimal_independence(emb),
                is_optimal_minor(emb)[0],
                is_optimal_oracle(emb),
            ]
            if emb.n == 2:
                verdicts.append(quadratic_criterion(emb))
            ok = len(set(verdicts)) == 1
            fam.record(ok, {"embedding": _describe_embedding(emb), "verdicts": verdicts})
        except SelectisError as err:
            fam.record(False, {"embedding": _describe_embedding(emb), "error": str(err)})
    return fam


def _f_quadratic_closed_form(cfg: VerifyConfig, rng: random.Random) -> FamilyResult:
    fam = FamilyResult("quadratic_closed_form")
    for emb in _quadratic_space(cfg):
        (a, b), (c, d) = emb.matrices[1].entries
        q = emb.ring.q
        closed = b % q != 0 or c % q != 0 or (d - a) % q != 0
        verdict = is_optimal_minor(emb)[0]
        fam.record(
            verdict == closed,
            {"embedding": _describe_embedding(emb), "closed_form": closed, "verdict": verdict},
        )
    return fam


def _f_regular_representation(cfg: VerifyConfig, rng: random.Random) -> FamilyResult:
    fam = FamilyResult("regular_representation_optimal")
    qs = [q for q in (2, 3, 5) if q <= cfg.max_q]
    for _ in range(cfg.order_samples):
        q = rng.choice(qs)
        k = rng.randrange(1, cfg.max_k + 1)
        n = rng.randrange(2, cfg.max_n + 1)
        order = sampling.random_monogenic_order(rng, q, k, n)
        emb = regular_representation(order)
        ok = (
            emb.is_homomorphism()
            and is_optimal_independence(emb)
            and is_optimal_minor(emb)[0]
            and is_optimal_oracle(emb)
        )
        fam.record(ok, {"embedding": _describe_embedding(emb)})
    return fam


def _f_local_arithmetic(cfg: VerifyConfig, rng: random.Random) -> FamilyResult:
    fam = FamilyResult("local_arithmetic")
    qs = [q for q in (2, 3, 5) if q <= cfg.max_q]
    for _ in range(500):
        q = rng.choice(qs)
        k = rng.randrange(1, cfg.max_k + 1)
        n = rng.choice([2, 3])
        ring = LocalRing(q, k)
        a = sampling.random_matrix(rng, ring, n)
        b = sampling.random_matrix(rng, ring, n)
        ok = (a @ b).det() == a.det() * b.det()
        witness = {"q": q, "k": k, "a": [list(r) for r in a.entries], "b": [list(r) for r in b.entries]}
        if ok:
            u = sampling.random_invertible(rng, ring, n)
            ok = conjugate(u, a).residue() == conjugate_residue(u.residue(), a.residue())
            witness["u"] = [list(r) for r in u.entries]
        if ok:
            f = ring.scalar(rng.randrange(ring.modulus))
            ok = reduced_norm_preimage(f, n).det() == f
        fam.record(ok, witness)
    return fam


def _f_det_expansion(cfg: VerifyConfig, rng: random.Random) -> FamilyResult:
    fam = FamilyResult("basis_action_det_expansion")
    for q in (2, 3):
        if q > cfg.max_q:
            continue
        for k in range(1, min(cfg.max_k, 2) + 1):
            ring = LocalRing(q, k)
            embeddings = (
                list(sampling.exhaustive_quadratic_embeddings(q, k))
                if k == 1
                else [
                    sampling.embedding_from_matrix(sampling.random_matrix(rng, ring, 2))
                    for _ in range(150)
                ]
            )
            for emb in embeddings:
                for alpha in itertools.product(range(ring.modulus), repeat=2):
                    direct = optimal_embed.basis_action_matrix(emb, alpha).det()
                    expanded = optimal_embed.basis_action_det_expansion(emb, alpha)
                    fam.record(
                        direct == expanded,
                        {
                            "embedding": _describe_embedding(emb),
                            "alpha": list(alpha),
                            "direct": direct.value,
                            "expanded": expanded.value,
                        },
                    )
    return fam


def _theorem_polynomials(q: int, n: int):
    """Monic degree-n polynomials mod q whose residue algebra is covered
    by the uniqueness statement (split etale or unramified field)."""
    ring = LocalRing(q, 1)
    for coeffs in itertools.product(range(q), repeat=n):
        order = from_monic_poly(ring, list(coeffs))
        tag = classify_residue_algebra(order).tag
        if tag in (AlgebraClass.SPLIT_ETALE, AlgebraClass.UNRAMIFIED_FIELD):
            yield coeffs


def _f_orbit_uniqueness(cfg: VerifyConfig, rng: random.Random) -> FamilyResult:
    fam = FamilyResult("orbit_count_uniqueness")
    shapes = [(2, 2), (2, 3), (3, 2)]
    for n, q in shapes:
        if q > cfg.max_q or n > cfg.max_n:
            continue
        ring = LocalRing(q, 1)
        for coeffs in _theorem_polynomials(q, n):
            order = from_monic_poly(ring, list(coeffs))
            orbits = count_orbits(enumerate_residue_embeddings(order))
            fam.record(
                orbits.orbit_count == 1,
                {"q": q, "n": n, "monic_poly": list(coeffs), "m": orbits.orbit_count},
            )
    return fam


def _f_type_group(cfg: VerifyConfig, rng: random.Random) -> FamilyResult:
    fam = FamilyResult("type_group_exponent")
    for _ in range(cfg.instance_samples):
        inst = sampling.random_instance(rng, max_order=cfg.max_group_order)
        result = selectivity.type_group(inst)
        mod_p = quotient(inst.class_group, power_subgroup(inst.class_group, inst.degree))
        exp = result.group.exponent()
        ok = (
            (exp == 1 or exp == inst.degree)
            and mod_p.group.order % result.group.order == 0
        )
        fam.record(
            ok,
            {
                "degree": inst.degree,
                "class_group": list(inst.class_group.cyclic_orders),
                "type_group": list(result.group.cyclic_orders),
            },
        )
    return fam


def _f_sandwich(cfg: VerifyConfig, rng: random.Random) -> FamilyResult:
    fam = FamilyResult("sandwich_product")
    for _ in range(cfg.instance_samples):
        inst = sampling.random_instance(rng, max_order=cfg.max_group_order)
        report = selectivity.sandwich_report(inst)
        i1, i2, i3 = report.indices
        if inst.extension.galois:
            ok = i1 * i2 * i3 == inst.degree and sum(x > 1 for x in report.indices) <= 1
        else:
            ok = report.indices == (1, 1, 1)
        fam.record(ok, {"indices": list(report.indices), "galois": inst.extension.galois})
    return fam


def _f_proportion(cfg: VerifyConfig, rng: random.Random) -> FamilyResult:
    fam = FamilyResult("selective_proportion")
    for i in range(cfg.instance_samples):
        scenario = sampling.SCENARIOS[i % len(sampling.SCENARIOS)]
        inst = sampling.random_instance(rng, scenario, max_order=cfg.max_group_order)
        report = selectivity.decide_selectivity(inst)
        if not report.can_embed:
            fam.record(report.admitting_types is None, {"scenario": scenario})
            continue
        if report.selective:
            ok = (
                report.admitting_types is not selectivity.ADMITS_ALL
                and report.admitting_types.index == inst.degree
                and report.admitting_types.order * inst.degree == report.type_number
            )
        else:
            ok = report.admitting_types is selectivity.ADMITS_ALL
        fam.record(ok, {"scenario": scenario, "selective": report.selective})
    return fam


def _f_selective_unramified(cfg: VerifyConfig, rng: random.Random) -> FamilyResult:
    fam = FamilyResult("selective_requires_unramified_algebra")
    for i in range(cfg.instance_samples):
        scenario = sampling.SCENARIOS[i % len(sampling.SCENARIOS)]
        inst = sampling.random_instance(rng, scenario, max_order=cfg.max_group_order)
        report = selectivity.decide_selectivity(inst)
        ok = not (report.selective and inst.ramified_primes)
        fam.record(
            ok,
            {"scenario": scenario, "ramified": len(inst.ramified_primes)},
        )
    return fam


def _f_product_formula(cfg: VerifyConfig, rng: random.Random) -> FamilyResult:
    fam = FamilyResult("product_formula")
    for _ in range(100):
        inst = sampling.random_instance(rng, "selective", max_order=cfg.max_group_order)
        length = rng.randrange(0, 4)
        ones = replace(inst, local_embedding_numbers=(1,) * length)
        result = selectivity.global_embedding_count(ones)
        ok = result.count == 1 and not result.violations
        if ok and length:
            zeroed = replace(
                inst, local_embedding_numbers=(1,) * (length - 1) + (0,)
            )
            broken = selectivity.global_embedding_count(zeroed)
            ok = broken.count == 0 and len(broken.violations) == 1
        fam.record(ok, {"length": length})
    return fam


_FAMILIES = (
    _f_criterion_equivalence,
    _f_quadratic_closed_form,
    _f_regular_representation,
    _f_local_arithmetic,
    _f_det_expansion,
    _f_orbit_uniqueness,
    _f_type_group,
    _f_sandwich,
    _f_proportion,
    _f_selective_unramified,
    _f_product_formula,
)


def run_suite(cfg: VerifyConfig) -> SuiteResult:
    """Run every property family at the configured sizes, deterministically."""
    if cfg.max_n < 2:
        raise SizeGuardExceeded("criteria need dimension at least 2")
    if cfg.max_q < 2 or cfg.max_k < 1:
        raise SizeGuardExceeded("max_q must be >= 2 and max_k >= 1")
    results = []
    for fn in _FAMILIES:
        # Each family gets its own stream so sizes of one never shift another.
        rng = random.Random(f"{cfg.seed}:{fn.__name__}")
        results.append(fn(cfg, rng))
    return SuiteResult(cfg.seed, tuple(results))
