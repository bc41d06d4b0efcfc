"""Acceptance suite: one test per criterion, every tolerance exact.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one pass line
per criterion.  Seeds are fixed; nothing here is calibrated after the
fact.
"""

import itertools
import random
from fractions import Fraction

import pytest

from selectis.abelian_groups import power_subgroup, quotient
from selectis.local_arith import LocalRing
from selectis.optimal_embed import (
    AlgebraKind,
    basis_action_det_expansion,
    basis_action_matrix,
    count_orbits,
    enumerate_precision_embeddings,
    enumerate_residue_embeddings,
    is_optimal_independence,
    is_optimal_minor,
    is_optimal_oracle,
    local_embedding_number,
    quadratic_criterion,
    regular_representation,
)
from selectis.orders import AlgebraClass, classify_residue_algebra, from_monic_poly
from selectis.sampling import (
    SCENARIOS,
    exhaustive_quadratic_embeddings,
    random_cubic_embedding,
    random_instance,
    random_monogenic_order,
)
from selectis.selectivity import (
    ADMITS_ALL,
    decide_selectivity,
    global_embedding_count,
    sandwich_report,
    type_group,
)


def _report(number: int, text: str) -> None:
    print(f"\n[acceptance] criterion {number:02d} PASS: {text}")


def _quadratic_space():
    for q in (2, 3):
        for k in (1, 2):
            yield from exhaustive_quadratic_embeddings(q, k)


@pytest.fixture(scope="module")
def instance_corpus():
    rng = random.Random(20240917)
    return [
        random_instance(rng, SCENARIOS[i % len(SCENARIOS)]) for i in range(250)
    ]


def test_criterion_01_equivalence_of_all_optimality_tests():
    cases = 0
    for emb in _quadratic_space():
        verdicts = {
            is_optimal_independence(emb),
            is_optimal_minor(emb)[0],
            is_optimal_oracle(emb),
            quadratic_criterion(emb),
        }
        assert len(verdicts) == 1, emb
        cases += 1
    assert cases == 16 + 256 + 81 + 6561
    rng = random.Random(1201)
    for _ in range(1000):
        q = rng.choice((2, 3, 5))
        k = rng.randrange(1, 3)
        emb = random_cubic_embedding(rng, q, k)
        verdicts = {
            is_optimal_independence(emb),
            is_optimal_minor(emb)[0],
            is_optimal_oracle(emb),
        }
        assert len(verdicts) == 1, emb
        cases += 1
    _report(1, f"independence, minor, oracle (and n=2 closed form) agree on {cases} embeddings")


def test_criterion_02_quadratic_truth_table():
    cases = 0
    for emb in _quadratic_space():
        (a, b), (c, d) = emb.matrices[1].entries
        q = emb.ring.q
        closed_form = (b % q != 0) or (c % q != 0) or ((d - a) % q != 0)
        assert is_optimal_minor(emb)[0] == closed_form
        assert quadratic_criterion(emb) == closed_form
        cases += 1
    _report(2, f"n=2 verdict equals 'b, c or d-a is a unit' on all {cases} embeddings")


def test_criterion_03_regular_representation_always_optimal():
    rng = random.Random(1203)
    for _ in range(500):
        q = rng.choice((2, 3, 5))
        k = rng.randrange(1, 3)
        n = rng.choice((2, 3))
        order = random_monogenic_order(rng, q, k, n)
        emb = regular_representation(order)
        assert emb.is_homomorphism()
        assert is_optimal_independence(emb)
        assert is_optimal_minor(emb)[0]
        assert is_optimal_oracle(emb)
        if n == 2:
            assert quadratic_criterion(emb)
    _report(3, "500 seeded regular representations pass every criterion")


def _covered_polynomials(q: int, n: int, k: int):
    ring = LocalRing(q, k)
    for coeffs in itertools.product(range(ring.modulus), repeat=n):
        order = from_monic_poly(ring, list(coeffs))
        tag = classify_residue_algebra(order).tag
        if tag in (AlgebraClass.SPLIT_ETALE, AlgebraClass.UNRAMIFIED_FIELD):
            yield order


def test_criterion_04_local_uniqueness_m_equals_one():
    checked = 0
    for n, q in ((2, 2), (2, 3), (3, 2)):
        for order in _covered_polynomials(q, n, 1):
            result = count_orbits(enumerate_residue_embeddings(order))
            assert result.orbit_count == 1, (q, n, order.monic_poly)
            assert result.optimal_embeddings >= 1
            checked += 1
    lifted = 0
    for q in (2, 3):
        for order in _covered_polynomials(q, 2, 2):
            cands = enumerate_precision_embeddings(order, 2)
            result = count_orbits(cands)
            assert result.precision == 2
            assert result.orbit_count == 1, (q, order.monic_poly)
            lifted += 1
    _report(
        4,
        f"orbit count 1 for {checked} residue-level orders and {lifted} mod-q^2 lifts",
    )


def test_criterion_05_det_expansion_identity():
    cases = 0
    for q in (2, 3):
        for k in (1, 2):
            for emb in exhaustive_quadratic_embeddings(q, k):
                for alpha in itertools.product(range(q), repeat=2):
                    direct = basis_action_matrix(emb, alpha).det()
                    assert direct == basis_action_det_expansion(emb, alpha)
                    cases += 1
    _report(5, f"selection expansion equals the direct determinant in {cases} cases")


def test_criterion_06_type_group_structure(instance_corpus):
    assert len(instance_corpus) >= 200
    for inst in instance_corpus:
        result = type_group(inst)
        exp = result.group.exponent()
        assert exp in (1, inst.degree)
        mod_p = quotient(inst.class_group, power_subgroup(inst.class_group, inst.degree))
        assert mod_p.group.order % result.group.order == 0
    _report(
        6,
        f"type group exponent divides p and order divides |Cl/Cl^p| on {len(instance_corpus)} instances",
    )


def test_criterion_07_main_theorem_proportions(instance_corpus):
    selective_count = 0
    admitting_all = 0
    for inst in instance_corpus:
        report = decide_selectivity(inst)
        if not report.can_embed:
            continue
        if report.selective:
            selective_count += 1
            assert report.admitting_types is not ADMITS_ALL
            assert report.admitting_types.index == inst.degree
            assert report.admitting_types.order * inst.degree == report.type_number
            assert report.proportion == Fraction(1, inst.degree)
        else:
            admitting_all += 1
            assert report.admitting_types is ADMITS_ALL
    assert selective_count >= 10 and admitting_all >= 10
    _report(
        7,
        f"{selective_count} selective instances admit exactly 1/p of types; "
        f"{admitting_all} embeddable non-selective instances admit all",
    )


def test_criterion_08_sandwich_arithmetic(instance_corpus):
    for inst in instance_corpus:
        report = sandwich_report(inst)
        i1, i2, i3 = report.indices
        if inst.extension.galois:
            assert i1 * i2 * i3 == inst.degree
            assert sum(i > 1 for i in (i1, i2, i3)) <= 1
        else:
            assert (i1, i2, i3) == (1, 1, 1)
    _report(8, f"sandwich indices multiply to p with at most one strict step on {len(instance_corpus)} instances")


def test_criterion_09_selectivity_forces_empty_ramification(instance_corpus):
    selective = 0
    for inst in instance_corpus:
        report = decide_selectivity(inst)
        if report.selective:
            selective += 1
            assert inst.ramified_primes == ()
    assert selective >= 10
    _report(9, f"all {selective} selective instances have empty algebra ramification")


def test_criterion_10_product_formula(instance_corpus):
    import dataclasses

    for inst in instance_corpus[:60]:
        for length in (0, 1, 3):
            probe = dataclasses.replace(inst, local_embedding_numbers=(1,) * length)
            result = global_embedding_count(probe)
            assert result.count == 1
            assert result.violations == ()
    # local factors under maximal-order hypotheses are themselves 1
    produced = []
    for n, q in ((2, 2), (2, 3), (3, 2)):
        for order in _covered_polynomials(q, n, 1):
            matrix_side = local_embedding_number(order, AlgebraKind.MATRIX)
            assert matrix_side.theorem_applies
            produced.append(matrix_side.count)
            klass = classify_residue_algebra(order)
            if klass.tag is AlgebraClass.UNRAMIFIED_FIELD:
                division_side = local_embedding_number(
                    order, AlgebraKind.DIVISION, integrally_closed=True
                )
                produced.append(division_side.count)
    assert produced and all(v == 1 for v in produced)
    _report(
        10,
        f"global count is 1 for all-ones local data; {len(produced)} theorem-backed local factors all equal 1",
    )
