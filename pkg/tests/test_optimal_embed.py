"""Optimality criteria, enumeration, orbit counting, local counts."""

import itertools
import random

import pytest

from selectis.errors import (
    InvalidOrder,
    NotAHomomorphism,
    SizeGuardExceeded,
    WrongDimension,
)
from selectis.local_arith import LocalMatrix, LocalRing, conjugate
from selectis.optimal_embed import (
    AlgebraKind,
    DependenceFound,
    LocalEmbedding,
    MinorFound,
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
    selection_matrix,
)
from selectis.orders import from_monic_poly, from_structure_constants
from selectis.sampling import embedding_from_matrix, random_cubic_embedding


def brute_force_solutions(coeffs, q, n):
    """Independent oracle: scan all of M_n(F_q) for roots of the monic poly."""
    hits = []
    for flat in itertools.product(range(q), repeat=n * n):
        a = [list(flat[r * n : (r + 1) * n]) for r in range(n)]

        def mat_mul(x, y):
            return [
                [sum(x[i][t] * y[t][j] for t in range(n)) % q for j in range(n)]
                for i in range(n)
            ]

        power = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        acc = [[0] * n for _ in range(n)]
        for c in coeffs:
            for i in range(n):
                for j in range(n):
                    acc[i][j] = (acc[i][j] + c * power[i][j]) % q
            power = mat_mul(power, a)
        for i in range(n):
            for j in range(n):
                acc[i][j] = (acc[i][j] + power[i][j]) % q
        if all(acc[i][j] == 0 for i in range(n) for j in range(n)):
            hits.append(tuple(tuple(row) for row in a))
    return hits


class TestRegularRepresentation:
    def test_swap_matrix_for_split_quadratic(self):
        order = from_monic_poly(LocalRing(3, 2), [8, 0])
        emb = regular_representation(order)
        assert emb.matrices[1].entries == ((0, 1), (1, 0))

    def test_identity_first(self):
        order = from_monic_poly(LocalRing(5, 1), [3, 2])
        emb = regular_representation(order)
        assert emb.matrices[0] == LocalMatrix.identity(order.ring, 2)

    def test_companion_for_binary_quadratic(self):
        order = from_monic_poly(LocalRing(2, 1), [1, 1])
        emb = regular_representation(order)
        assert emb.matrices[1].entries == ((0, 1), (1, 1))

    def test_first_columns_are_standard_vectors(self):
        order = from_monic_poly(LocalRing(3, 2), [4, 7, 2])
        emb = regular_representation(order)
        for i, mat in enumerate(emb.matrices):
            column = [mat.entries[row][0] for row in range(3)]
            assert column == [1 if row == i else 0 for row in range(3)]

    def test_rejects_invalid_order(self):
        ring = LocalRing(2, 1)
        constants = [
            [[1, 0], [0, 0]],
            [[0, 0], [1, 0]],
        ]
        with pytest.raises(InvalidOrder):
            regular_representation(from_structure_constants(ring, constants))

    def test_always_homomorphic_and_optimal(self):
        rng = random.Random("regrep")
        for _ in range(200):
            q = rng.choice([2, 3, 5])
            k = rng.randrange(1, 3)
            n = rng.randrange(2, 4)
            ring = LocalRing(q, k)
            order = from_monic_poly(ring, [rng.randrange(ring.modulus) for _ in range(n)])
            emb = regular_representation(order)
            assert emb.is_homomorphism()
            assert is_optimal_independence(emb)


class TestCriteria:
    def test_unit_upper_entry(self):
        ring = LocalRing(3, 1)
        emb = embedding_from_matrix(LocalMatrix.from_rows(ring, [[2, 1], [0, 2]]))
        assert is_optimal_independence(emb)
        verdict, witness = is_optimal_minor(emb)
        assert verdict and witness == MinorFound(((1, 1), (1, 2)))
        assert is_optimal_oracle(emb)
        assert quadratic_criterion(emb)

    def test_scalar_double(self):
        ring = LocalRing(3, 1)
        emb = embedding_from_matrix(LocalMatrix.diagonal(ring, [2, 2]))
        verdict, witness = is_optimal_minor(emb)
        assert not verdict
        assert isinstance(witness, DependenceFound)
        # (-2, 1) reduces to (1, 1) mod 3
        assert witness.coefficients == (1, 1)
        assert not quadratic_criterion(emb)
        assert not is_optimal_oracle(emb)

    def test_zero_residue_generator(self):
        ring = LocalRing(3, 2)
        order = from_monic_poly(ring, [0, 0])
        emb = LocalEmbedding(
            order,
            (LocalMatrix.identity(ring, 2), LocalMatrix.diagonal(ring, [3, -3])),
        )
        assert emb.is_homomorphism()
        assert not is_optimal_independence(emb)
        verdict, witness = is_optimal_minor(emb)
        assert not verdict and witness == DependenceFound((0, 1))
        assert not is_optimal_oracle(emb)

    def test_unit_diagonal_difference(self):
        ring = LocalRing(3, 1)
        emb = embedding_from_matrix(LocalMatrix.diagonal(ring, [1, 2]))
        assert quadratic_criterion(emb)  # d - a = 1
        assert is_optimal_oracle(emb)

    def test_all_congruent_entries(self):
        ring = LocalRing(3, 1)
        emb = embedding_from_matrix(LocalMatrix.from_rows(ring, [[0, 3], [3, 0]]))
        assert not quadratic_criterion(emb)
        assert not is_optimal_oracle(emb)

    def test_closed_form_derivation(self):
        # b = c = 0, a = d: dependence via (-a, 1)
        ring = LocalRing(5, 1)
        for a in range(5):
            emb = embedding_from_matrix(LocalMatrix.diagonal(ring, [a, a]))
            assert not is_optimal_oracle(emb)

    def test_wrong_dimension(self):
        order = from_monic_poly(LocalRing(2, 1), [1, 0, 0])
        emb = regular_representation(order)
        with pytest.raises(WrongDimension):
            quadratic_criterion(emb)

    def test_non_homomorphism_rejected(self):
        ring = LocalRing(3, 1)
        order = from_monic_poly(ring, [1, 0])
        bad = LocalEmbedding(
            order,
            (LocalMatrix.identity(ring, 2), LocalMatrix.diagonal(ring, [1, 1])),
        )
        for criterion in (is_optimal_independence, is_optimal_oracle):
            with pytest.raises(NotAHomomorphism):
                criterion(bad)
        with pytest.raises(NotAHomomorphism):
            is_optimal_minor(bad)

    def test_identity_matrix_required_first(self):
        ring = LocalRing(3, 1)
        order = from_monic_poly(ring, [2, 0])
        swap = LocalMatrix.from_rows(ring, [[0, 1], [1, 0]])
        bad = LocalEmbedding(order, (swap, swap))
        with pytest.raises(NotAHomomorphism):
            is_optimal_independence(bad)

    def test_optimality_invariant_under_conjugation(self):
        rng = random.Random("conj-inv")
        for _ in range(150):
            q = rng.choice([2, 3, 5])
            k = rng.randrange(1, 3)
            emb = random_cubic_embedding(rng, q, k)
            ring = emb.ring
            while True:
                u = LocalMatrix.from_rows(
                    ring,
                    [[rng.randrange(ring.modulus) for _ in range(3)] for _ in range(3)],
                )
                if u.is_invertible:
                    break
            conjugated = LocalEmbedding(
                emb.order, tuple(conjugate(u, m) for m in emb.matrices)
            )
            assert conjugated.is_homomorphism()
            assert is_optimal_independence(emb) == is_optimal_independence(conjugated)


class TestCriterionEquivalence:
    @pytest.mark.parametrize("q,k", [(2, 1), (2, 2), (3, 1), (3, 2)])
    def test_exhaustive_quadratic_space(self, q, k):
        from selectis.sampling import exhaustive_quadratic_embeddings

        for emb in exhaustive_quadratic_embeddings(q, k):
            a = is_optimal_independence(emb)
            b = is_optimal_minor(emb)[0]
            c = is_optimal_oracle(emb)
            d = quadratic_criterion(emb)
            assert a == b == c == d

    def test_random_cubics(self):
        rng = random.Random("cubics")
        for _ in range(400):
            q = rng.choice([2, 3, 5])
            k = rng.randrange(1, 3)
            emb = random_cubic_embedding(rng, q, k)
            assert emb.is_homomorphism()
            a = is_optimal_independence(emb)
            b = is_optimal_minor(emb)[0]
            c = is_optimal_oracle(emb)
            assert a == b == c


class TestBasisAction:
    def test_standard_vector_gives_identity_columns(self):
        order = from_monic_poly(LocalRing(3, 2), [4, 7, 2])
        emb = regular_representation(order)
        v = basis_action_matrix(emb, (1, 0, 0))
        assert v == LocalMatrix.identity(order.ring, 3)
        assert v.det().is_unit

    def test_zero_vector(self):
        order = from_monic_poly(LocalRing(3, 1), [2, 0])
        emb = regular_representation(order)
        assert basis_action_matrix(emb, (0, 0)).det().value == 0

    def test_expansion_cross_check_single(self):
        ring = LocalRing(3, 1)
        emb = embedding_from_matrix(LocalMatrix.from_rows(ring, [[2, 1], [0, 2]]))
        alpha = (1, 1)
        direct = basis_action_matrix(emb, alpha).det()
        assert direct == basis_action_det_expansion(emb, alpha)
        assert direct.value == 2

    @pytest.mark.parametrize("q", [2, 3])
    def test_expansion_identity_everywhere(self, q):
        from selectis.sampling import exhaustive_quadratic_embeddings

        for emb in exhaustive_quadratic_embeddings(q, 1):
            for alpha in itertools.product(range(q), repeat=2):
                assert basis_action_matrix(emb, alpha).det() == basis_action_det_expansion(
                    emb, alpha
                )

    def test_selection_matrix_rows(self):
        ring = LocalRing(3, 1)
        emb = embedding_from_matrix(LocalMatrix.from_rows(ring, [[2, 1], [0, 2]]))
        x = selection_matrix(emb, ((1, 1), (2, 2)))
        assert x.entries == ((1, 2), (1, 2))
        assert x.det().value == 0


class TestEnumeration:
    def test_binary_irreducible_quadratic(self):
        order = from_monic_poly(LocalRing(2, 1), [1, 1])
        cands = enumerate_residue_embeddings(order)
        oracle = brute_force_solutions([1, 1], 2, 2)
        assert len(cands) == len(oracle) == 2
        assert all(c.optimal for c in cands)

    def test_split_quadratic_over_f3(self):
        order = from_monic_poly(LocalRing(3, 1), [2, 0])
        cands = enumerate_residue_embeddings(order)
        oracle = brute_force_solutions([2, 0], 3, 2)
        assert len(cands) == len(oracle) == 14
        scalars = [c for c in cands if not c.optimal]
        assert len(scalars) == 2  # plus and minus the identity

    def test_nilpotent_square(self):
        order = from_monic_poly(LocalRing(2, 1), [0, 0])
        cands = enumerate_residue_embeddings(order)
        zero = [c for c in cands if c.embedding.matrices[1].residue().is_zero]
        assert len(zero) == 1
        assert not zero[0].optimal and not zero[0].injective
        others = [c for c in cands if not c.embedding.matrices[1].residue().is_zero]
        assert others and all(c.optimal and c.injective for c in others)

    def test_solution_sets_match_oracle(self):
        rng = random.Random("enum")
        for _ in range(20):
            q = rng.choice([2, 3])
            n = rng.choice([2, 3])
            if (q, n) == (3, 3):
                continue  # oracle too slow; covered by (2,3) and (3,2)
            coeffs = [rng.randrange(q) for _ in range(n)]
            order = from_monic_poly(LocalRing(q, 1), coeffs)
            got = {c.embedding.matrices[1].entries for c in enumerate_residue_embeddings(order)}
            assert got == set(brute_force_solutions(coeffs, q, n))

    def test_requires_monogenic(self):
        ring = LocalRing(3, 1)
        constants = [
            [[1, 0], [0, 1]],
            [[0, 1], [1, 0]],
        ]
        with pytest.raises(InvalidOrder):
            enumerate_residue_embeddings(from_structure_constants(ring, constants))

    def test_size_guard(self):
        with pytest.raises(SizeGuardExceeded):
            enumerate_residue_embeddings(from_monic_poly(LocalRing(7, 1), [1, 1]))
        with pytest.raises(SizeGuardExceeded):
            enumerate_residue_embeddings(
                from_monic_poly(LocalRing(2, 1), [1, 0, 0, 0])
            )


class TestOrbitCounting:
    def test_binary_quadratic_single_orbit(self):
        order = from_monic_poly(LocalRing(2, 1), [1, 1])
        result = count_orbits(enumerate_residue_embeddings(order))
        assert result.orbit_count == 1
        assert result.optimal_embeddings == 2

    def test_split_f3_single_orbit(self):
        order = from_monic_poly(LocalRing(3, 1), [2, 0])
        result = count_orbits(enumerate_residue_embeddings(order))
        assert (result.total_embeddings, result.optimal_embeddings, result.orbit_count) == (
            14,
            12,
            1,
        )

    def test_cubic_etale_single_orbit(self):
        order = from_monic_poly(LocalRing(2, 1), [1, 0, 0])  # x^3 + 1
        result = count_orbits(enumerate_residue_embeddings(order))
        assert result.orbit_count == 1

    def test_representatives_pairwise_non_conjugate(self):
        # two orbits: x^2 over F_3 has central solutions 0 and nilpotents
        order = from_monic_poly(LocalRing(3, 1), [0, 0])
        cands = enumerate_residue_embeddings(order)
        result = count_orbits(cands)
        assert result.orbit_count == 1  # only nilpotents are optimal
        # independent sweep: conjugating any representative never reaches another
        reps = result.representatives
        for first, second in itertools.combinations(reps, 2):
            a = first.matrices[1]
            found = False
            ring = a.ring
            for flat in itertools.product(range(3), repeat=4):
                u = LocalMatrix.from_rows(ring, [flat[0:2], flat[2:4]])
                if not u.is_invertible:
                    continue
                if conjugate(u, a) == second.matrices[1]:
                    found = True
                    break
            assert not found

    def test_orbit_partition_counts(self):
        # orbit sizes over all optimal embeddings must sum to the optimal count
        rng = random.Random("orbits")
        for _ in range(10):
            q = rng.choice([2, 3])
            coeffs = [rng.randrange(q) for _ in range(2)]
            order = from_monic_poly(LocalRing(q, 1), coeffs)
            cands = enumerate_residue_embeddings(order)
            result = count_orbits(cands)
            assert result.orbit_count <= result.optimal_embeddings <= result.total_embeddings

    def test_precision_two_orbit_count(self):
        order = from_monic_poly(LocalRing(3, 2), [8, 0])  # x^2 - 1 mod 9
        cands = enumerate_precision_embeddings(order, 2)
        result = count_orbits(cands)
        assert result.precision == 2
        assert result.orbit_count == 1

    def test_empty_input(self):
        assert count_orbits([]).orbit_count == 0


class TestLocalEmbeddingNumber:
    def test_matrix_kind_split(self):
        order = from_monic_poly(LocalRing(3, 1), [2, 0])
        result = local_embedding_number(order, AlgebraKind.MATRIX)
        assert result.count == 1
        assert result.theorem_applies

    def test_division_kind_field_with_maximal_flag(self):
        order = from_monic_poly(LocalRing(2, 1), [1, 1])
        result = local_embedding_number(
            order, AlgebraKind.DIVISION, integrally_closed=True
        )
        assert result.count == 1
        assert result.theorem_applies

    def test_division_kind_split_is_empty(self):
        order = from_monic_poly(LocalRing(3, 1), [2, 0])
        result = local_embedding_number(
            order, AlgebraKind.DIVISION, integrally_closed=True
        )
        assert result.count == 0

    def test_division_kind_non_maximal_is_empty(self):
        order = from_monic_poly(LocalRing(2, 1), [1, 1])
        result = local_embedding_number(order, AlgebraKind.DIVISION)
        assert result.count == 0

    def test_matrix_kind_other_class_no_flag(self):
        order = from_monic_poly(LocalRing(2, 1), [0, 0])  # x^2
        result = local_embedding_number(order, AlgebraKind.MATRIX)
        assert not result.theorem_applies
        assert result.count == result.orbits.orbit_count
