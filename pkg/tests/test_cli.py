"""Command-line surface: schemas, exit codes, determinism."""

import json

from selectis.cli import main

SELECTIVE_INSTANCE = {
    "schema_version": "v1",
    "degree_p": 3,
    "class_group": {"cyclic_orders": [3]},
    "ramified_primes": [],
    "K": {
        "galois": True,
        "abelian": True,
        "unramified_finite": True,
        "unramified_real": True,
        "norm_subgroup": {"generators": []},
    },
    "local_embedding_numbers": [1, 1],
}


def run(tmp_path, command, payload, *extra):
    src = tmp_path / "in.json"
    dst = tmp_path / "out.json"
    src.write_text(json.dumps(payload), encoding="utf-8")
    code = main(
        [command, "--input", str(src), "--output", str(dst), *extra]
    )
    body = json.loads(dst.read_text(encoding="utf-8")) if dst.exists() else None
    return code, body


class TestOptimalCheck:
    def test_optimal_example(self, tmp_path):
        payload = {
            "q": 3,
            "k": 1,
            "n": 2,
            "order": {"monic_poly": [1, 2]},
            "matrices": [[[1, 0], [0, 1]], [[2, 1], [0, 2]]],
        }
        code, body = run(tmp_path, "optimal-check", payload)
        assert code == 0
        assert body["optimal"] is True
        assert body["witness"]["minor"] == [[1, 1], [1, 2]]

    def test_dependence_witness_reverifies(self, tmp_path):
        payload = {
            "q": 3,
            "k": 2,
            "order": {"monic_poly": [0, 0]},
            "matrices": [[[1, 0], [0, 1]], [[3, 0], [0, 6]]],
        }
        code, body = run(tmp_path, "optimal-check", payload)
        assert code == 1
        assert body["optimal"] is False
        dep = body["witness"]["dependence"]
        assert dep == [0, 1]
        # re-verify: the combination annihilates the residues
        mats = payload["matrices"]
        for r in range(2):
            for c in range(2):
                assert sum(dep[i] * mats[i][r][c] for i in range(2)) % 3 == 0

    def test_identity_violation_exits_2(self, tmp_path):
        payload = {
            "q": 3,
            "k": 1,
            "order": {"monic_poly": [2, 0]},
            "matrices": [[[0, 1], [1, 0]], [[0, 1], [1, 0]]],
        }
        code, _ = run(tmp_path, "optimal-check", payload)
        assert code == 2

    def test_malformed_input_exits_2(self, tmp_path):
        code, _ = run(tmp_path, "optimal-check", {"q": 3})
        assert code == 2

    def test_wrong_schema_version_exits_2(self, tmp_path):
        payload = {
            "schema_version": "v0",
            "q": 3,
            "k": 1,
            "order": {"monic_poly": [1, 2]},
            "matrices": [[[1, 0], [0, 1]], [[2, 1], [0, 2]]],
        }
        code, _ = run(tmp_path, "optimal-check", payload)
        assert code == 2


class TestRegrep:
    def test_emits_verified_embedding(self, tmp_path):
        payload = {"q": 3, "k": 2, "n": 2, "order": {"monic_poly": [8, 0]}}
        code, body = run(tmp_path, "regrep", payload)
        assert code == 0
        assert body["matrices"][1] == [[0, 1], [1, 0]]
        # round-trip: the emitted embedding passes optimal-check
        code2, body2 = run(tmp_path, "optimal-check", body)
        assert code2 == 0 and body2["optimal"] is True

    def test_companion_matrix(self, tmp_path):
        payload = {"q": 2, "k": 1, "order": {"monic_poly": [1, 1]}}
        code, body = run(tmp_path, "regrep", payload)
        assert code == 0
        assert body["matrices"][1] == [[0, 1], [1, 1]]

    def test_invalid_structure_constants_exit_2(self, tmp_path):
        payload = {
            "q": 2,
            "k": 1,
            "order": {"structure_constants": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]},
        }
        code, _ = run(tmp_path, "regrep", payload)
        assert code == 2


class TestCountDecideSandwich:
    def test_count_binary_quadratic(self, tmp_path):
        payload = {"q": 2, "k": 1, "order": {"monic_poly": [1, 1]}}
        code, body = run(tmp_path, "count", payload)
        assert code == 0
        assert body["m"] == 1
        assert body["total_embeddings"] == 2

    def test_count_guard_exits_3(self, tmp_path):
        payload = {"q": 5, "k": 1, "order": {"monic_poly": [1, 1]}}
        code, _ = run(tmp_path, "count", payload, "--max-q", "3")
        assert code == 3

    def test_decide_selective(self, tmp_path):
        code, body = run(tmp_path, "decide", SELECTIVE_INSTANCE)
        assert code == 0
        assert body["selective"] is True
        assert body["proportion"] == "1/3"
        assert body["admitting"] == 1
        assert body["of"] == 3
        assert body["sandwich"] == [1, 1, 3]

    def test_decide_non_galois(self, tmp_path):
        payload = dict(SELECTIVE_INSTANCE)
        payload["K"] = {
            "galois": False,
            "abelian": False,
            "unramified_finite": True,
            "unramified_real": True,
            "norm_subgroup": None,
        }
        code, body = run(tmp_path, "decide", payload)
        assert code == 0
        assert body["selective"] is False
        assert body["admitting"] == "all"

    def test_decide_inconsistent_exits_2(self, tmp_path):
        payload = json.loads(json.dumps(SELECTIVE_INSTANCE))
        payload["ramified_primes"] = [{"class": [0], "frobenius_in_K": "inert"}]
        code, _ = run(tmp_path, "decide", payload)
        assert code == 2

    def test_sandwich_indices(self, tmp_path):
        code, body = run(tmp_path, "sandwich", SELECTIVE_INSTANCE)
        assert code == 0
        assert body["indices"] == [1, 1, 3]
        assert body["groups"]["extension_norms"]["index"] == 3

    def test_group_order_guard_exits_3(self, tmp_path):
        payload = json.loads(json.dumps(SELECTIVE_INSTANCE))
        payload["class_group"] = {"cyclic_orders": [3, 101]}
        payload["K"]["norm_subgroup"] = {"generators": [[0, 1]]}
        code, _ = run(tmp_path, "decide", payload, "--max-group-order", "100")
        assert code == 3


class TestVerify:
    def test_small_suite_passes(self, tmp_path):
        dst = tmp_path / "report.json"
        code = main(
            [
                "verify",
                "--seed",
                "7",
                "--max-q",
                "3",
                "--max-k",
                "1",
                "--output",
                str(dst),
            ]
        )
        body = json.loads(dst.read_text(encoding="utf-8"))
        assert code == 0
        assert body["all_pass"] is True
        assert len(body["families"]) >= 7

    def test_mutant_detected(self, tmp_path):
        dst = tmp_path / "report.json"
        code = main(
            [
                "verify",
                "--seed",
                "7",
                "--max-q",
                "3",
                "--max-k",
                "1",
                "--inject-mutant",
                "--output",
                str(dst),
            ]
        )
        body = json.loads(dst.read_text(encoding="utf-8"))
        assert code == 1
        assert body["all_pass"] is False
        assert body["first_failure"]["family"] == "criterion_equivalence"

    def test_dimension_guard_exits_3(self, tmp_path):
        assert main(["verify", "--max-n", "1"]) == 3

    def test_seed_env_fallback(self, tmp_path, monkeypatch):
        monkeypatch.setenv("SELECTIS_SEED", "99")
        from selectis.cli import build_parser

        args = build_parser().parse_args(["verify"])
        assert args.seed == 99


class TestDeterminism:
    def test_byte_identical_reports(self, tmp_path):
        src = tmp_path / "in.json"
        src.write_text(json.dumps(SELECTIVE_INSTANCE), encoding="utf-8")
        outs = []
        for name in ("a.json", "b.json"):
            dst = tmp_path / name
            assert main(["decide", "--input", str(src), "--output", str(dst)]) == 0
            outs.append(dst.read_bytes())
        assert outs[0] == outs[1]

    def test_verify_reports_reproducible(self, tmp_path):
        outs = []
        for name in ("a.json", "b.json"):
            dst = tmp_path / name
            assert (
                main(
                    [
                        "verify",
                        "--seed",
                        "123",
                        "--max-q",
                        "2",
                        "--max-k",
                        "1",
                        "--output",
                        str(dst),
                    ]
                )
                == 0
            )
            outs.append(dst.read_bytes())
        assert outs[0] == outs[1]
