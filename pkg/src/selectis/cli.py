"""Command-line surface: JSON in, JSON out, scriptable exit codes.

Exit codes: 0 success (or: embedding is optimal / all properties pass);
1 embedding not optimal or a property family failed; 2 malformed input or
violated invariants; 3 size-guard rejection.  Outputs are deterministic:
identical (command, input, seed) triples produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .abelian_groups import FiniteAbelianGroup, Subgroup, subgroup
from .errors import SelectisError, SizeGuardExceeded
from .local_arith import LocalMatrix, LocalRing
from .optimal_embed import (
    LocalEmbedding,
    MinorFound,
    count_orbits,
    enumerate_residue_embeddings,
    is_optimal_independence,
    is_optimal_minor,
    is_optimal_oracle,
    quadratic_criterion,
    regular_representation,
)
from .orders import OrderPresentation, from_monic_poly, from_structure_constants
from .selectivity import (
    ADMITS_ALL,
    ExtensionData,
    Frobenius,
    GlobalInstance,
    RamifiedPrime,
    decide_selectivity,
    sandwich_report,
)
from .verify import VerifyConfig, run_suite

SCHEMA_VERSION = "v1"

ENV_SEED = "SELECTIS_SEED"


# --- JSON codecs ---------------------------------------------------------------


def _check_schema(doc: dict) -> None:
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {version!r}")


def order_from_json(doc: dict) -> OrderPresentation:
    _check_schema(doc)
    ring = LocalRing(int(doc["q"]), int(doc["k"]))
    spec = doc["order"]
    if "monic_poly" in spec:
        order = from_monic_poly(ring, [int(c) for c in spec["monic_poly"]])
    elif "structure_constants" in spec:
        order = from_structure_constants(ring, spec["structure_constants"])
    else:
        raise ValueError("order needs 'monic_poly' or 'structure_constants'")
    if "n" in doc and int(doc["n"]) != order.n:
        raise ValueError(f"declared n={doc['n']} but order has rank {order.n}")
    return order


def order_to_json(order: OrderPresentation) -> dict:
    if order.is_monogenic:
        body = {"monic_poly": list(order.monic_poly)}
    else:
        body = {
            "structure_constants": [
                [list(row) for row in plane] for plane in order.structure_constants
            ]
        }
    return {"q": order.ring.q, "k": order.ring.k, "n": order.n, "order": body}


def embedding_from_json(doc: dict) -> LocalEmbedding:
    order = order_from_json(doc)
    matrices = tuple(
        LocalMatrix.from_rows(order.ring, rows) for rows in doc["matrices"]
    )
    if len(matrices) != order.n:
        raise ValueError(f"expected {order.n} matrices, got {len(matrices)}")
    return LocalEmbedding(order, matrices)


def embedding_to_json(emb: LocalEmbedding) -> dict:
    doc = order_to_json(emb.order)
    doc["matrices"] = [[list(row) for row in m.entries] for m in emb.matrices]
    return doc


def subgroup_from_json(group: FiniteAbelianGroup, doc: dict) -> Subgroup:
    return subgroup(group, [tuple(int(x) for x in g) for g in doc["generators"]])


def subgroup_to_json(s: Subgroup) -> dict:
    return {"generators": [list(g) for g in s.generators]}


_FROBENIUS = {
    "split": Frobenius.SPLIT,
    "inert": Frobenius.INERT,
    "not_applicable": Frobenius.NOT_APPLICABLE,
}


def instance_from_json(doc: dict) -> GlobalInstance:
    _check_schema(doc)
    group = FiniteAbelianGroup(tuple(int(d) for d in doc["class_group"]["cyclic_orders"]))
    primes = []
    for entry in doc.get("ramified_primes", ()):
        frob = entry.get("frobenius_in_K")
        if frob is not None:
            if frob not in _FROBENIUS:
                raise ValueError(f"unknown frobenius value {frob!r}")
            frob = _FROBENIUS[frob]
        primes.append(RamifiedPrime(tuple(int(x) for x in entry["class"]), frob))
    kdoc = doc["K"]
    norm_sub = None
    if kdoc.get("norm_subgroup") is not None:
        norm_sub = subgroup_from_json(group, kdoc["norm_subgroup"])
    ext = ExtensionData(
        galois=bool(kdoc["galois"]),
        abelian=bool(kdoc["abelian"]),
        unramified_finite=bool(kdoc["unramified_finite"]),
        unramified_real=bool(kdoc["unramified_real"]),
        norm_subgroup=norm_sub,
    )
    local = doc.get("local_embedding_numbers")
    return GlobalInstance(
        degree=int(doc["degree_p"]),
        class_group=group,
        ramified_primes=tuple(primes),
        extension=ext,
        local_embedding_numbers=tuple(int(v) for v in local) if local is not None else None,
    )


# --- commands -------------------------------------------------------------------


def _read_input(args) -> dict:
    if args.input and args.input != "-":
        with open(args.input, "r", encoding="utf-8") as fh:
            return json.load(fh)
    return json.load(sys.stdin)


def _write_output(args, payload: dict) -> None:
    payload = {"schema_version": SCHEMA_VERSION, **payload}
    indent = args.json_indent if args.json_indent >= 0 else None
    text = json.dumps(payload, sort_keys=True, indent=indent) + "\n"
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_optimal_check(args) -> int:
    emb = embedding_from_json(_read_input(args))
    verdicts = [is_optimal_independence(emb)]
    optimal, witness = is_optimal_minor(emb)
    verdicts.append(optimal)
    verdicts.append(is_optimal_oracle(emb))
    if emb.n == 2 and emb.matrices[0].n == 2:
        verdicts.append(quadratic_criterion(emb))
    if len(set(verdicts)) != 1:
        raise SelectisError(f"criteria disagree: {verdicts}")  # pragma: no cover
    if isinstance(witness, MinorFound):
        witness_doc = {"minor": [list(p) for p in witness.positions]}
    else:
        witness_doc = {"dependence": list(witness.coefficients)}
    _write_output(args, {"optimal": optimal, "witness": witness_doc})
    return 0 if optimal else 1


def _cmd_regrep(args) -> int:
    order = order_from_json(_read_input(args))
    emb = regular_representation(order)
    if not is_optimal_independence(emb):
        raise SelectisError("regular representation failed its optimality check")
    _write_output(args, embedding_to_json(emb))
    return 0


def _cmd_count(args) -> int:
    order = order_from_json(_read_input(args))
    if order.ring.q > args.max_q or order.n > args.max_n or order.ring.k > args.max_k:
        raise SizeGuardExceeded(
            f"q={order.ring.q}, n={order.n}, k={order.ring.k} outside configured guards"
        )
    orbits = count_orbits(enumerate_residue_embeddings(order))
    _write_output(
        args,
        {
            "q": order.ring.q,
            "n": order.n,
            "precision": orbits.precision,
            "total_embeddings": orbits.total_embeddings,
            "optimal_embeddings": orbits.optimal_embeddings,
            "m": orbits.orbit_count,
            "representatives": [
                {"generator_image": [list(row) for row in rep.matrices[1].entries]}
                for rep in orbits.representatives
            ],
        },
    )
    return 0


def _guard_instance(args, inst: GlobalInstance) -> None:
    if inst.class_group.order > args.max_group_order:
        raise SizeGuardExceeded(
            f"class group order {inst.class_group.order} exceeds {args.max_group_order}"
        )


def _proportion_str(value: Fraction | None) -> str | None:
    if value is None:
        return None
    return f"{value.numerator}/{value.denominator}" if value.denominator != 1 else str(value.numerator)


def _cmd_decide(args) -> int:
    inst = instance_from_json(_read_input(args))
    _guard_instance(args, inst)
    report = decide_selectivity(inst)
    payload: dict = {
        "can_embed": report.can_embed,
        "selective": report.selective,
        "notes": list(report.notes),
    }
    if report.can_embed:
        admitting = report.admitting_types
        payload.update(
            {
                "type_group": {"cyclic_orders": list(report.type_group.cyclic_orders)},
                "of": report.type_number,
                "admitting": "all" if admitting is ADMITS_ALL else admitting.order,
                "proportion": _proportion_str(report.proportion),
                "H_subgroup": subgroup_to_json(report.norm_image),
                "sandwich": list(report.sandwich.indices),
            }
        )
        if admitting is not ADMITS_ALL:
            payload["admitting_types"] = subgroup_to_json(admitting)
    _write_output(args, payload)
    return 0


def _cmd_sandwich(args) -> int:
    inst = instance_from_json(_read_input(args))
    _guard_instance(args, inst)
    report = sandwich_report(inst)
    groups = {}
    for rung in (report.left, report.middle, report.right):
        groups[rung.role.value] = {
            "index": rung.index_in_ambient,
            "subgroup": subgroup_to_json(rung.subgroup) if rung.subgroup else None,
        }
    _write_output(
        args,
        {"indices": list(report.indices), "groups": groups, "notes": list(report.notes)},
    )
    return 0


def _cmd_verify(args) -> int:
    cfg = VerifyConfig(
        seed=args.seed,
        max_q=args.max_q,
        max_n=args.max_n,
        max_k=args.max_k,
        max_group_order=args.max_group_order,
        inject_mutant=args.inject_mutant,
    )
    suite = run_suite(cfg)
    families = []
    first_failure = None
    for fam in suite.families:
        families.append({"name": fam.name, "cases": fam.cases, "failures": fam.failures})
        if fam.failures and first_failure is None:
            first_failure = {"family": fam.name, "counterexample": fam.counterexample}
    payload = {"seed": suite.seed, "all_pass": suite.all_pass, "families": families}
    if first_failure is not None:
        payload["first_failure"] = first_failure
    _write_output(args, payload)
    return 0 if suite.all_pass else 1


def _default_seed() -> int:
    env = os.environ.get(ENV_SEED)
    return int(env) if env else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="selectis",
        description="Optimal-embedding and selectivity decisions, JSON in / JSON out.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--input", help="input JSON path (default: stdin)")
        p.add_argument("--output", help="output JSON path (default: stdout)")
        p.add_argument("--json-indent", type=int, default=2)
        p.add_argument(
            "--seed",
            type=int,
            default=_default_seed(),
            help=f"seed for randomized work (falls back to ${ENV_SEED}, then 0); "
            "deterministic commands ignore it",
        )
        p.add_argument("--max-q", type=int, default=5)
        p.add_argument("--max-n", type=int, default=3)
        p.add_argument("--max-k", type=int, default=2)
        p.add_argument("--max-group-order", type=int, default=100_000)

    for name, fn, blurb in (
        ("optimal-check", _cmd_optimal_check, "run every optimality criterion on an embedding"),
        ("regrep", _cmd_regrep, "emit the regular-representation embedding of an order"),
        ("count", _cmd_count, "enumerate residue embeddings and count conjugacy orbits"),
        ("decide", _cmd_decide, "decide selectivity for a global instance"),
        ("sandwich", _cmd_sandwich, "report the three norm-group inclusions and indices"),
    ):
        p = sub.add_parser(name, help=blurb)
        common(p)
        p.set_defaults(fn=fn)

    p = sub.add_parser("verify", help="run the randomized cross-check suite")
    common(p)
    p.add_argument(
        "--inject-mutant",
        action="store_true",
        help="testing hook: flip one structure constant and expect a detected failure",
    )
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SizeGuardExceeded as err:
        print(f"size guard: {err}", file=sys.stderr)
        return 3
    except (SelectisError, ValueError, KeyError, TypeError, json.JSONDecodeError) as err:
        print(f"input error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
