"""Command-line front end.

Machine-readable output goes to stdout (JSON reports, CSV rows, edge
lists); one-line human summaries go to stderr. Exit codes: 0 for
partitioned/packed/valid verdicts, 1 for failed/invalid, 2 for usage
errors and refusals.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .cycles import OrientedCycle, chord_root_complete, dirac_order_threshold, partition_order_threshold
from .graph import Graph, GraphParseError, min_degree, sigma2
from .oracle import DEFAULT_ORACLE_LIMIT, OracleLimitError, oracle_partition
from .packing import find_packing_detailed
from .partition import FailureReport, PartitionSuccess, partition, verify_partition
from .generators import InstanceSpec, build_instance, families

ENV_ORACLE_LIMIT = "CHORDPART_ORACLE_LIMIT"


class UsageError(Exception):
    pass


def _oracle_limit_default() -> int:
    raw = os.environ.get(ENV_ORACLE_LIMIT)
    if raw is None:
        return DEFAULT_ORACLE_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{ENV_ORACLE_LIMIT} must be an integer, got {raw!r}") from None


def _read_graph(path: str) -> Graph:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    return Graph.from_edge_list_text(text)


def _graph_digest(g: Graph) -> str:
    return hashlib.sha256(g.to_edge_list_text().encode()).hexdigest()[:16]


def _report(command: str, g: Graph | None, params: dict, verdict: str, **extra) -> dict:
    rep: dict = {"command": command}
    if g is not None:
        rep["input"] = {"hash": _graph_digest(g), "n": g.n, "m": g.m}
    rep["params"] = params
    rep["verdict"] = verdict
    rep.update(extra)
    return rep


def _emit(report: dict, summary: str) -> None:
    print(json.dumps(report, sort_keys=True))
    print(summary, file=sys.stderr)


_EXIT_BY_VERDICT = {
    "partitioned": 0, "packed": 0, "valid": 0, "checked": 0, "generated": 0, "done": 0,
    "failed": 1, "invalid": 1,
    "refused": 2,
}


def validate_run_report(report: dict) -> list[str]:
    """Schema check used by tests and by the report round-trip."""
    problems = []
    for key in ("command", "params", "verdict"):
        if key not in report:
            problems.append(f"missing key {key!r}")
    verdict = report.get("verdict")
    if verdict not in _EXIT_BY_VERDICT:
        problems.append(f"unknown verdict {verdict!r}")
    if verdict in ("partitioned", "packed") and "cycles" not in report:
        problems.append("cycles missing for a success verdict")
    if verdict in ("failed", "invalid", "refused") and "cycles" in report:
        problems.append("cycles present for a non-success verdict")
    return problems


def _finish(report: dict, summary: str) -> int:
    problems = validate_run_report(report)
    if problems:
        raise RuntimeError("malformed report: " + "; ".join(problems))
    _emit(report, summary)
    return _EXIT_BY_VERDICT[report["verdict"]]


# ---------------------------------------------------------------------------
# commands


def cmd_check(args) -> int:
    g = _read_graph(args.input)
    k, c = args.k, args.c
    s2 = sigma2(g)
    delta = min_degree(g) if g.n else 0
    f_thr = partition_order_threshold(k, c)
    dirac_thr = dirac_order_threshold(k, c)
    pack_order = k * (c + 3)
    pack_sigma = 2 * k * (c + 2) - 1
    conditions = {
        "ore_sigma2": {"value": _jsonable(s2), "threshold": g.n, "ok": s2 >= g.n},
        "ore_order": {"value": g.n, "threshold": f_thr, "ok": g.n >= f_thr},
        "dirac_min_degree": {"value": delta, "threshold_twice": g.n, "ok": 2 * delta >= g.n},
        "dirac_order": {"value": g.n, "threshold": dirac_thr, "ok": g.n >= dirac_thr},
        "packing_order": {"value": g.n, "threshold": pack_order, "ok": g.n >= pack_order},
        "packing_sigma2": {"value": _jsonable(s2), "threshold": pack_sigma, "ok": s2 >= pack_sigma},
    }
    rep = _report("check", g, {"k": k, "c": c}, "checked",
                  sigma2=_jsonable(s2), min_degree=delta, conditions=conditions)
    passed = sum(1 for v in conditions.values() if v["ok"])
    return _finish(rep, f"check: n={g.n} m={g.m} sigma2={s2} delta={delta} "
                        f"({passed}/{len(conditions)} conditions hold)")


def cmd_pack(args) -> int:
    g = _read_graph(args.input)
    t0 = time.perf_counter()
    res = find_packing_detailed(g, args.k, args.c, args.budget)
    elapsed = time.perf_counter() - t0
    params = {"k": args.k, "c": args.c, "budget": args.budget}
    if res.packing is None:
        rep = _report("pack", g, params, "failed", found=False,
                      nodes_explored=res.nodes, budget_exhausted=res.exhausted,
                      timings={"total_s": round(elapsed, 6)})
        return _finish(rep, f"pack: no packing found (nodes={res.nodes})")
    rep = _report("pack", g, params, "packed", found=True,
                  cycles=[cyc.to_json() for cyc in res.packing.cycles],
                  nodes_explored=res.nodes,
                  timings={"total_s": round(elapsed, 6)})
    return _finish(rep, f"pack: found {args.k} cycles (nodes={res.nodes})")


def cmd_partition(args) -> int:
    g = _read_graph(args.input)
    threshold = args.oracle_threshold if args.oracle_threshold is not None else _oracle_limit_default()
    t0 = time.perf_counter()
    outcome = partition(g, args.k, args.c, budget=args.budget, oracle_threshold=threshold)
    elapsed = time.perf_counter() - t0
    params = {"k": args.k, "c": args.c, "budget": args.budget, "oracle_threshold": threshold}
    if args.trace:
        for record in outcome.log.records:
            print(json.dumps({"type": "move", **record.to_json()}, sort_keys=True))
    if isinstance(outcome, PartitionSuccess):
        cert = verify_partition(g, args.k, args.c, outcome.cycles)
        if not cert.ok:
            raise RuntimeError("partition result failed re-verification")
        rep = _report("partition", g, params, "partitioned",
                      cycles=[cyc.to_json() for cyc in outcome.cycles],
                      move_count=outcome.log.move_count,
                      oracle_rescued=outcome.log.oracle_rescued,
                      potential={"initial": _jsonable(outcome.log.initial_potential),
                                 "final": _jsonable(outcome.log.final_potential)},
                      timings={"total_s": round(elapsed, 6)})
        return _finish(rep, f"partition: spanned with {outcome.log.move_count} moves"
                            + (" (oracle rescue)" if outcome.log.oracle_rescued else ""))
    fr: FailureReport = outcome
    rep = _report("partition", g, params, "failed",
                  move_count=fr.log.move_count,
                  diagnostics={
                      "sigma2": _jsonable(fr.sigma2), "sigma2_ok": fr.sigma2_ok,
                      "order_threshold": fr.order_threshold, "order_ok": fr.order_ok,
                      "packing_found": fr.packing_found,
                      "packing_exhausted": fr.packing_exhausted,
                      "oracle_verdict": fr.oracle_verdict,
                      "uncovered": list(fr.uncovered),
                      "best_potential": _jsonable(fr.best_potential),
                      "stall": fr.stall.to_json() if fr.stall else None,
                  },
                  timings={"total_s": round(elapsed, 6)})
    return _finish(rep, f"partition: failed (oracle says {fr.oracle_verdict})")


def cmd_verify(args) -> int:
    g = _read_graph(args.input)
    with open(args.cycles, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    if isinstance(payload, dict):
        payload = payload.get("cycles", [])
    seqs = []
    for item in payload:
        seqs.append(item["seq"] if isinstance(item, dict) else item)
    cert = verify_partition(g, args.k, args.c, seqs)
    params = {"k": args.k, "c": args.c}
    detail = {
        "cycles_valid": list(cert.cycles_valid),
        "chord_counts": list(cert.chord_counts),
        "disjoint": cert.disjoint,
        "spanning": cert.spanning,
        "covered": cert.covered,
        "problems": list(cert.problems),
    }
    if cert.ok:
        rep = _report("verify", g, params, "valid", certificate=detail)
        return _finish(rep, "verify: valid partition")
    rep = _report("verify", g, params, "invalid", certificate=detail)
    return _finish(rep, "verify: invalid (" + "; ".join(cert.problems) + ")")


def cmd_generate(args) -> int:
    params = _parse_params(args.params)
    if args.seed is not None:
        params.setdefault("seed", args.seed)
    spec = InstanceSpec(args.family, params)
    inst = build_instance(spec)
    text = inst.graph.to_edge_list_text()
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    sidecar = {"family": args.family, "metadata": inst.metadata,
               "hash": _graph_digest(inst.graph)}
    blob = json.dumps(sidecar, sort_keys=True)
    if args.sidecar:
        with open(args.sidecar, "w", encoding="utf-8") as fh:
            fh.write(blob + "\n")
    else:
        print(blob, file=sys.stderr)
    return 0


def _experiment_row(task: tuple) -> dict:
    family, n, k, c, seed, threshold, budget = task
    inst = build_instance(InstanceSpec(family, {"n": n, "seed": seed}))
    g = inst.graph
    t0 = time.perf_counter()
    outcome = partition(g, k, c, budget=budget, oracle_threshold=0)
    elapsed = time.perf_counter() - t0
    row = {
        "family": family, "n": n, "k": k, "c": c, "seed": seed,
        "sigma2": _jsonable(sigma2(g)),
        "verdict": "partitioned" if isinstance(outcome, PartitionSuccess) else "failed",
        "move_count": outcome.log.move_count,
        "time_s": round(elapsed, 6),
    }
    if threshold > 0:
        if n <= threshold:
            witness = oracle_partition(g, k, c, limit=threshold)
            row["oracle_verdict"] = "partitioned" if witness is not None else "none"
        else:
            row["oracle_verdict"] = ""
    return row


def cmd_experiment(args) -> int:
    if args.n_min > args.n_max:
        tasks = []
    else:
        tasks = [
            (args.family, n, args.k, args.c, seed, args.oracle_threshold, args.budget)
            for n in range(args.n_min, args.n_max + 1)
            for seed in range(args.seeds)
        ]
    if args.workers > 1 and tasks:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(_experiment_row, tasks))
    else:
        rows = [_experiment_row(t) for t in tasks]
    rows.sort(key=lambda r: (r["n"], r["seed"]))

    columns = ["family", "n", "k", "c", "seed", "sigma2", "verdict", "move_count", "time_s"]
    if args.oracle_threshold > 0:
        columns.append("oracle_verdict")
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=columns, extrasaction="ignore")
    writer.writeheader()
    writer.writerows(rows)
    payload = out.getvalue()
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)

    summary = {}
    for n in range(args.n_min, args.n_max + 1):
        group = [r for r in rows if r["n"] == n]
        if group:
            rate = sum(1 for r in group if r["verdict"] == "partitioned") / len(group)
            summary[n] = {"instances": len(group), "success_rate": round(rate, 4)}
            print(f"experiment: n={n} rate={rate:.3f} ({len(group)} instances)", file=sys.stderr)
    if args.summary_json:
        with open(args.summary_json, "w", encoding="utf-8") as fh:
            json.dump({"rows": len(rows), "per_n": summary}, fh, sort_keys=True)
    return 0


# ---------------------------------------------------------------------------
# wiring


def _jsonable(value):
    if value is None:
        return None
    if isinstance(value, float):
        return "infinity" if value == float("inf") else value
    if isinstance(value, tuple):
        return list(value)
    return value


def _parse_params(raw: str | None) -> dict:
    if not raw:
        return {}
    out = {}
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise UsageError(f"params must be key=value pairs, got {part!r}")
        key, value = part.split("=", 1)
        try:
            out[key.strip()] = int(value)
        except ValueError:
            raise UsageError(f"param {key.strip()!r} must be an integer, got {value!r}") from None
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chordpart",
        description="Partition graphs into vertex-disjoint cycles with required chord counts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_kc=True):
        p.add_argument("--input", default="-", help="edge-list file, or - for stdin")
        if with_kc:
            p.add_argument("--k", type=int, required=True, help="number of cycles")
            p.add_argument("--c", type=int, required=True, help="chords required per cycle")

    p = sub.add_parser("check", help="evaluate degree and order conditions")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("pack", help="find k disjoint chorded cycles")
    common(p)
    p.add_argument("--budget", type=int, default=200_000)
    p.set_defaults(func=cmd_pack)

    p = sub.add_parser("partition", help="partition the graph into k chorded cycles")
    common(p)
    p.add_argument("--budget", type=int, default=200_000)
    p.add_argument("--oracle-threshold", type=int, default=None,
                   help=f"max n for exhaustive fallback (default {DEFAULT_ORACLE_LIMIT}, "
                        f"env {ENV_ORACLE_LIMIT})")
    p.add_argument("--trace", action="store_true", help="emit one JSON line per move")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("verify", help="verify a claimed partition")
    common(p)
    p.add_argument("--cycles", required=True, help="JSON file with the claimed cycles")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="emit a generated instance as an edge list")
    p.add_argument("--family", required=True, choices=list(families()))
    p.add_argument("--params", default="", help="comma-separated key=value integers")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--output", default="-")
    p.add_argument("--sidecar", default=None, help="write the metadata JSON here")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("experiment", help="sweep n and seeds, emit CSV results")
    p.add_argument("--family", default="ore_random",
                   choices=["ore_random", "dirac_random", "random"])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--budget", type=int, default=200_000)
    p.add_argument("--oracle-threshold", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output", default="-")
    p.add_argument("--summary-json", default=None)
    p.set_defaults(func=cmd_experiment)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if getattr(args, "oracle_threshold", "absent") is None:
            args.oracle_threshold = _oracle_limit_default()
        return args.func(args)
    except GraphParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, OracleLimitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
