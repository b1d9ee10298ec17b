"""Command-line surface: parameter parsing, sweeps, report emission, and
the verification-suite runner.

Exit codes: 0 success, 1 computational failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from .gf import BudgetError, FieldError, factor_prime_power
from .space import make_params, save_code
from . import bounds, counting, graphlab, ramsey, verify

USAGE_ERROR = 2
COMPUTE_ERROR = 1


def _parse_int_list(text: str):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated ints, got {text!r}")


def _params_from_args(args):
    try:
        factor_prime_power(args.q)
    except FieldError as exc:
        raise SystemExit(_usage(f"bad field order: {exc}"))
    try:
        return make_params(args.q, args.n, args.m)
    except ValueError as exc:
        hint = ""
        if "m_i >= n_i" in str(exc):
            hint = " (the space assumes every m_i >= n_i; swap n and m?)"
        raise SystemExit(_usage(f"bad parameters: {exc}{hint}"))


def _usage(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return USAGE_ERROR


def _add_params_args(sp, with_k=True):
    sp.add_argument("-q", type=int, required=True, help="field order (prime power)")
    sp.add_argument("-n", type=_parse_int_list, required=True,
                    help="comma-separated row counts, e.g. 2,1,1")
    sp.add_argument("-m", type=_parse_int_list, required=True,
                    help="comma-separated column counts, e.g. 2,2,2")
    if with_k:
        sp.add_argument("-k", type=int, required=True, help="radius / graph power")


def _add_budget_args(sp):
    env_mv = os.environ.get("SRK_MAX_VERTICES")
    sp.add_argument("--max-vertices", type=int,
                    default=int(env_mv) if env_mv else graphlab.DEFAULT_MAX_VERTICES)
    sp.add_argument("--max-ball", type=int, default=graphlab.DEFAULT_MAX_BALL)
    sp.add_argument("--max-nodes", type=int, default=graphlab.DEFAULT_MAX_NODES)


def cmd_volume(args) -> int:
    params = _params_from_args(args)
    if args.k < 0:
        return _usage("radius must be nonnegative")
    print(counting.ball_volume(params, args.k))
    return 0


def cmd_count(args) -> int:
    try:
        print(counting.count_rank_matrices(args.rows, args.cols, args.r, args.q))
    except ValueError as exc:
        return _usage(str(exc))
    return 0


def cmd_qtable(args) -> int:
    n = args.n
    for k in range(n + 1):
        print(k, counting.gaussian_binomial(n, k, args.q))
    return 0


def cmd_graph_stats(args) -> int:
    params = _params_from_args(args)
    spec = graphlab.PowerGraphSpec(params, args.k)
    try:
        stats = graphlab.graph_stats(spec, args.max_ball)
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return COMPUTE_ERROR
    print(json.dumps(stats.to_json(), sort_keys=True))
    return 0


def cmd_alpha(args) -> int:
    params = _params_from_args(args)
    spec = graphlab.PowerGraphSpec(params, args.k)
    try:
        size, witness = graphlab.max_independent_set(
            spec, args.max_vertices, args.max_nodes)
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return COMPUTE_ERROR
    print(size)
    if args.out:
        save_code(witness, args.out)
    return 0


def cmd_partition(args) -> int:
    params = _params_from_args(args)
    spec = graphlab.PowerGraphSpec(params, args.k)
    try:
        classes = graphlab.greedy_partition(spec, args.max_vertices, args.order)
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return COMPUTE_ERROR
    sizes = [len(c) for c in classes]
    print(json.dumps({"num_classes": len(classes), "sizes": sizes,
                      "avg_size": params.size() / len(classes)}))
    if args.out:
        from .space import code_to_json
        with open(args.out, "w") as fh:
            json.dump([code_to_json(c) for c in classes], fh, indent=1,
                      sort_keys=True)
    return 0


def cmd_gv(args) -> int:
    params = _params_from_args(args)
    if args.d < 1:
        return _usage("distance must be at least 1")
    print(bounds.gv_lower(params, args.d))
    return 0


def _sweep_from_config(args):
    budgets = {"max_vertices": args.max_vertices, "max_ball": args.max_ball,
               "max_nodes": args.max_nodes}
    rows = []
    if args.config:
        with open(args.config) as fh:
            cfg = json.load(fh)
        budgets.update(cfg.get("budgets", {}))
        instances = []
        for inst in cfg["instances"]:
            params = make_params(inst["q"], inst["n"], inst["m"])
            ds = inst.get("d", cfg.get("d", "all"))
            instances.append((params, ds))
    else:
        instances = [(p, "all") for p in verify.default_sweep()]
        # keep the default sweep's exact-alpha attempts bounded
        budgets["max_nodes"] = min(budgets["max_nodes"], 200_000)
    for params, ds in instances:
        if ds == "all":
            ds = list(range(2, params.max_weight + 2))
        for d in ds:
            rows.append((params, int(d)))
    return rows, budgets


def cmd_report(args) -> int:
    try:
        sweep, budgets = _sweep_from_config(args)
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        return _usage(f"bad sweep config: {exc}")
    reports = []
    for params, d in sweep:
        reports.append(bounds.bound_report(params, d, **budgets))
    if args.format == "json":
        payload = [r.to_json() for r in reports]
        text = json.dumps(payload, indent=1, sort_keys=True)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
        else:
            print(text)
    else:
        out = open(args.out, "w", newline="") if args.out else sys.stdout
        writer = csv.DictWriter(out, fieldnames=bounds.BoundReport.CSV_COLUMNS)
        writer.writeheader()
        for r in reports:
            writer.writerow(r.to_row())
        if args.out:
            out.close()
    return 0


def cmd_verify(args) -> int:
    names = sorted(verify.SUITES) if args.suite == "all" else [args.suite]
    if any(n not in verify.SUITES for n in names):
        return _usage(f"unknown suite {args.suite!r}; "
                      f"choose from {sorted(verify.SUITES)} or 'all'")
    failed = False
    for name in names:
        rep = verify.run_suite(name)
        status = "pass" if rep["ok"] else "FAIL"
        print(f"{name}: {status} ({rep['checked']} checks)")
        if not rep["ok"]:
            print(json.dumps(rep["counterexample"], default=str, indent=1))
            failed = True
    return COMPUTE_ERROR if failed else 0


def _run_ramsey_chain(chain: dict, table: ramsey.RamseyTable, args):
    kind = chain["chain"]
    cfg = ramsey.ChainConfig(**chain.get("config", {})) \
        if chain.get("config") else ramsey.ChainConfig()
    if kind == "hamming":
        k, a, b, N, d = (chain[x] for x in ("k", "a", "b", "N", "d"))
        code_lb = chain.get("code_lb")
        if code_lb is None:
            q = table.exact(k, a, b) - 1
            code_lb = ramsey.hamming_gv_code_lb(q, N, d)
        return ramsey.hamming_to_ramsey_lb(k, a, b, N, d, table, code_lb)
    if kind == "srk":
        params = make_params(chain["q"], chain["n"], chain["m"])
        d, k, a, b = (chain[x] for x in ("d", "k", "a", "b"))
        srk_lb = chain.get("srk_lb")
        if srk_lb is None:
            srk_lb = bounds.gv_lower(params, d)
        return ramsey.srk_to_ramsey_lb(params, d, k, a, b, table, srk_lb, cfg)
    if kind == "zero-rate-upper":
        params = make_params(chain["q"], chain["n"], chain["m"])

        def srk_value(p, dd):
            if dd <= 1:
                return p.size()
            spec = graphlab.PowerGraphSpec(p, dd - 1)
            alpha, _ = graphlab.max_independent_set(
                spec, args.max_vertices, args.max_nodes)
            return alpha

        return ramsey.ramsey_upper_from_srk(params, chain["t"], chain["d"],
                                            cfg, srk_value)
    if kind == "zero-rate-check":
        params = make_params(chain["q"], chain["n"], chain["m"])
        return ramsey.zero_rate_instance_check(
            params, chain["k"], chain["j"], args.max_vertices, args.max_nodes)
    raise ValueError(f"unknown chain kind {kind!r}")


def cmd_ramsey(args) -> int:
    try:
        with open(args.chain_file) as fh:
            chain = json.load(fh)
        table = ramsey.RamseyTable.load(args.table_file)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        return _usage(f"bad input file: {exc}")
    try:
        result = _run_ramsey_chain(chain, table, args)
    except (ramsey.TableError, KeyError, ValueError) as exc:
        return _usage(f"chain does not apply: {exc}")
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return COMPUTE_ERROR
    payload = result.to_json() if isinstance(result, ramsey.DerivedBound) else result
    if isinstance(result, ramsey.DerivedBound):
        assert ramsey.reevaluate(result), "derivation replay mismatch"
    print(json.dumps(payload, sort_keys=True, default=str))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="srklab",
        description="Exact workbench for sum-rank-metric codes, their Cayley "
                    "power graphs, GV-type bounds, and Ramsey chains.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("volume", help="ball volume V(k)")
    _add_params_args(sp)
    sp.set_defaults(func=cmd_volume)

    sp = sub.add_parser("count", help="number of rank-r matrices")
    sp.add_argument("-q", type=int, required=True)
    sp.add_argument("-n", dest="rows", type=int, required=True)
    sp.add_argument("-m", dest="cols", type=int, required=True)
    sp.add_argument("-r", type=int, required=True)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("qtable", help="Gaussian binomial column")
    sp.add_argument("-q", type=int, required=True)
    sp.add_argument("-n", type=int, required=True)
    sp.set_defaults(func=cmd_qtable)

    sp = sub.add_parser("graph-stats", help="exact |V|, D, T, Delta, eps*")
    _add_params_args(sp)
    _add_budget_args(sp)
    sp.set_defaults(func=cmd_graph_stats)

    sp = sub.add_parser("alpha", help="exact independence number + witness")
    _add_params_args(sp)
    _add_budget_args(sp)
    sp.add_argument("-o", "--out", help="write witness code JSON here")
    sp.set_defaults(func=cmd_alpha)

    sp = sub.add_parser("partition", help="greedy partition into codes")
    _add_params_args(sp)
    _add_budget_args(sp)
    sp.add_argument("--order", choices=["lex", "weight-then-lex"], default="lex")
    sp.add_argument("-o", "--out", help="write classes JSON here")
    sp.set_defaults(func=cmd_partition)

    sp = sub.add_parser("gv", help="Gilbert-Varshamov lower bound")
    _add_params_args(sp, with_k=False)
    sp.add_argument("-d", type=int, required=True)
    sp.set_defaults(func=cmd_gv)

    sp = sub.add_parser("report", help="bound comparison table over a sweep")
    _add_budget_args(sp)
    sp.add_argument("--config", help="sweep config JSON (default: built-in sweep)")
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--out", help="output path (default: stdout)")
    sp.set_defaults(func=cmd_report)

    sp = sub.add_parser("verify", help="run a named verification suite")
    sp.add_argument("suite", help="suite name or 'all'")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("ramsey", help="evaluate a Ramsey inequality chain")
    sp.add_argument("chain_file")
    sp.add_argument("table_file")
    _add_budget_args(sp)
    sp.set_defaults(func=cmd_ramsey)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rc = args.func(args)
    except SystemExit:
        raise
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return COMPUTE_ERROR
    except Exception as exc:  # computational failure, not a usage error
        print(f"error: {exc}", file=sys.stderr)
        return COMPUTE_ERROR
    return rc


if __name__ == "__main__":
    sys.exit(main())
