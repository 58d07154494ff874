"""``idealflow`` command line.

Exit codes: 0 success / predicate true, 1 domain-level negative (not
premagic, not strongly connected, not conserving), 2 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import formats, graph, markov, random_walk, spectral
from .errors import (
    ConvergenceError,
    DanglingNodeError,
    DomainError,
    GraphError,
    MatrixParseError,
    NotConservingError,
    NotPremagicError,
    ReducibleError,
)
from .ideal_flow import (
    IdealFlowMatrix,
    ideal_flow_from_stochastic,
    rescale_to_total,
    to_whole_numbers,
    verify_node_conservation,
)
from .matrix import (
    FLOAT,
    RATIONAL,
    SquareMatrix,
    antisymmetric_kernel_residual,
    col_sums,
    is_premagic,
    norm_1,
    norm_inf,
    row_sums,
)

DEFAULT_SEED = 0
SEED_ENV = "IDEALFLOW_SEED"


class UsageError(Exception):
    pass


def resolve_seed(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{SEED_ENV}={env!r} is not an integer") from None
    return DEFAULT_SEED


def _budget(text: str) -> int:
    try:
        value = float(text) if any(c in text for c in ".eE") else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid budget {text!r}") from None
    if value != int(value) or int(value) < 1:
        raise argparse.ArgumentTypeError(f"budget must be a positive integer, got {text!r}")
    return int(value)


def _scalar(text: str):
    try:
        return float(text) if any(c in text for c in ".eE") else Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid number {text!r}") from None


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_matrix(path: str, domain: str | None) -> SquareMatrix:
    m = formats.read_matrix(path)
    if domain is None or domain == m.domain:
        return m
    if domain == FLOAT:
        return m.to_float()
    raise UsageError(f"{path} holds float entries; --domain rational cannot be applied")


def _fmt_vec(values) -> str:
    return "(" + ", ".join(formats.format_scalar(v) for v in values) + ")"


# -- subcommands ----------------------------------------------------------------


def cmd_check(args) -> int:
    m = _load_matrix(args.matrix, args.domain)
    if args.tol is not None and m.domain != FLOAT:
        raise UsageError("--tol is only accepted in the float domain")
    ok = is_premagic(m, args.tol)
    tol = args.tol or 0.0
    if m.domain == FLOAT and args.tol is None:
        tol = 1e-9 * float(norm_inf(m))
    balance = verify_node_conservation(m, tol)
    record = {
        "premagic": ok,
        "domain": m.domain,
        "row_sums": [formats.format_scalar(x) for x in row_sums(m)],
        "col_sums": [formats.format_scalar(x) for x in col_sums(m)],
        "kernel_residual": [formats.format_scalar(x) for x in antisymmetric_kernel_residual(m)],
        "conservation": [
            {"node": b.node, "inflow": formats.format_scalar(b.inflow),
             "outflow": formats.format_scalar(b.outflow), "conserved": b.conserved}
            for b in balance
        ],
        "norm_1": formats.format_scalar(norm_1(m)),
        "norm_inf": formats.format_scalar(norm_inf(m)),
    }
    if ok:
        record["throughputs"] = record["row_sums"]
    if args.format == "json":
        _emit(json.dumps(record, indent=2) + "\n", args.output)
    else:
        lines = [
            f"premagic: {str(ok).lower()}",
            f"row sums: {_fmt_vec(row_sums(m))}",
            f"column sums: {_fmt_vec(col_sums(m))}",
            f"kernel residual (M - M^T)j: {_fmt_vec(antisymmetric_kernel_residual(m))}",
        ]
        if ok:
            lines.append(f"throughputs: {_fmt_vec(row_sums(m))}")
        for b in balance:
            lines.append(
                f"node {b.node}: in {formats.format_scalar(b.inflow)} out {formats.format_scalar(b.outflow)}"
                f" {'conserved' if b.conserved else 'NOT conserved'}"
            )
        lines.append(f"norm_1: {record['norm_1']}  norm_inf: {record['norm_inf']}")
        _emit("\n".join(lines) + "\n", args.output)
    return 0 if ok else 1


def cmd_ideal_flow(args) -> int:
    g = formats.load_network(args.network)
    rep = graph.strong_connectivity(g)
    if not rep.strongly_connected:
        comps = [[g.label(i) for i in c] for c in rep.components()]
        raise ReducibleError(comps)
    if args.stochastic:
        s = formats.read_matrix(args.stochastic)
        if s.domain != RATIONAL:
            raise UsageError("--stochastic must hold rational entries")
        s = markov.StochasticMatrix.of(s)
        if s.order != g.node_count:
            raise UsageError(f"--stochastic has order {s.order}, network has {g.node_count} nodes")
    else:
        if g.domain != RATIONAL:
            raise UsageError("ideal-flow needs rational (integer or p/q) edge weights")
        s = graph.uniform_walk_matrix(g)
    f: IdealFlowMatrix = ideal_flow_from_stochastic(s)
    if args.kappa is not None:
        f = rescale_to_total(f, args.kappa)
    m = f.matrix
    if args.integer:
        m, mult = to_whole_numbers(m)
        print(f"multiplier: {mult}", file=sys.stderr)
    print(f"kappa: {formats.format_scalar(sum(m.entries(), Fraction(0)))}", file=sys.stderr)
    _emit(formats.format_matrix(m), args.output)
    return 0


def cmd_simulate(args) -> int:
    seed = resolve_seed(args.seed)
    g = formats.load_network(args.network)
    rep = graph.strong_connectivity(g)
    if not rep.strongly_connected:
        raise ReducibleError([[g.label(i) for i in c] for c in rep.components()])
    if g.domain != RATIONAL:
        raise UsageError("simulate needs rational edge weights to build the reference flow")
    s = graph.uniform_walk_matrix(g)
    reference = ideal_flow_from_stochastic(s)
    budgets = sorted(set(args.nt))
    rows = random_walk.convergence_report(g, s.to_float(), budgets, reference, seed=seed, agents=args.agents)
    _emit(random_walk.report_to_csv(rows), args.output)
    return 0


def cmd_convert(args) -> int:
    m = _load_matrix(args.matrix, args.domain)
    if args.to == "row-stochastic":
        s, n = markov.to_row_stochastic(m)
        if args.throughputs:
            with open(args.throughputs, "w") as fh:
                fh.write(formats.format_vector(n))
        else:
            print(f"throughputs: {formats.format_vector(n).strip()}", file=sys.stderr)
        _emit(formats.format_matrix(s), args.output)
    elif args.to == "total-normalized":
        s, kappa = markov.normalize_total(m)
        print(f"kappa: {formats.format_scalar(kappa)}", file=sys.stderr)
        _emit(formats.format_matrix(s), args.output)
    else:
        if bool(args.throughputs) == (args.kappa is not None):
            raise UsageError("--to premagic needs exactly one of --throughputs FILE or --kappa K")
        if args.throughputs:
            with open(args.throughputs) as fh:
                n = formats.parse_vector(fh.read())
            out = markov.premagic_from_stochastic(m, n)
        else:
            out = markov.from_total_normalized(m, args.kappa)
        _emit(formats.format_matrix(out), args.output)
    return 0


def cmd_conjectures(args) -> int:
    seed = resolve_seed(args.seed)
    checker = spectral.CHECKERS[args.id]
    report = checker(order=args.order, cases=args.cases, seed=seed)
    _emit(report.to_json(indent=2) + "\n", args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="idealflow", description="Premagic matrices and ideal flow on directed networks.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="premagic verdict, sums, conservation and norms of a matrix")
    c.add_argument("matrix")
    c.add_argument("--domain", choices=[RATIONAL, FLOAT])
    c.add_argument("--tol", type=float, help="absolute tolerance (float domain only)")
    c.add_argument("--format", choices=["text", "json"], default="text")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_check)

    f = sub.add_parser("ideal-flow", help="ideal flow matrix of a strongly connected network")
    f.add_argument("network", help="edge-list JSON")
    f.add_argument("--stochastic", help="rational transition matrix CSV to use instead of the uniform walk")
    f.add_argument("--integer", action="store_true", help="multiply by the LCM of denominators")
    f.add_argument("--kappa", type=_scalar, help="rescale so all entries sum to K")
    f.add_argument("-o", "--output")
    f.set_defaults(func=cmd_ideal_flow)

    s = sub.add_parser("simulate", help="random-walk convergence report (CSV)")
    s.add_argument("network", help="edge-list JSON")
    s.add_argument("--nt", type=_budget, nargs="+", default=[10**3, 10**4, 10**5, 10**6],
                   help="N*T budgets")
    s.add_argument("--agents", type=int, default=random_walk.DEFAULT_AGENTS)
    s.add_argument("--seed", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_simulate)

    v = sub.add_parser("convert", help="premagic <-> stochastic conversions")
    v.add_argument("matrix")
    v.add_argument("--to", required=True, choices=["row-stochastic", "total-normalized", "premagic"])
    v.add_argument("--throughputs", help="throughput vector CSV (written for row-stochastic, read for premagic)")
    v.add_argument("--kappa", type=_scalar, help="total flow for total-normalized -> premagic")
    v.add_argument("--domain", choices=[RATIONAL, FLOAT])
    v.add_argument("-o", "--output")
    v.set_defaults(func=cmd_convert)

    j = sub.add_parser("conjectures", help="numerical sweep over random premagic matrices (JSON)")
    j.add_argument("--id", type=int, choices=[1, 2, 3], required=True)
    j.add_argument("--cases", type=int, default=100)
    j.add_argument("--order", type=int, default=5)
    j.add_argument("--seed", type=int)
    j.add_argument("-o", "--output")
    j.set_defaults(func=cmd_conjectures)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "conjectures" and (args.cases < 1 or args.order < 1):
        parser.error("--cases and --order must be >= 1")
    if args.command == "simulate" and args.agents < 1:
        parser.error("--agents must be >= 1")
    try:
        return args.func(args)
    except (MatrixParseError, GraphError, UsageError, OSError) as exc:
        print(f"idealflow: error: {exc}", file=sys.stderr)
        return 2
    except NotConservingError as exc:
        print(f"idealflow: not conserving: node {exc.node} deviates by {formats.format_scalar(exc.deviation)}",
              file=sys.stderr)
        return 1
    except ReducibleError as exc:
        print(f"idealflow: network is not strongly connected; components: {exc.components}", file=sys.stderr)
        return 1
    except (NotPremagicError, DanglingNodeError, DomainError, ConvergenceError, ValueError) as exc:
        print(f"idealflow: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
