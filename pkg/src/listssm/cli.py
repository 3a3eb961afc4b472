"""Command-line entry point.

Exit status: 0 on success or a passing check, 1 when a check fails (or the
instance is outside the domain a check needs), 2 on usage or format errors.
"""
from __future__ import annotations

import argparse
import sys

from .assumption import check_assumption
from .errors import ConfigurationError, GraphFormatError, ListColoringError
from .generators import FAMILIES, GeneratorSpec, ListPolicy, generate
from .mixing import (
    bounds_check,
    contraction_check,
    envelope_violations,
    format_csv,
    single_point_corollary_check,
    ssm_experiment,
    theoretical_envelope,
    tv_scaling_check,
    wsm_experiment,
)
from .oracle import BoundaryCondition, count_colorings, marginal, marginal_vector
from .recursion import ratio_exact, recursive_vector
from .textio import format_graph, read_graph

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _vertex_set(text: str) -> list[int]:
    if text is None or not text.strip():
        return []
    try:
        return sorted({int(t) for t in text.split(",") if t.strip()})
    except ValueError:
        raise UsageError(f"bad vertex list {text!r}; expected e.g. 0,1,2") from None


def _condition(text: str | None) -> BoundaryCondition:
    if text is None or not text.strip():
        return BoundaryCondition()
    out = {}
    for item in text.split(","):
        if not item.strip():
            continue
        try:
            v, c = item.split("=")
            out[int(v)] = int(c)
        except ValueError:
            raise UsageError(f"bad assignment {item!r}; expected vertex=color") from None
    return BoundaryCondition(out)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _verdict(report) -> int:
    print(report.summary())
    return EXIT_OK if report.passed else EXIT_FAIL


# ------------------------------------------------------------- commands


def cmd_check(args):
    rep = check_assumption(read_graph(args.graph), args.alpha, args.beta)
    print(rep.summary())
    return EXIT_OK if rep.satisfied else EXIT_FAIL


def cmd_count(args):
    print(count_colorings(read_graph(args.graph), _condition(args.assign)))
    return EXIT_OK


def cmd_marginal(args):
    pair = read_graph(args.graph)
    cond = _condition(args.assign)
    if args.depth is None:
        vec = {j: float(p) for j, p in marginal_vector(pair, cond, args.vertex).items()}
    else:
        vec = recursive_vector(pair, args.vertex, cond, args.depth, args.base)
    colors = [args.color] if args.color is not None else sorted(vec)
    for j in colors:
        print(f"{j} {vec.get(j, 0.0)!r}")
    return EXIT_OK


def cmd_ratio(args):
    pair = read_graph(args.graph)
    cond = _condition(args.assign)
    value = ratio_exact(pair, args.vertex, args.j1, args.j2, cond)
    den = marginal(pair, cond, args.vertex, args.j2)
    if den == 0:
        print("oracle ratio undefined: denominator marginal is 0")
        return EXIT_FAIL
    oracle = marginal(pair, cond, args.vertex, args.j1) / den
    print(f"ratio={float(value)!r}")
    print(f"oracle={float(oracle)!r}")
    ok = abs(float(value) - float(oracle)) <= 1e-10
    print(f"match={ok}")
    return EXIT_OK if ok else EXIT_FAIL


def _experiment_output(args, pair, run):
    env = None
    if args.alpha is not None and args.beta is not None:
        env = theoretical_envelope(pair, args.alpha, args.beta)
    _emit(format_csv(run.samples, env), args.out)
    if env is not None and envelope_violations(run.samples, env):
        print("envelope violated", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_wsm(args):
    pair = read_graph(args.graph)
    run = wsm_experiment(pair, _vertex_set(args.psi), args.vertex, args.samples, args.seed,
                         free_prob=args.free_prob, instance_id=args.instance_id or args.graph)
    return _experiment_output(args, pair, run)


def cmd_ssm(args):
    pair = read_graph(args.graph)
    run = ssm_experiment(pair, _vertex_set(args.psi), args.vertex, _vertex_set(args.w), args.samples, args.seed,
                         free_prob=args.free_prob, instance_id=args.instance_id or args.graph)
    return _experiment_output(args, pair, run)


def cmd_contract(args):
    pair = read_graph(args.graph)
    return _verdict(contraction_check(pair, args.vertex, _condition(args.c1), _condition(args.c2), args.alpha, args.beta))


def cmd_bounds(args):
    pair = read_graph(args.graph)
    conds = [_condition(a) for a in (args.assign or [""])]
    return _verdict(bounds_check(pair, args.vertex, conds, args.alpha, args.beta))


def cmd_tvscale(args):
    pair = read_graph(args.graph)
    return _verdict(tv_scaling_check(pair, _vertex_set(args.psi), _vertex_set(args.lam), _condition(args.c1), _condition(args.c2)))


def cmd_corollary(args):
    pair = read_graph(args.graph)
    rep = single_point_corollary_check(pair, _vertex_set(args.psi), _vertex_set(args.lam), args.f, args.j1, args.j2, _condition(args.assign))
    return _verdict(rep)


def cmd_envelope(args):
    env = theoretical_envelope(read_graph(args.graph), args.alpha, args.beta)
    for k in ("F", "gamma", "d0", "B", "epsilon"):
        print(f"{k}={getattr(env, k)!r}")
    return EXIT_OK


def cmd_gen(args):
    if args.alpha is not None and args.beta is not None:
        if args.q is None:
            raise UsageError("--q is required with --alpha/--beta")
        policy = ListPolicy.assumption(args.alpha, args.beta, args.q)
    elif args.list_size is not None:
        policy = ListPolicy.uniform(args.list_size, args.q)
    else:
        raise UsageError("give --list-size, or --alpha, --beta and --q")
    params = {k: getattr(args, k) for k in ("n", "rows", "cols", "a", "b", "p", "max_degree") if getattr(args, k) is not None}
    if args.allow_odd:
        params["allow_odd"] = True
    pair = generate(GeneratorSpec(args.family, params, policy, args.seed))
    _emit(format_graph(pair), args.out)
    return EXIT_OK


# --------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="listssm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("graph", help="instance file")
        sp.set_defaults(func=func)
        return sp

    def params(sp, required=True):
        sp.add_argument("--alpha", type=float, required=required)
        sp.add_argument("--beta", type=float, required=required)

    sp = graph_cmd("check", cmd_check, "report the list-size assumption")
    params(sp)

    sp = graph_cmd("count", cmd_count, "exact number of list colorings")
    sp.add_argument("--assign", help="condition, e.g. 0=1,3=2")

    sp = graph_cmd("marginal", cmd_marginal, "marginal law at a vertex (oracle, or recursive with --depth)")
    sp.add_argument("--vertex", type=int, required=True)
    sp.add_argument("--color", type=int)
    sp.add_argument("--depth", type=int)
    sp.add_argument("--base", choices=("uniform", "oracle"), default="uniform")
    sp.add_argument("--assign")

    sp = graph_cmd("ratio", cmd_ratio, "telescoping ratio P(j1)/P(j2) versus the oracle")
    sp.add_argument("--vertex", type=int, required=True)
    sp.add_argument("--j1", type=int, required=True)
    sp.add_argument("--j2", type=int, required=True)
    sp.add_argument("--assign")

    for name, func in (("wsm", cmd_wsm), ("ssm", cmd_ssm)):
        sp = graph_cmd(name, func, f"{name.upper()} decay experiment, CSV output")
        sp.add_argument("--psi", required=True, help="region vertices, e.g. 1,2,3")
        sp.add_argument("--vertex", type=int, required=True)
        if name == "ssm":
            sp.add_argument("--w", required=True, help="disagreement set on the boundary")
        sp.add_argument("--samples", type=int, default=20)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--free-prob", type=float, default=0.2)
        sp.add_argument("--instance-id")
        sp.add_argument("--out")
        params(sp, required=False)

    sp = graph_cmd("contract", cmd_contract, "check the one-step contraction of the error functional")
    sp.add_argument("--vertex", type=int, required=True)
    sp.add_argument("--c1", required=True)
    sp.add_argument("--c2", required=True)
    params(sp)

    sp = graph_cmd("bounds", cmd_bounds, "check the three marginal bounds")
    sp.add_argument("--vertex", type=int, required=True)
    sp.add_argument("--assign", action="append", help="a condition; repeat for several")
    params(sp)

    sp = graph_cmd("tvscale", cmd_tvscale, "check TV over a set against |set| * eps")
    sp.add_argument("--psi", required=True)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--c1", required=True)
    sp.add_argument("--c2", required=True)

    sp = graph_cmd("corollary", cmd_corollary, "check TV <= 2 eps for a single boundary disagreement")
    sp.add_argument("--psi", required=True)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--f", type=int, required=True)
    sp.add_argument("--j1", type=int, required=True)
    sp.add_argument("--j2", type=int, required=True)
    sp.add_argument("--assign", help="shared condition on the other outside vertices")

    sp = graph_cmd("envelope", cmd_envelope, "theoretical decay constants F, gamma, d0, B")
    params(sp)

    sp = sub.add_parser("gen", help="generate an instance file")
    sp.set_defaults(func=cmd_gen)
    sp.add_argument("--family", choices=FAMILIES, required=True)
    for k in ("n", "rows", "cols", "a", "b", "max_degree"):
        sp.add_argument(f"--{k.replace('_', '-')}", dest=k, type=int)
    sp.add_argument("--p", type=float)
    sp.add_argument("--allow-odd", action="store_true")
    sp.add_argument("--list-size", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    params(sp, required=False)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, GraphFormatError, ConfigurationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ListColoringError as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
