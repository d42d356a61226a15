"""Command-line front end.

Exit status: 0 success, 2 usage error, 3 data error, 4 numeric/convergence error.
"""

from __future__ import annotations

import argparse
import itertools
import logging
import sys
import time
from contextlib import nullcontext
from typing import Optional, Sequence

from .errors import ConvergenceError, GraphFormatError
from .features import ged_feature_vector
from .graph import (
    GeneratorSpec,
    Graph,
    largest_connected_component,
    load_edge_list,
    normalize_symmetric,
    write_edge_list,
)
from .maximize import maximize_lazy, maximize_stochastic
from .records import FORMATS, RunRecord, write_records
from .walks import COMBINATORIAL, SPECTRAL, TailBoundConfig, estimate_sigma_max, ged_score

log = logging.getLogger("gedwalk")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 2, 3, 4
_BOUNDS = {"comb": COMBINATORIAL, "spec": SPECTRAL}


class UsageError(Exception):
    pass


def _csv_list(kind):
    def parse(text):
        try:
            return [kind(t) for t in text.split(",") if t.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad list {text!r}") from None
    return parse


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="PATH", help="edge-list file")
    src.add_argument("--generate", metavar="MODEL,n,param,seed",
                     help="er,n,p,seed or ba,n,attach_degree,seed")
    common.add_argument("--directed", action="store_true")
    common.add_argument("--one-indexed", action="store_true")
    common.add_argument("--lcc", action=argparse.BooleanOptionalAction, default=True,
                        help="restrict to the largest connected component (default: on)")
    common.add_argument("--normalize", action="store_true",
                        help="symmetric degree normalization of edge weights")
    common.add_argument("--bound", choices=sorted(_BOUNDS), default="comb")
    decay = common.add_mutually_exclusive_group()
    decay.add_argument("--alpha", type=float)
    decay.add_argument("--delta", type=float,
                       help="alpha = delta / (deg_max or sigma_max); default 0.5")
    common.add_argument("--epsilon", type=float, default=0.5)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--format", choices=FORMATS, default="json-lines")
    common.add_argument("--out", metavar="PATH", help="default: standard output")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="gedwalk", description="GED-Walk group centrality")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("score", parents=[common], help="score a given group")
    s.add_argument("--group", required=True, type=_csv_list(int), help="comma-separated vertex ids")

    for name in ("maximize", "bench"):
        m = sub.add_parser(name, parents=[common],
                           help="greedy group maximization" if name == "maximize"
                           else "maximize over a parameter grid")
        m.add_argument("--eta", type=float, default=0.1)
        m.add_argument("--seed", type=int, default=0)
        if name == "maximize":
            m.add_argument("--k", type=int, default=10)
            m.add_argument("--strategy", choices=("lazy", "stochastic"), default="lazy")
        else:
            m.add_argument("--k-values", type=_csv_list(int), default=[5, 10])
            m.add_argument("--strategies", type=_csv_list(str), default=["lazy"])
            m.add_argument("--epsilons", type=_csv_list(float), default=None)
            m.add_argument("--repeat", type=int, default=1)

    f = sub.add_parser("features", parents=[common], help="GED feature vector")
    f.add_argument("--k", type=int, default=10)
    f.add_argument("--bins", type=int, default=20)

    gen = sub.add_parser("generate", parents=[common], help="build/preprocess a graph")
    gen.add_argument("--write-edges", metavar="PATH", help="write the edge list here")
    return p


def _load(args) -> tuple[Graph, str]:
    if args.input:
        g = load_edge_list(args.input, directed=args.directed, one_indexed=args.one_indexed)
        desc = args.input
    else:
        try:
            spec = GeneratorSpec.parse(args.generate)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        g = spec.build()
        desc = spec.describe()
    if args.lcc:
        g = largest_connected_component(g)
    if args.normalize:
        g = normalize_symmetric(g)
    return g, desc


def _decay(args, g: Graph):
    kind = _BOUNDS[args.bound]
    sigma = estimate_sigma_max(g) if kind == SPECTRAL else None
    if args.alpha is not None:
        alpha, delta = args.alpha, None
    else:
        delta = 0.5 if args.delta is None else args.delta
        if not 0.0 < delta < 1.0:
            raise UsageError("--delta must lie in (0, 1)")
        denom = sigma if kind == SPECTRAL else g.deg_max
        if not denom:
            raise ConvergenceError("graph has no arcs; cannot derive alpha from delta")
        alpha = delta / denom
    cfg = TailBoundConfig.for_graph(g, alpha, kind, sigma_hat=sigma)
    cfg.check()
    return alpha, delta, cfg


def _internal_ids(g: Graph, labels: Sequence[int]) -> list:
    if g.labels is None:
        lookup = {v: v for v in range(g.n)}
    else:
        lookup = {int(l): i for i, l in enumerate(g.labels.tolist())}
    try:
        return [lookup[v] for v in labels]
    except KeyError as exc:
        raise UsageError(f"vertex {exc.args[0]} not in graph") from None


def _labels(g: Graph, ids) -> list:
    return [g.label_of(v) for v in ids]


def _params(args, alpha, delta, cfg, **extra) -> dict:
    p = {
        "alpha": alpha, "delta": delta, "epsilon": args.epsilon, "bound": cfg.kind,
        "threads": args.threads, "lcc": args.lcc, "normalize": args.normalize,
        "directed": args.directed, "one_indexed": args.one_indexed,
    }
    if cfg.sigma_hat is not None:
        p["sigma_hat"] = cfg.sigma_hat
    p.update(extra)
    return p


def _group_outputs(g: Graph, res) -> dict:
    return {
        "group": _labels(g, res.members),
        "gains": res.gains,
        "ell": res.ell,
        "score": res.score,
        "interval": list(res.interval),
        "evaluations": res.evaluations,
        "doublings": res.doublings,
        "pops": res.pops,
        "degenerate_picks": res.degenerate_picks,
    }


def _maximize(g, alpha, eps, cfg, k, strategy, eta, seed, threads):
    if strategy == "lazy":
        return maximize_lazy(g, k, alpha, eps, cfg, threads)
    if strategy == "stochastic":
        return maximize_stochastic(g, k, alpha, eps, eta, seed, cfg, threads)
    raise UsageError(f"unknown strategy {strategy!r}")


def _run(args):
    t_load = time.perf_counter()
    g, desc = _load(args)
    log.info("graph %s: %r", desc, g)
    if args.command == "generate":
        if args.write_edges:
            write_edge_list(g, args.write_edges)
        yield RunRecord("generate", desc, {"lcc": args.lcc, "normalize": args.normalize,
                                           "directed": args.directed},
                        {"n": g.n, "m": g.m, "deg_max": g.deg_max},
                        (time.perf_counter() - t_load) * 1e3)
        return

    alpha, delta, cfg = _decay(args, g)
    eps = args.epsilon
    if not eps > 0:
        raise UsageError("--epsilon must be positive")
    threads = args.threads
    if threads < 1:
        raise UsageError("--threads must be >= 1")

    if args.command == "score":
        ids = _internal_ids(g, args.group)
        t0 = time.perf_counter()
        res = ged_score(g, ids, alpha, eps, cfg, threads)
        ms = (time.perf_counter() - t0) * 1e3
        yield RunRecord("score", desc, _params(args, alpha, delta, cfg, group=list(args.group)),
                        {"score": res.partial, "tail_bound": res.tail_bound, "ell": res.ell,
                         "interval": list(res.interval), "contributions": res.contributions}, ms)
    elif args.command == "maximize":
        if not 1 <= args.k <= g.n:
            raise UsageError(f"--k must lie in [1, {g.n}]")
        t0 = time.perf_counter()
        res = _maximize(g, alpha, eps, cfg, args.k, args.strategy, args.eta, args.seed, threads)
        ms = (time.perf_counter() - t0) * 1e3
        params = _params(args, alpha, delta, cfg, k=args.k, strategy=args.strategy,
                         eta=args.eta, seed=args.seed)
        yield RunRecord("maximize", desc, params, _group_outputs(g, res), ms)
    elif args.command == "features":
        if not 1 <= args.k < g.n:
            raise UsageError(f"--k must lie in [1, {g.n - 1}]")
        t0 = time.perf_counter()
        fv = ged_feature_vector(g, args.k, args.bins, alpha, eps, cfg, threads)
        ms = (time.perf_counter() - t0) * 1e3
        yield RunRecord("features", desc, _params(args, alpha, delta, cfg, k=args.k, bins=args.bins),
                        {"values": fv.values.tolist(), "group": _labels(g, fv.group.members),
                         "ell": fv.group.ell}, ms)
    elif args.command == "bench":
        epsilons = args.epsilons or [eps]
        for k, strategy, e, rep in itertools.product(
            args.k_values, args.strategies, epsilons, range(args.repeat)
        ):
            if not 1 <= k <= g.n:
                raise UsageError(f"k={k} outside [1, {g.n}]")
            t0 = time.perf_counter()
            res = _maximize(g, alpha, e, cfg, k, strategy, args.eta, args.seed + rep, threads)
            ms = (time.perf_counter() - t0) * 1e3
            params = _params(args, alpha, delta, cfg, k=k, strategy=strategy, eta=args.eta,
                             seed=args.seed + rep, repeat=rep)
            params["epsilon"] = e
            yield RunRecord("bench", desc, params, _group_outputs(g, res), ms)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        cm = open(args.out, "w") if args.out else nullcontext(sys.stdout)
    except OSError as exc:
        print(f"gedwalk: cannot open output: {exc}", file=sys.stderr)
        return EXIT_DATA
    try:
        with cm as fh:
            if args.format == "csv":
                write_records(list(_run(args)), fh, "csv")
            else:
                write_records(_run(args), fh)
    except UsageError as exc:
        print(f"gedwalk: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphFormatError, OSError) as exc:
        print(f"gedwalk: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ConvergenceError as exc:
        print(f"gedwalk: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"gedwalk: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
