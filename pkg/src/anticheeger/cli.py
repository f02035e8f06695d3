"""Command-line front end.

Exit codes: 0 on success, 1 for usage errors, 2 for runtime errors such as
an unreadable graph file or an instance above the oracle size cap.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time

import numpy as np

from .graph import Graph, GraphError, cut_value, discrete_objectives, exact_objectives
from .oracle import exhaustive_best
from .report import ResultDocument, write_result
from .rudy import read_rudy
from .solver import SolverConfig, SolverFault, run_population, run_restarts

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="anticheeger", description="Anti-Cheeger cut and maxcut solvers for rudy graphs.")
    ap.add_argument("--graph", required=True, help="graph file in rudy format")
    ap.add_argument("--algo", choices=["cia0", "cia1", "cia2", "oracle"], default="cia2")
    ap.add_argument("--p", choices=["1", "2", "inf"], default="1", help="norm of the inner constraint")
    ap.add_argument("--t-tot", type=_positive, default=100, help="step budget per run")
    ap.add_argument("--t-eq", type=_positive, default=3, help="stalled steps before a mode switch (cia2)")
    ap.add_argument("--pop", type=_positive, default=None, help="population size; enables population mode for cia2")
    ap.add_argument("--restarts", type=_positive, default=1, help="independent runs from the spectral start")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=_positive, default=None, help="worker threads (default: ANTICHEEGER_THREADS or 1)")
    ap.add_argument("--out", default=None, help="output path (default: stdout)")
    ap.add_argument("--format", choices=["json", "csv"], default="json")
    ap.add_argument("--trace", choices=["none", "summary", "full"], default="summary")
    ap.add_argument("--timing", action="store_true", help="include wall_time (makes output non-reproducible)")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def _canonical(mask: np.ndarray) -> np.ndarray:
    """The side of the cut that contains vertex 0."""
    return mask if mask[0] else ~mask


def _trace(rec, level: str):
    if level == "none" or rec is None:
        return None
    if level == "full":
        return [[k, mode, r] for k, mode, r in rec.trace]
    rs = [r for _, _, r in rec.trace]
    return {
        "steps": rec.steps,
        "switches": rec.switches,
        "r_first": rs[0],
        "r_last": rs[-1],
        "r_best": max(rs),
        "converged_local": rec.converged_local,
    }


def _config_echo(args, cfg: SolverConfig) -> dict:
    return {
        "p": cfg.p,
        "T_tot": cfg.T_tot,
        "T_eq": cfg.T_eq,
        "L_pop": args.pop,
        "seed": cfg.seed,
        "restarts": cfg.restarts,
    }


def _document(g: Graph, args, cfg: SolverConfig, mask: np.ndarray, best_max: float, **kw) -> ResultDocument:
    mask = _canonical(np.asarray(mask, dtype=bool))
    anti, _ = discrete_objectives(g, mask)
    exact = str(exact_objectives(g, mask)[0]) if g.integral else None
    return ResultDocument(
        graph_name=g.name, algorithm=args.algo, config=_config_echo(args, cfg),
        n=g.n, m=g.m, vol=g.vol, best_anti=anti, best_anti_exact=exact, best_max=best_max,
        cut_size=cut_value(g, mask), partition=np.flatnonzero(mask).tolist(), **kw,
    )


def execute(args) -> ResultDocument:
    g = read_rudy(args.graph)
    p = "inf" if args.p == "inf" else int(args.p)
    cfg = SolverConfig(
        p=p, T_tot=args.t_tot, T_eq=args.t_eq, L_pop=args.pop or 1, seed=args.seed,
        restarts=args.restarts, threads=args.threads,
    )
    if args.algo == "oracle":
        anti = exhaustive_best(g, "anti")
        mx = exhaustive_best(g, "max")
        return _document(g, args, cfg, anti.best_set, mx.best_value, extra={"evaluated": anti.evaluated})
    if args.algo == "cia2" and args.pop is not None:
        res = run_population(g, cfg)
        return _document(
            g, args, cfg, res.best.final_cut, res.best_max, rounds=res.rounds, steps=res.total_steps,
            trace=_trace(res.best, args.trace), extra={"value_history": res.value_history},
        )
    best, records = run_restarts(g, args.algo, cfg)
    return _document(
        g, args, cfg, best.final_cut, max(rec.final_max for rec in records),
        steps=sum(rec.steps for rec in records), trace=_trace(best, args.trace),
    )


def run_cli(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    t0 = time.perf_counter()
    try:
        doc = execute(args)
        if args.timing:
            doc.wall_time = time.perf_counter() - t0
        payload = write_result(doc, args.format)
        if args.out is None:
            sys.stdout.buffer.write(payload)
            sys.stdout.flush()
        else:
            with open(args.out, "wb") as fh:
                fh.write(payload)
    except (OSError, GraphError, SolverFault, ValueError) as exc:
        print(f"anticheeger: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
