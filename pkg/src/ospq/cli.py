"""Command-line interface: ``ospq tables | invariant | verify``.

Exit codes: 0 success, 1 a verification check failed, 2 usage or graph
parse error, 3 graph contains a cycle, 4 tables failed validation,
5 refused by a size guard.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from typing import Optional

from .invariant import DEFAULT_MAX_COLORINGS, invariant_report
from .moddata import (
    DEFAULT_MAX_CELLS,
    ModularTables,
    SizeLimitExceeded,
    ValidationFailure,
    build_tables,
    level_from_k,
    tables_from_json,
    tables_to_json,
)
from .surgery import CycleError, GraphError, load_graph
from .verification import SUITES, run_suite
from .weyl import check_level

log = logging.getLogger("ospq")

EXIT_FAIL, EXIT_PARSE, EXIT_CYCLE, EXIT_TABLES, EXIT_SIZE = 1, 2, 3, 4, 5
CACHE_ENV = "OSPQ_TABLES_CACHE"


@dataclass(frozen=True)
class Config:
    n: int
    k: int
    out: Optional[str] = None
    format: str = "text"
    verbosity: int = 0
    workers: int = 1
    max_cells: int = DEFAULT_MAX_CELLS
    max_colorings: int = DEFAULT_MAX_COLORINGS

    @property
    def N(self) -> int:
        return level_from_k(self.k)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _cache_path(cfg: Config) -> Optional[str]:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    return os.path.join(root, f"tables_n{cfg.n}_k{cfg.k}.json")


def obtain_tables(cfg: Config, tables_path: Optional[str] = None) -> ModularTables:
    path = tables_path or _cache_path(cfg)
    if path and os.path.exists(path):
        log.info("loading tables from %s", path)
        with open(path) as fh:
            t = tables_from_json(json.load(fh))
        if (t.n, t.k) != (cfg.n, cfg.k):
            raise ValueError(f"{path} holds n={t.n}, k={t.k}; expected n={cfg.n}, k={cfg.k}")
        return t
    t = build_tables(cfg.n, cfg.k, workers=cfg.workers, max_cells=cfg.max_cells)
    cache = _cache_path(cfg)
    if cache and not tables_path:
        os.makedirs(os.path.dirname(cache), exist_ok=True)
        with open(cache, "w") as fh:
            fh.write(_dump(tables_to_json(t)))
    return t


def _warn_degenerate(t: ModularTables) -> None:
    if len(t.index_set) == 1:
        log.warning("n=%d, k=%d: the index set is {0}; the resulting invariant is trivial", t.n, t.k)


def _fmt(c) -> str:
    w = c.embed()
    return f"{c}  ~ {w.real:.12g}{w.imag:+.12g}i"


def cmd_tables(cfg: Config) -> int:
    try:
        t = obtain_tables(cfg)
    except ValidationFailure as exc:
        print(f"error: tables failed validation: {exc.identity}", file=sys.stderr)
        return EXIT_TABLES
    except SizeLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    _warn_degenerate(t)
    out = cfg.out or f"ospq_tables_n{cfg.n}_k{cfg.k}.json"
    with open(out, "w") as fh:
        fh.write(_dump(tables_to_json(t)))
    if cfg.format == "json":
        print(_dump({"config": {"n": t.n, "k": t.k, "N": t.N}, "file": out,
                     "index_size": len(t.index_set), "z": t.z.to_json(), "zeta": t.zeta.to_json()}))
    else:
        print(f"n={t.n} k={t.k} N={t.N}  |index set|={len(t.index_set)}  "
              f"|boundary|={len(t.boundary_set)}  -> {out}")
        print(f"z    = {_fmt(t.z)}")
        print(f"zeta = {_fmt(t.zeta)}")
    return 0


def cmd_invariant(cfg: Config, graph_path: str, tables_path: Optional[str] = None,
                  timing: bool = False) -> int:
    try:
        g = load_graph(graph_path)
    except CycleError as exc:
        print(f"error: {graph_path}: {exc}", file=sys.stderr)
        return EXIT_CYCLE
    except (GraphError, OSError) as exc:
        print(f"error: {graph_path}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        t = obtain_tables(cfg, tables_path)
    except (ValidationFailure, ValueError, KeyError) as exc:
        print(f"error: tables unusable: {exc}", file=sys.stderr)
        return EXIT_TABLES
    except SizeLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    _warn_degenerate(t)
    try:
        rep = invariant_report(g, t, workers=cfg.workers, max_colorings=cfg.max_colorings,
                               per_coloring_timing=timing)
    except SizeLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    data = rep.to_json()
    if not timing:
        data.pop("seconds")
        data.pop("per_coloring_seconds")
    data["config"] = {"n": t.n, "k": t.k, "N": t.N}
    text = _dump(data)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    if cfg.format == "json":
        print(text)
    else:
        print(f"F = {_fmt(rep.value)}")
        print(f"sigma = {rep.sigma}  colorings = {rep.colorings}")
        if timing and rep.timing.get('max') is not None:
            print(f"per-coloring seconds: mean {rep.timing['mean']:.3g} max {rep.timing['max']:.3g}")
    return 0


def cmd_verify(cfg: Config, suite: str, seed: int = 0, forests: int = 25) -> int:
    try:
        t = obtain_tables(cfg)
    except ValidationFailure as exc:
        print(f"error: tables failed validation: {exc.identity}", file=sys.stderr)
        return EXIT_TABLES
    except SizeLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    results = run_suite(suite, t, seed=seed, forests=forests)
    failed = [r for _, r in results if not r.passed]
    if cfg.format == "json":
        payload = {
            "config": {"n": t.n, "k": t.k, "N": t.N},
            "results": [{"suite": s, **r.to_json()} for s, r in results],
            "passed": not failed,
        }
        text = _dump(payload)
        print(text)
    else:
        for s, r in results:
            print(f"{'PASS' if r.passed else 'FAIL'}  {s:12s} {r.name}")
            if not r.passed:
                print(f"      witness: {json.dumps(r.to_json()['witness'], sort_keys=True)}")
        print(f"{len(results) - len(failed)}/{len(results)} checks passed")
        text = None
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text if text is not None else _dump([{"suite": s, **r.to_json()} for s, r in results]))
    return EXIT_FAIL if failed else 0


def _level_type(value: str) -> int:
    N = int(value)
    try:
        check_level(N)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return N


def _positive(value: str) -> int:
    v = int(value)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=_positive, required=True, help="rank n of osp(1|2n)")
    lvl = common.add_mutually_exclusive_group(required=True)
    lvl.add_argument("--k", type=_positive, help="level parameter; N = 2(2k+1)")
    lvl.add_argument("--N", type=_level_type, help="root-of-unity order, must equal 2(2k+1) with k >= 1")
    common.add_argument("--out", help="output file")
    common.add_argument("--format", choices=["json", "text"], default="text")
    common.add_argument("--workers", type=_positive, default=1, help="worker processes (default 1)")
    common.add_argument("--max-cells", type=_positive, default=DEFAULT_MAX_CELLS,
                        help="budget for |W| * |closed alcove|^2 table cells")
    common.add_argument("--max-colorings", type=_positive, default=DEFAULT_MAX_COLORINGS,
                        help="budget for the number of colourings in an invariant")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="ospq", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("tables", parents=[common], help="build and write the modular tables")
    inv = sub.add_parser("invariant", parents=[common], help="evaluate the 3-manifold invariant")
    inv.add_argument("graph", help=".plumb or .json plumbing graph")
    inv.add_argument("--tables", dest="tables_path", help="precomputed tables JSON")
    inv.add_argument("--timing", action="store_true", help="include timing fields in the report")
    ver = sub.add_parser("verify", parents=[common], help="run exact identity suites")
    ver.add_argument("--suite", choices=["all", *SUITES], default="all")
    ver.add_argument("--seed", type=int, default=0, help="seed for randomised forests")
    ver.add_argument("--forests", type=_positive, default=25, help="number of random forests")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s: %(message)s")
    k = args.k if args.k is not None else check_level(args.N)
    cfg = Config(n=args.n, k=k, out=args.out, format=args.format, verbosity=args.verbose,
                 workers=args.workers, max_cells=args.max_cells, max_colorings=args.max_colorings)
    if args.command == "tables":
        return cmd_tables(cfg)
    if args.command == "invariant":
        return cmd_invariant(cfg, args.graph, args.tables_path, args.timing)
    return cmd_verify(cfg, args.suite, args.seed, args.forests)


if __name__ == "__main__":
    sys.exit(main())
