"""Command line front end.

    pretropisms compute INPUT [--stats] [--report FILE] ...
    pretropisms oracle  INPUT [--check] ...
    pretropisms gen     FAMILY N [--seed S] [-o FILE]
    pretropisms bench   FAMILY LO..HI [--trials T] [--seed S] [--json FILE]

INPUT is a ``.poly`` polynomial file, a ``.sup`` support file, or a
generator spec such as ``gen:simplices:n=4:seed=11``.  Standard output
carries only rays (compute, oracle) or the table (bench); everything else
goes to standard error or the report file.
"""

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field

from .engine import cost_bound, find_pretropisms
from .oracle import definitional_pretropisms
from .systems import (
    FAMILIES,
    ParseError,
    dump_support_file,
    format_polynomials,
    generate,
    read_system,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_DIMENSION = 4
EXIT_MISMATCH = 5


@dataclass
class RunReport:
    command: str
    provenance: dict
    options: dict
    rays: list
    level_sizes: list
    stats: dict
    extra: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def to_dict(self, timing=False):
        out = {
            "command": self.command,
            "input": self.provenance,
            "options": self.options,
            "num_rays": len(self.rays),
            "rays": [list(r) for r in self.rays],
            "level_sizes": self.level_sizes,
            "stats": self.stats,
        }
        out.update(self.extra)
        if timing:
            out["wall_time_seconds"] = round(self.wall_time, 6)
        return out

    def to_json(self, timing=False):
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True) + "\n"


def _default_jobs():
    return os.cpu_count() or 1


def _add_run_options(p):
    p.add_argument("input", help="polynomial file, support file, or gen:FAMILY:n=N[:seed=S]")
    p.add_argument("--format", choices=("poly", "sup"), help="input format (default: by extension)")
    p.add_argument("--seed", type=int, default=0, help="interior ray seed (default 0)")
    p.add_argument("--jobs", type=int, default=_default_jobs(), help="worker processes")
    p.add_argument("--no-sort", action="store_true", help="keep the input polytope order")
    p.add_argument("--first-positive", action="store_true", help="only rays with positive first coordinate")
    p.add_argument("--stats", action="store_true", help="print statistics to stderr")
    p.add_argument("--report", metavar="FILE", help="write the JSON run report here")
    p.add_argument("--timing", action="store_true", help="include wall time in the report")


def _parser():
    ap = argparse.ArgumentParser(prog="pretropisms", description="Pretropisms of Newton polytopes.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="pruned edge-skeleton algorithm")
    _add_run_options(p)
    p.add_argument("--restrict-first-positive", action="store_true",
                   help="cut the first level to x0 >= 0 before exploring")

    p = sub.add_parser("oracle", help="definitional refinement tree")
    _add_run_options(p)
    p.add_argument("--check", action="store_true", help="also run the pruned algorithm and compare")
    p.add_argument("--no-memo", action="store_true", help="expand duplicate tree nodes literally")

    p = sub.add_parser("gen", help="write a benchmark system")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", metavar="FILE")
    p.add_argument("--as-poly", action="store_true", help="polynomial text instead of a support file")

    p = sub.add_parser("bench", help="compare both algorithms over a parameter range")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("range", help="LO..HI or a single N")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.add_argument("--no-sort", action="store_true")
    p.add_argument("--max-oracle-n", type=int, default=None,
                   help="skip the definitional algorithm above this n")
    p.add_argument("--json", metavar="FILE", help="also write the table as JSON")
    return ap


def _print_rays(rays, out):
    for r in rays:
        out.write(" ".join(str(x) for x in r) + "\n")


def _print_stats(report, err):
    err.write(f"pretropisms: {len(report.rays)}\n")
    err.write(f"level sizes: {report.level_sizes}\n")
    for k, v in report.stats.items():
        if k != "per_level":
            err.write(f"{k}: {v}\n")
    for k, v in report.extra.items():
        if not isinstance(v, (dict, list)):
            err.write(f"{k}: {v}\n")


def _run_options(args):
    return {
        "seed": args.seed,
        "sort": not args.no_sort,
        "first_positive": args.first_positive,
        "jobs": args.jobs,
    }


def _load(args):
    spec = read_system(args.input, args.format)
    if len(spec.supports) < 2:
        raise ValueError("need at least two polynomials")
    return spec


def cmd_compute(args, out, err):
    spec = _load(args)
    t0 = time.perf_counter()
    res = find_pretropisms(
        spec.polytopes(),
        seed=args.seed,
        sort=not args.no_sort,
        first_positive=args.first_positive,
        jobs=args.jobs,
        restrict_first_positive=args.restrict_first_positive,
    )
    opts = _run_options(args)
    opts["restrict_first_positive"] = args.restrict_first_positive
    report = RunReport(
        "compute", spec.provenance, opts, res.rays, res.level_sizes,
        res.stats.as_dict(), {"order": res.order}, time.perf_counter() - t0,
    )
    _finish(report, args, out, err)
    return EXIT_OK


def cmd_oracle(args, out, err):
    spec = _load(args)
    polys = spec.polytopes()
    t0 = time.perf_counter()
    res = definitional_pretropisms(
        polys, sort=not args.no_sort, first_positive=args.first_positive,
        memoize=not args.no_memo,
    )
    opts = _run_options(args)
    opts["memoize"] = not args.no_memo
    extra = {"order": res.order}
    code = EXIT_OK
    if args.check:
        pruned = find_pretropisms(
            polys, seed=args.seed, sort=not args.no_sort,
            first_positive=args.first_positive, jobs=args.jobs,
        )
        match = pruned.rays == res.rays
        extra["check"] = "MATCH" if match else "MISMATCH"
        extra["pruning_intersections"] = pruned.stats.intersections
        if not match:
            code = EXIT_MISMATCH
            only_d = sorted(set(res.rays) - set(pruned.rays))
            only_p = sorted(set(pruned.rays) - set(res.rays))
            extra["only_definitional"] = [list(r) for r in only_d]
            extra["only_pruning"] = [list(r) for r in only_p]
    report = RunReport(
        "oracle", spec.provenance, opts, res.rays, res.level_sizes,
        res.stats.as_dict(), extra, time.perf_counter() - t0,
    )
    _finish(report, args, out, err)
    if args.check:
        err.write(extra["check"] + "\n")
    return code


def _finish(report, args, out, err):
    _print_rays(report.rays, out)
    if args.stats:
        _print_stats(report, err)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(report.to_json(args.timing))


def cmd_gen(args, out, err):
    spec = generate(args.family, args.n, args.seed)
    text = format_polynomials(spec) if args.as_poly else dump_support_file(spec)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def _parse_range(text):
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def bench_rows(family, ns, trials=1, seed=0, sort=True, jobs=1, max_oracle_n=None):
    """One row per n: mean counts over ``trials`` instances of ``family``."""
    rows = []
    for n in ns:
        seeds = [seed + t for t in range(trials)] if family == "simplices" else [seed]
        defs, prunes, counts, bounds = [], [], [], []
        for s in seeds:
            polys = generate(family, n, s).polytopes()
            pruned = find_pretropisms(polys, sort=sort, jobs=jobs, record_graphs=True)
            prunes.append(pruned.stats.intersections)
            counts.append(len(pruned.rays))
            bounds.append(cost_bound(pruned.graph_sizes))
            if max_oracle_n is None or n <= max_oracle_n:
                defs.append(definitional_pretropisms(polys, sort=sort).stats.intersections)
        npoly = len(polys)
        product = 1
        for P in polys:
            product *= P.num_edges
        row = {
            "n": n,
            "polytopes": npoly,
            "definitional": sum(defs) / len(defs) if defs else None,
            "pruning": sum(prunes) / len(prunes),
            "predicted_ratio": 1 / 2 ** (npoly - 1),
            "actual_ratio": None,
            "pretropisms": sum(counts) / len(counts),
            "cost_bound": sum(bounds) / len(bounds),
            "edge_product": product,
            "trials": len(seeds),
        }
        if defs:
            row["actual_ratio"] = row["pruning"] / row["definitional"]
        rows.append(row)
    return rows


def _fmt(x, ratio=False):
    if x is None:
        return "-"
    if ratio:
        return f"{x:.6g}"
    if float(x).is_integer():
        return f"{int(x):,}"
    return f"{x:,.1f}"


def format_table(rows):
    head = ("n", "definitional", "pruning", "predicted", "actual", "#pretropisms", "edge product")
    body = [
        (
            str(r["n"]),
            _fmt(r["definitional"]),
            _fmt(r["pruning"]),
            _fmt(r["predicted_ratio"], True),
            _fmt(r["actual_ratio"], True),
            _fmt(r["pretropisms"]),
            _fmt(r["edge_product"]),
        )
        for r in rows
    ]
    widths = [max(len(h), *(len(b[i]) for b in body)) for i, h in enumerate(head)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(head, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(b, widths)) for b in body]
    return "\n".join(lines) + "\n"


def cmd_bench(args, out, err):
    rows = bench_rows(
        args.family, _parse_range(args.range), args.trials, args.seed,
        not args.no_sort, args.jobs, args.max_oracle_n,
    )
    out.write(format_table(rows))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"family": args.family, "rows": rows}, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return EXIT_OK


COMMANDS = {"compute": cmd_compute, "oracle": cmd_oracle, "gen": cmd_gen, "bench": cmd_bench}


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out, err)
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DIMENSION


if __name__ == "__main__":
    sys.exit(main())
