"""Command-line front end.

Exit codes: 0 accept / success, 1 reject, 2 usage or parse error,
3 minimum in-degree precondition not met, 4 witness failed re-verification.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from . import __version__
from .estimation import interval_estimate
from .exact import SizeGuardError, exact_is_r_robust, exact_max_robustness
from .generators import PlantedSpec, generate_planted, write_ground_truth
from .graph import GraphParseError, exam_degree, is_r_reachable, min_in_degree, read_graph, save_graph
from .partition import TriPartition
from .tester import AssumptionError, TestConfig, TestOutcome, amplified_test, sampled_rbst_tst, test_arbitrary

SCHEMA = "rrobust-report/1"
FIG3_COLUMNS = ["setting", "rbar", "threshold", "detected_R", "seconds"]

EXIT_ACCEPT, EXIT_REJECT, EXIT_USAGE, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 1, 2, 3, 4


class VerificationError(RuntimeError):
    pass


@dataclass
class RunReport:
    """Ordered key/value report; ``dumps`` is the canonical serialization."""

    command: str
    items: list = field(default_factory=list)

    def add(self, key: str, value) -> None:
        if isinstance(value, (list, tuple)):
            value = " ".join(map(str, value))
        elif isinstance(value, bool):
            value = str(value).lower()
        elif value is None:
            value = "-"
        self.items.append((key, str(value)))

    def dumps(self) -> str:
        lines = [f"schema: {SCHEMA}", f"command: {self.command}"]
        lines += [f"{k}: {v}" for k, v in self.items]
        return "\n".join(lines) + "\n"

    def get(self, key: str) -> Optional[str]:
        for k, v in self.items:
            if k == key:
                return v
        return None


def parse_report(text: str) -> dict:
    out = {}
    for line in text.splitlines():
        key, sep, value = line.partition(": ")
        if sep:
            out[key] = value
    return out


def verify_witness(g, part: TriPartition, level: int) -> None:
    """Fail closed unless neither witness side is ``level``-reachable."""
    part.validate(g.n)
    if is_r_reachable(g, part.a, level) or is_r_reachable(g, part.b, level):
        raise VerificationError(f"witness does not refute {level}-robustness")


def _add_witness(rep: RunReport, part: Optional[TriPartition]) -> None:
    a, b, c = part.sorted_blocks() if part else (None, None, None)
    rep.add("witness_a", a)
    rep.add("witness_b", b)
    rep.add("witness_c", c)


def _read(path):
    return read_graph(path)


# ---------------------------------------------------------------- commands

def cmd_degree(args) -> tuple[RunReport, int]:
    g = _read(args.graph)
    rep = RunReport("degree")
    rep.add("graph", args.graph)
    rep.add("n", g.n)
    rep.add("m", g.m)
    rep.add("r", args.r)
    rep.add("delta_cap", args.delta)
    v, d_min = min_in_degree(g)
    rep.add("d_min", d_min)
    rep.add("bound", 2 * args.r + args.delta)
    found = exam_degree(g, args.r, args.delta)
    rep.add("assumption", "holds" if found is None else "fails")
    rep.add("witness_vertex", found)
    return rep, EXIT_ACCEPT if found is None else EXIT_REJECT


def cmd_exact(args) -> tuple[RunReport, int]:
    g = _read(args.graph)
    rep = RunReport("exact")
    rep.add("graph", args.graph)
    rep.add("n", g.n)
    rep.add("m", g.m)
    max_n = 10 ** 9 if args.force else args.max_n
    if args.max:
        rep.add("max_robustness", exact_max_robustness(g, max_n=max_n))
        return rep, EXIT_ACCEPT
    ok, wit = exact_is_r_robust(g, args.r, max_n=max_n)
    rep.add("r", args.r)
    rep.add("verdict", "robust" if ok else "not_robust")
    _add_witness(rep, wit)
    if wit is not None:
        verify_witness(g, wit, args.r)
    return rep, EXIT_ACCEPT if ok else EXIT_REJECT


def _test_config(args, n) -> TestConfig:
    cfg = TestConfig(r=args.r, delta_cap=args.delta, mode=args.mode,
                     trials=args.trials, seed=args.seed,
                     partitions_per_trial=args.partitions, workers=args.workers)
    if args.t == "guaranteed":
        return cfg.with_guaranteed_t(n)
    return replace(cfg, t=int(args.t))


def run_test(g, cfg: TestConfig, sigma=None, arbitrary=False) -> TestOutcome:
    if arbitrary:
        return test_arbitrary(g, cfg, sigma)
    if sigma is None:
        return sampled_rbst_tst(g, cfg)
    return amplified_test(g, cfg, sigma)


def cmd_test(args) -> tuple[RunReport, int]:
    g = _read(args.graph)
    cfg = _test_config(args, g.n)
    rep = RunReport("test")
    rep.add("graph", args.graph)
    rep.add("n", g.n)
    rep.add("m", g.m)
    rep.add("r", cfg.r)
    rep.add("delta_cap", cfg.delta_cap)
    rep.add("fail_prob", cfg.fail_prob)
    rep.add("sigma", args.sigma)
    rep.add("t", cfg.t)
    rep.add("mode", cfg.mode)
    rep.add("trials", cfg.trials)
    rep.add("partitions_per_trial", cfg.partitions_per_trial)
    rep.add("seed", cfg.seed)
    rep.add("arbitrary", args.arbitrary)
    _, d_min = min_in_degree(g)
    rep.add("d_min", d_min)
    rep.add("degree_check", "holds" if d_min > 2 * cfg.r + cfg.delta_cap else "fails")
    start = time.perf_counter()
    out = run_test(g, cfg, args.sigma, args.arbitrary)
    elapsed = time.perf_counter() - start
    rep.add("verdict", out.verdict)
    rep.add("degree_witness", out.degree_witness)
    _add_witness(rep, out.witness)
    rep.add("witness_R", out.witness_R)
    rep.add("best_R", out.best_R)
    rep.add("runs", out.runs)
    rep.add("run_of_rejection", out.run_of_rejection)
    rep.add("trial_of_rejection", out.trial_of_rejection)
    rep.add("partitions_examined", out.partitions_examined)
    rep.add("seconds", f"{elapsed:.3f}")
    if out.rejected:
        level = out.witness_R if out.degree_witness else cfg.r + cfg.delta_cap
        verify_witness(g, out.witness, level)
        return rep, EXIT_REJECT
    return rep, EXIT_ACCEPT


def cmd_interval(args) -> tuple[RunReport, int]:
    g = _read(args.graph)
    beta = Fraction(args.beta)
    rep = RunReport("interval")
    rep.add("graph", args.graph)
    rep.add("n", g.n)
    rep.add("m", g.m)
    rep.add("delta_cap", args.delta)
    rep.add("beta", beta)
    rep.add("sigma", args.sigma)
    rep.add("seed", args.seed)
    start = time.perf_counter()
    est = interval_estimate(g, args.delta, beta.numerator, beta.denominator,
                            args.sigma, args.seed, t=int(args.t), trials=args.trials,
                            workers=args.workers)
    elapsed = time.perf_counter() - start
    rep.add("lo", est.lo)
    rep.add("hi", est.hi)
    rep.add("iterations", est.iterations)
    rep.add("calls", [f"{r}:{v}" for r, v in est.per_call_outcomes])
    rep.add("notes", "; ".join(est.notes) or None)
    rep.add("seconds", f"{elapsed:.3f}")
    return rep, EXIT_ACCEPT


def cmd_gen(args) -> tuple[RunReport, int]:
    spec = PlantedSpec(args.n, args.size_a, args.size_b, args.rbar, args.seed)
    g, truth = generate_planted(spec)
    save_graph(g, args.output)
    truth_path = args.output + ".truth"
    with open(truth_path, "w", encoding="utf-8") as fh:
        fh.write(write_ground_truth(truth, args.rbar) + "\n")
    rep = RunReport("gen")
    for key in ("n", "size_a", "size_b", "rbar", "seed"):
        rep.add(key, getattr(args, key))
    rep.add("m", g.m)
    rep.add("graph", args.output)
    rep.add("truth", truth_path)
    return rep, EXIT_ACCEPT


def fig3_rows(settings, n=200, delta_cap=30, t=9, trials=3, seed=0, workers=1):
    """One planted instance and one tester run per ``(label, size, rbar)``."""
    rows = []
    for label, size, rbar in settings:
        g, _ = generate_planted(PlantedSpec(n, size, size, rbar, seed))
        cfg = TestConfig(r=rbar + 1, delta_cap=delta_cap, t=t, trials=trials,
                         seed=seed, workers=workers)
        start = time.perf_counter()
        # some panel settings fall below the in-degree bound; run them anyway
        out = sampled_rbst_tst(g, cfg, check_assumption=False)
        elapsed = time.perf_counter() - start
        if out.rejected:
            verify_witness(g, out.witness, cfg.r + cfg.delta_cap)
        detected = out.witness_R if out.rejected else out.best_R
        rows.append({"setting": label, "rbar": rbar, "threshold": cfg.r + delta_cap,
                     "detected_R": detected, "seconds": f"{elapsed:.3f}"})
    return rows


def _int_list(text: str) -> list[int]:
    values = [int(x) for x in text.replace(",", " ").split()]
    if not values:
        raise argparse.ArgumentTypeError("empty setting list")
    return values


def cmd_fig3(args) -> tuple[Optional[RunReport], int]:
    if args.rbar_list is not None:
        settings = [(f"rbar={k}", args.size, k) for k in args.rbar_list]
    else:
        settings = [(f"size={s}", s, args.rbar) for s in args.size_list]
    rows = fig3_rows(settings, n=args.n, delta_cap=args.delta, t=int(args.t),
                     trials=args.trials, seed=args.seed, workers=args.workers)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=FIG3_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        args.stdout.write(buf.getvalue())
    return None, EXIT_ACCEPT


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rrobust", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("degree", help="check the minimum in-degree precondition")
    p.add_argument("graph")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("exact", help="brute-force robustness (small graphs)")
    p.add_argument("graph")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--r", type=int)
    grp.add_argument("--max", action="store_true")
    p.add_argument("--max-n", type=int, default=13)
    p.add_argument("--force", action="store_true", help="ignore the size cap")
    p.set_defaults(func=cmd_exact)

    def tester_flags(p):
        p.add_argument("--t", default="9", help="sample size, or 'guaranteed'")
        p.add_argument("--trials", type=int, default=3)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("test", help="sample-based approximate test")
    p.add_argument("graph")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--sigma", type=Fraction, default=None,
                   help="overall failure probability; enables amplification")
    p.add_argument("--mode", choices=["random", "exhaustive"], default="random")
    p.add_argument("--partitions", type=int, default=None,
                   help="random partitions per trial")
    p.add_argument("--arbitrary", action="store_true",
                   help="reject on low in-degree instead of erroring")
    tester_flags(p)
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("interval", help="interval estimate of the maximal robustness")
    p.add_argument("graph")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--beta", default="1")
    p.add_argument("--sigma", type=Fraction, default=Fraction(1, 10))
    tester_flags(p)
    p.set_defaults(func=cmd_interval)

    p = sub.add_parser("gen", help="planted-partition graph with known robustness")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--size-a", type=int, required=True)
    p.add_argument("--size-b", type=int, required=True)
    p.add_argument("--rbar", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("fig3", help="detected violation vs planted optimum, as CSV")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--rbar-list", type=_int_list)
    grp.add_argument("--size-list", type=_int_list)
    p.add_argument("--size", type=int, default=70, help="|A|=|B| for --rbar-list")
    p.add_argument("--rbar", type=int, default=10, help="rbar for --size-list")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--delta", type=int, default=30)
    p.add_argument("-o", "--output")
    tester_flags(p)
    p.set_defaults(func=cmd_fig3)
    return parser


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_ACCEPT
    args.stdout = stdout
    if getattr(args, "t", "9") != "guaranteed" and not str(getattr(args, "t", "9")).isdigit():
        print("error: --t must be an integer or 'guaranteed'", file=sys.stderr)
        return EXIT_USAGE
    try:
        report, code = args.func(args)
    except AssumptionError as exc:
        print(f"error: {exc}; rerun with --arbitrary", file=sys.stderr)
        return EXIT_PRECONDITION
    except VerificationError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (GraphParseError, SizeGuardError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if report is not None:
        stdout.write(report.dumps())
    return code


if __name__ == "__main__":
    sys.exit(main())
