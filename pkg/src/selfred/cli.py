"""Command-line front end: run deciders and the counter on batches of
formulas, verify against brute force, and emit JSONL traces plus CSV
summaries.

Identical configurations (flags and seeds) produce byte-identical trace and
summary files; wall time is reported on the console only.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .counting import count_via_enumerator, demonstrate_naive_failure
from .errors import InvalidParams, SelfReducibilityError
from .formula import (
    Formula,
    brute_force_count,
    brute_force_limit,
    brute_force_sat,
    parse,
    parse_dimacs,
    serialize,
    variables,
)
from .generate import generate_random
from .oracles import (
    ENUMERATOR_STYLES,
    SELECTOR_STYLES,
    SPARSE_STYLES,
    TALLY_STYLES,
    adversarial_selector,
    honest_selector,
    honest_two_enumerator,
    simulated_sparse_coreduction,
    simulated_tally_reduction,
)
from .pruning import decide_via_sparse, decide_via_tally
from .selector import decide_via_selector

SUMMARY_COLUMNS = [
    "formula_id",
    "vars",
    "algorithm",
    "oracle_style",
    "seed",
    "result",
    "reference",
    "agree",
    "oracle_calls",
    "max_width",
]

_DEFAULT_STYLES = {
    "selector": ("honest", SELECTOR_STYLES),
    "tally": ("canonical", TALLY_STYLES),
    "sparse": ("singleton", SPARSE_STYLES),
    "enum_count": ("exact_plus_offset", ENUMERATOR_STYLES),
}


@dataclass
class ExperimentConfig:
    algorithm: str  # selector | tally | sparse | enum_count
    formulas: list[Formula]
    oracle_style: str
    seed: int = 0
    mode: str = "early_accept"
    verify: bool = True
    trace_path: str | None = None
    summary_path: str | None = None


@dataclass
class RunRecord:
    formula_id: int
    formula: str
    vars: int
    algorithm: str
    oracle_style: str
    seed: int
    result: bool | int
    reference: bool | int | None
    agree: bool | None
    oracle_calls: int
    max_width: int | None
    wall_time: float
    trace_rows: list[dict] = field(default_factory=list)


def _make_oracle(config: ExperimentConfig):
    if config.algorithm == "selector":
        if config.oracle_style == "honest":
            return honest_selector()
        return adversarial_selector(config.seed)
    if config.algorithm == "tally":
        return simulated_tally_reduction(config.oracle_style)
    if config.algorithm == "sparse":
        return simulated_sparse_coreduction(config.oracle_style, seed=config.seed)
    if config.algorithm == "enum_count":
        return honest_two_enumerator(config.oracle_style, seed=config.seed)
    raise InvalidParams(f"unknown algorithm {config.algorithm!r}")


def _level_trace_rows(formula_id: int, algorithm: str, stats) -> list[dict]:
    rows = []
    for level, (pre, post) in zip(stats.levels, stats.widths):
        row = {
            "formula_id": formula_id,
            "algorithm": algorithm,
            "depth": level.depth,
            "pre_prune_width": pre,
            "post_prune_width": post,
            "images": level.images,
            "prune_events": [
                {
                    "kind": event.kind,
                    "discarded": event.discarded,
                    "surviving_image": event.surviving_image,
                }
                for event in level.prune_events
            ],
        }
        if algorithm == "sparse":
            row["threshold"] = stats.threshold
            row["crossed"] = stats.crossed_at is not None and level.depth >= stats.crossed_at
            row["capped"] = level.depth in stats.capped_levels
        rows.append(row)
    return rows


def _run_one(config: ExperimentConfig, oracle, formula_id: int, formula: Formula) -> RunRecord:
    start = time.perf_counter()
    reference: bool | int | None = None
    if config.algorithm == "selector":
        verdict, trace = decide_via_selector(formula, oracle)
        result: bool | int = verdict
        oracle_calls = trace.oracle_calls
        max_width: int | None = 1
        trace_rows = [
            {
                "formula_id": formula_id,
                "algorithm": "selector",
                "depth": depth,
                "split_var": step.split_var,
                "branch": step.chosen_branch,
                "formula": step.chosen_formula,
            }
            for depth, step in enumerate(trace.steps)
        ]
        if config.verify:
            reference = brute_force_sat(formula)
    elif config.algorithm in ("tally", "sparse"):
        if config.algorithm == "tally":
            verdict, stats = decide_via_tally(formula, oracle)
        else:
            verdict, stats = decide_via_sparse(formula, oracle, config.mode)
        result = verdict
        oracle_calls = stats.oracle_calls
        max_width = stats.max_width
        trace_rows = _level_trace_rows(formula_id, config.algorithm, stats)
        if config.verify:
            reference = brute_force_sat(formula)
    elif config.algorithm == "enum_count":
        before = oracle.call_counter
        count, chain = count_via_enumerator(formula, oracle)
        result = count
        oracle_calls = oracle.call_counter - before
        max_width = None
        trace_rows = [
            {
                "formula_id": formula_id,
                "algorithm": "enum_count",
                "depth": linkage.depth,
                "child": serialize(linkage.child),
                "triples": [[t.a, t.b, t.c] for t in linkage.triples or ()],
                "linkage": sorted(linkage.mapping.items()),
            }
            for linkage in chain
        ]
        if config.verify:
            reference = brute_force_count(formula)
    else:
        raise InvalidParams(f"unknown algorithm {config.algorithm!r}")

    elapsed = time.perf_counter() - start
    agree = None if reference is None else result == reference
    return RunRecord(
        formula_id=formula_id,
        formula=serialize(formula),
        vars=len(variables(formula)),
        algorithm=config.algorithm,
        oracle_style=config.oracle_style,
        seed=config.seed,
        result=result,
        reference=reference,
        agree=agree,
        oracle_calls=oracle_calls,
        max_width=max_width,
        wall_time=elapsed,
        trace_rows=trace_rows,
    )


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def write_outputs(records: list[RunRecord], config: ExperimentConfig) -> None:
    if config.trace_path:
        with open(config.trace_path, "w", newline="\n") as handle:
            for record in records:
                for row in record.trace_rows:
                    handle.write(json.dumps(row, sort_keys=True) + "\n")
    if config.summary_path:
        with open(config.summary_path, "w", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(SUMMARY_COLUMNS)
            for r in records:
                writer.writerow(
                    [
                        _cell(r.formula_id),
                        _cell(r.vars),
                        _cell(r.algorithm),
                        _cell(r.oracle_style),
                        _cell(r.seed),
                        _cell(r.result),
                        _cell(r.reference),
                        _cell(r.agree),
                        _cell(r.oracle_calls),
                        _cell(r.max_width),
                    ]
                )


def run(config: ExperimentConfig) -> list[RunRecord]:
    """Execute the configured algorithm on every formula, in input order."""
    default_style, styles = _DEFAULT_STYLES[config.algorithm]
    if config.oracle_style not in styles:
        raise InvalidParams(
            f"oracle style {config.oracle_style!r} not valid for {config.algorithm}; "
            f"choose from {styles}"
        )
    if config.verify:
        limit = brute_force_limit()
        for formula in config.formulas:
            if len(variables(formula)) > limit:
                raise InvalidParams(
                    f"{len(variables(formula))} variables exceeds the verification "
                    f"limit of {limit}; rerun with --no-verify or raise "
                    f"SELFRED_BRUTE_LIMIT"
                )
    oracle = _make_oracle(config)
    records = []
    for formula_id, formula in enumerate(config.formulas):
        records.append(_run_one(config, oracle, formula_id, formula))
    write_outputs(records, config)
    return records


def _load_formulas(args: argparse.Namespace) -> list[Formula]:
    if args.inline is not None:
        return [parse(args.inline)]
    if args.file is not None:
        path = Path(args.file)
        text = path.read_text()
        if path.suffix in (".cnf", ".dimacs"):
            return [parse_dimacs(text)]
        return [parse(line) for line in text.splitlines() if line.strip()]
    params = {}
    for item in args.random:
        key, _, value = item.partition("=")
        if not value:
            raise InvalidParams(f"--random expects key=value items, got {item!r}")
        if key not in ("vars", "count", "seed", "budget"):
            raise InvalidParams(f"unknown --random key {key!r}")
        params[key] = int(value)
    if "vars" not in params:
        raise InvalidParams("--random requires vars=<n>")
    var_count = params["vars"]
    count = params.get("count", 1)
    seed = params.get("seed", 0)
    budget = params.get("budget", 2 * var_count + 2)
    return [generate_random(var_count, budget, seed + i) for i in range(count)]


def _add_io_flags(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--inline", metavar="FORMULA", help="formula text")
    source.add_argument(
        "--file",
        metavar="PATH",
        help="formula-per-line file, or DIMACS CNF for .cnf/.dimacs",
    )
    source.add_argument(
        "--random",
        nargs="+",
        metavar="KEY=VALUE",
        help="generate formulas: vars=N [count=N] [seed=N] [budget=N]",
    )
    parser.add_argument("--oracle", metavar="STYLE", help="oracle style")
    parser.add_argument("--seed", type=int, default=0, help="oracle seed (default 0)")
    verify = parser.add_mutually_exclusive_group()
    verify.add_argument(
        "--verify", dest="verify", action="store_true", default=True,
        help="compare against brute force (default)",
    )
    verify.add_argument(
        "--no-verify", dest="verify", action="store_false",
        help="skip brute-force verification",
    )
    parser.add_argument("--trace", metavar="PATH", help="write JSONL trace")
    parser.add_argument("--summary", metavar="PATH", help="write CSV summary")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="selfred",
        description="Self-reducibility tree-pruning SAT deciders and counting",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    decide = commands.add_parser("decide", help="decide satisfiability")
    decide.add_argument("algorithm", choices=["selector", "tally", "sparse"])
    _add_io_flags(decide)
    decide.add_argument(
        "--mode",
        choices=["early_accept", "capped_continue"],
        default="early_accept",
        help="sparse decider mode (default early_accept)",
    )

    count = commands.add_parser("count", help="count satisfying assignments")
    count.add_argument("algorithm", choices=["enum"])
    _add_io_flags(count)

    demo = commands.add_parser("demo", help="run a demonstration")
    demo.add_argument("name", choices=["naive-failure"])

    gen = commands.add_parser("gen", help="generate random formulas")
    gen.add_argument("--vars", type=int, required=True)
    gen.add_argument("--budget", type=int, default=None)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument("--out", metavar="PATH", help="output path (default stdout)")
    return parser


def _print_records(records: list[RunRecord]) -> None:
    for r in records:
        reference = "" if r.reference is None else f" reference={_cell(r.reference)}"
        agree = "" if r.agree is None else (" agree" if r.agree else " MISMATCH")
        print(
            f"[{r.formula_id}] {r.formula} -> {_cell(r.result)}"
            f"{reference}{agree} calls={r.oracle_calls} ({r.wall_time * 1000:.2f} ms)"
        )
    verified = [r for r in records if r.agree is not None]
    if verified:
        agreeing = sum(r.agree for r in verified)
        print(f"{agreeing}/{len(verified)} verified records agree")


def _demo_naive_failure() -> int:
    report = demonstrate_naive_failure()
    print("Per-node guess sets cannot determine the model count:")
    for i, witness in enumerate(report.witnesses, start=1):
        guesses = " / ".join(str(list(g)) for g in witness.guess_sets)
        print(
            f"  witness {i}: {serialize(witness.formula)}  "
            f"root={witness.root_count} "
            f"children=({witness.left_count}, {witness.right_count})  "
            f"guesses {guesses}"
        )
    first, second = report.witnesses
    print(
        "  both witnesses show guess sets {0,1} at all three nodes, yet their "
        f"root counts differ ({first.root_count} vs {second.root_count})."
    )
    return 0


def _run_gen(args: argparse.Namespace) -> int:
    budget = args.budget if args.budget is not None else 2 * args.vars + 2
    lines = [
        serialize(generate_random(args.vars, budget, args.seed + i))
        for i in range(args.count)
    ]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "demo":
            return _demo_naive_failure()
        if args.command == "gen":
            return _run_gen(args)
        algorithm = "enum_count" if args.command == "count" else args.algorithm
        default_style, _ = _DEFAULT_STYLES[algorithm]
        config = ExperimentConfig(
            algorithm=algorithm,
            formulas=_load_formulas(args),
            oracle_style=args.oracle or default_style,
            seed=args.seed,
            mode=getattr(args, "mode", "early_accept"),
            verify=args.verify,
            trace_path=args.trace,
            summary_path=args.summary,
        )
        records = run(config)
    except (SelfReducibilityError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _print_records(records)
    if any(r.agree is False for r in records):
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
