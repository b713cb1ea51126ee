"""Command-line interface.

Subcommands:

  prob spectrum        per-match-count combinations and probabilities
  prob portfolio       win probability of a ticket portfolio
  prob approx-compare  exact vs both approximation modes side by side
  design verify        check a design file (covering or lottery semantics)
  design schonheim     covering lower bound (optionally the whole chain)
  design greedy        construct a covering design
  design enumerate     write every k-subset as one design file
  myth pool            restricted number-pool analysis
  myth compare         same, plus an optional cover-size comparison
  simulate             Monte Carlo portfolio simulation (JSON by default)
  bench design-vs-random   guaranteed design vs random portfolio of equal size

Exit codes: 0 run completed (for `design verify` validity is data, not an
exit code), 1 bad input or domain error, 2 usage error, 3 resource cap hit.
Errors print to stderr as ``error[category]: message``.

Output is plain text; no environment variable other than NO_COLOR is ever
consulted, and color is never emitted anyway.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from .designs import enumerate_full_design, parse_design_file, format_design, write_design_file
from .errors import LottoError, ResourceLimitError
from .greedy import (EXHAUSTIVE_CANDIDATE_CAP, GreedyConfig, STRATEGY_EXHAUSTIVE,
                     STRATEGY_SAMPLED, greedy_cover)
from .myths import myth_comparison, prob_high_in_pool
from .probability import (DEFAULT_SCHEME, MODE_APPROX_HITS, MODE_APPROX_TICKETS,
                          MODE_EXACT, MODES, Scheme, hit_spectrum,
                          pmf_exact_hits, pmf_joint_high_hits,
                          prob_at_least_one_high, prob_at_least_s_high, prob_jackpot)
from .simulate import SimConfig, SimResult, SimTarget, run_simulation
from .values import MAX_DECIMALS, Probability
from .verify import (SCAN_CAP, TARGET_CAP, VerificationReport, schonheim_chain,
                     verify_covering, verify_lottery)

SCHEMA = "lottokit/1"


# ---------------------------------------------------------------- arg types

def _decimals_type(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"decimals must be an integer, got {text!r}")
    if not 0 <= v <= MAX_DECIMALS:
        raise argparse.ArgumentTypeError(f"decimals must be in 0..{MAX_DECIMALS}")
    return v


def _scheme_type(text: str) -> Scheme:
    parts = text.split(",")
    if len(parts) not in (2, 3, 4):
        raise argparse.ArgumentTypeError(
            "scheme must be 'pool,ticket[,draw[,threshold]]'")
    try:
        vals = [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"scheme fields must be integers: {text!r}")
    try:
        if len(vals) == 2:
            return Scheme(vals[0], vals[1], vals[1])
        if len(vals) == 3:
            return Scheme(vals[0], vals[1], vals[2])
        return Scheme(vals[0], vals[1], vals[2], vals[3])
    except LottoError as e:
        raise argparse.ArgumentTypeError(str(e))


def _int_pair_type(text: str):
    try:
        a, b = text.split(",")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'INT,INT', got {text!r}")


def _int_tuple_type(text: str):
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _nonneg_type(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("value must be >= 0")
    return v


def _positive_type(text: str) -> int:
    v = _nonneg_type(text)
    if v < 1:
        raise argparse.ArgumentTypeError("value must be >= 1")
    return v


# ------------------------------------------------------------- output plumbing

def _emit(args, text_lines, json_payload, csv_rows=None) -> None:
    if args.format == "json":
        print(json.dumps(json_payload, indent=2))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        for row in csv_rows if csv_rows is not None else []:
            writer.writerow(row)
    else:
        for line in text_lines:
            print(line)


def _pct(prob: Probability, args) -> str:
    if args.decimals is None:
        return prob.percent_adaptive()
    return prob.percent(args.decimals)


def _jd(prob: Probability, args) -> dict:
    return prob.json_dict(args.decimals if args.decimals is not None else 3)


def _scheme_dict(s: Scheme) -> dict:
    return {"pool": s.pool, "ticket_size": s.ticket_size,
            "draw_size": s.draw_size, "threshold": s.high_threshold}


def _scheme_line(s: Scheme) -> str:
    return (f"scheme: pool={s.pool} ticket={s.ticket_size} "
            f"draw={s.draw_size} threshold={s.high_threshold}")


# ------------------------------------------------------------------ handlers

def cmd_prob_spectrum(args) -> int:
    spectrum = hit_spectrum(args.scheme)
    lines = [_scheme_line(args.scheme),
             f"{'matches':>7}  {'combinations':>14}  probability"]
    entries = []
    rows = [["matches", "combinations", "numerator", "denominator", "percent"]]
    for m, c, pr in spectrum.entries():
        pct = _pct(pr, args)
        lines.append(f"{m:>7}  {c:>14,}  {pct}%")
        entries.append({"matches": m, "combinations": str(c),
                        "probability": _jd(pr, args)})
        rows.append([m, c, str(pr.as_fraction().numerator),
                     str(pr.as_fraction().denominator), pct])
    lines.append(f"{'total':>7}  {spectrum.total:>14,}")
    payload = {"schema": SCHEMA, "command": "prob spectrum",
               "scheme": _scheme_dict(args.scheme),
               "total": str(spectrum.total), "entries": entries}
    _emit(args, lines, payload, rows)
    return 0


def _portfolio_value(args) -> tuple[str, Probability]:
    scheme, tickets = args.scheme, args.tickets
    unique = not args.doubles
    mode = args.mode
    if args.exact_hits is not None:
        matches, count = args.exact_hits
        if not unique or mode != MODE_EXACT:
            raise LottoError("exact-hits supports unique portfolios in exact mode only")
        return (f"exactly {count} tickets with exactly {matches} matches",
                pmf_exact_hits(scheme, matches, count, tickets))
    if args.joint is not None:
        near, full = args.joint
        if not unique or mode != MODE_EXACT:
            raise LottoError("joint counts support unique portfolios in exact mode only")
        return (f"exactly {near} near-miss and {full} jackpot tickets",
                pmf_joint_high_hits(scheme, near, full, tickets))
    if args.jackpot:
        if mode != MODE_EXACT:
            raise LottoError("the jackpot target has no approximation modes")
        return "at least one jackpot", prob_jackpot(scheme, tickets, unique=unique)
    s = args.at_least if args.at_least is not None else 1
    if s == 1:
        return ("at least 1 high-tier hit",
                prob_at_least_one_high(scheme, tickets, unique=unique, mode=mode))
    if not unique or mode != MODE_EXACT:
        raise LottoError("at-least thresholds above 1 support unique portfolios "
                         "in exact mode only")
    return (f"at least {s} high-tier hits", prob_at_least_s_high(scheme, s, tickets))


def cmd_prob_portfolio(args) -> int:
    label, prob = _portfolio_value(args)
    pct = _pct(prob, args)
    lines = [_scheme_line(args.scheme),
             f"portfolio: {args.tickets:,} tickets "
             f"({'doubles allowed' if args.doubles else 'unique'})",
             f"target: {label}",
             f"mode: {args.mode}",
             f"probability: {pct}%"]
    payload = {"schema": SCHEMA, "command": "prob portfolio",
               "scheme": _scheme_dict(args.scheme), "tickets": args.tickets,
               "unique": not args.doubles, "target": label, "mode": args.mode,
               "probability": _jd(prob, args)}
    rows = [["field", "value"], ["tickets", args.tickets], ["target", label],
            ["mode", args.mode], ["percent", pct]]
    _emit(args, lines, payload, rows)
    return 0


def cmd_prob_approx_compare(args) -> int:
    scheme, tickets = args.scheme, args.tickets
    values = {mode: prob_at_least_one_high(scheme, tickets, mode=mode)
              for mode in MODES}
    exact_dec = values[MODE_EXACT].as_decimal(40)
    lines = [_scheme_line(scheme), f"tickets: {tickets:,}",
             f"{'mode':<15}  {'probability':>12}  abs difference from exact"]
    entries = []
    rows = [["mode", "percent", "difference"]]
    for mode, prob in values.items():
        pct = _pct(prob, args)
        if mode == MODE_EXACT:
            diff_s = "-"
        else:
            diff_s = f"{abs(exact_dec - prob.value):.3e}"
        lines.append(f"{mode:<15}  {pct + '%':>12}  {diff_s}")
        entries.append({"mode": mode, "probability": _jd(prob, args),
                        "difference_from_exact": diff_s})
        rows.append([mode, pct, diff_s])
    payload = {"schema": SCHEMA, "command": "prob approx-compare",
               "scheme": _scheme_dict(scheme), "tickets": tickets,
               "modes": entries}
    _emit(args, lines, payload, rows)
    return 0


def _report_output(args, report: VerificationReport) -> int:
    rate = report.operations / report.elapsed_seconds if report.elapsed_seconds > 0 else 0.0
    lines = [
        f"kind={report.kind} pool={report.pool} block={report.block_size}"
        + (f" draw={report.draw_size}" if report.draw_size is not None else "")
        + f" target={report.target_size}",
        f"blocks={report.block_count:,} duplicates={report.duplicate_blocks:,}",
        f"targets={report.total_targets:,} covered={report.covered_count:,} "
        f"uncovered={report.uncovered_count:,}",
        f"algorithm={report.algorithm} operations={report.operations:,} "
        f"elapsed={report.elapsed_seconds:.3f}s rate={rate:,.0f}/s",
    ]
    if report.witnesses:
        lines.append("uncovered witnesses:")
        for w in report.witnesses:
            lines.append("  " + " ".join(str(x) for x in w))
    lines.append(f"RESULT: {'VALID' if report.valid else 'NOT VALID'}")
    payload = {"schema": SCHEMA, "command": "design verify", **report.json_dict()}
    rows = [["field", "value"]] + [[k, v] for k, v in report.json_dict().items()
                                   if k != "witnesses"]
    _emit(args, lines, payload, rows)
    return 0


def cmd_design_verify(args) -> int:
    design = parse_design_file(args.file, declared=args.params)
    kind = args.kind or design.kind
    if kind == "lottery":
        design = design.to_lottery(args.draw_size)
        report = verify_lottery(design, witness_cap=args.witnesses,
                                target_cap=args.max_targets,
                                scan_cap=args.scan_cap, workers=args.workers)
    else:
        design = design.to_covering()
        report = verify_covering(design, witness_cap=args.witnesses,
                                 target_cap=args.max_targets, workers=args.workers)
    return _report_output(args, report)


def cmd_design_schonheim(args) -> int:
    chain = schonheim_chain(args.n, args.k, args.t)
    lines = [str(chain[-1])]
    if args.chain:
        lines.append("chain: " + " -> ".join(str(c) for c in chain))
    payload = {"schema": SCHEMA, "command": "design schonheim",
               "pool": args.n, "block_size": args.k, "target_size": args.t,
               "bound": str(chain[-1]), "chain": [str(c) for c in chain]}
    rows = [["level", "bound"]] + [[i + 1, c] for i, c in enumerate(chain)]
    _emit(args, lines, payload, rows)
    return 0


def cmd_design_greedy(args) -> int:
    config = GreedyConfig(strategy=args.strategy, sample_count=args.samples,
                          seed=args.seed, max_blocks=args.max_blocks)

    def progress(blocks: int, covered: int, total: int) -> None:
        print(f"greedy: {blocks:,} blocks, {covered:,}/{total:,} targets covered",
              file=sys.stderr)

    result = greedy_cover(args.n, args.k, args.t, config,
                          target_cap=args.max_targets,
                          progress=None if args.quiet else progress,
                          progress_every=args.progress_every)
    design = result.design
    summary = [f"blocks={design.block_count} bound={result.bound} gap={result.gap}",
               f"strategy={result.strategy} rounds={result.rounds} "
               f"elapsed={result.elapsed_seconds:.3f}s"]
    if args.reference is not None:
        summary.append(f"reference={args.reference} "
                       f"delta={design.block_count - args.reference:+d}")
    if args.output:
        write_design_file(design, args.output)
        summary.append(f"wrote {args.output}")
    payload = {"schema": SCHEMA, "command": "design greedy",
               "pool": args.n, "block_size": args.k, "target_size": args.t,
               "strategy": result.strategy, "seed": args.seed,
               "blocks": design.block_count, "bound": result.bound,
               "gap": result.gap, "rounds": result.rounds,
               "reference": args.reference,
               "elapsed_seconds": result.elapsed_seconds,
               "design": [list(b) for b in design.iter_blocks()]}
    if args.format == "text":
        for line in summary:
            print(line, file=sys.stderr)
        if not args.output:
            sys.stdout.write(format_design(design))
        return 0
    rows = [["field", "value"], ["blocks", design.block_count],
            ["bound", result.bound], ["gap", result.gap]]
    _emit(args, [], payload, rows)
    return 0


def cmd_design_enumerate(args) -> int:
    design = enumerate_full_design(args.n, args.k, target_size=args.t,
                                   cap=args.cap)
    if args.output:
        write_design_file(design, args.output)
        print(f"wrote {design.block_count:,} blocks to {args.output}",
              file=sys.stderr)
        return 0
    if args.format == "json":
        payload = {"schema": SCHEMA, "command": "design enumerate",
                   "pool": args.n, "block_size": args.k,
                   "blocks": design.block_count,
                   "design": [list(b) for b in design.iter_blocks()]}
        print(json.dumps(payload, indent=2))
        return 0
    sys.stdout.write(format_design(design))
    return 0


def _myth_output(args, cover_size=None) -> int:
    scheme = args.scheme
    favored = args.nstar
    d_args = args
    if favored >= scheme.ticket_size:
        rep = myth_comparison(scheme, favored, cover_size=cover_size)
        budget_s = f"{rep.ticket_budget:,}"
        lines = [
            _scheme_line(scheme),
            f"favored sub-pool: {favored} of {scheme.pool} numbers",
            f"ticket budget (every ticket inside the sub-pool): {budget_s}",
            f"P(draw lands >= {scheme.high_threshold} of its numbers in the "
            f"sub-pool): {_pct(rep.pool_at_least, d_args)}%",
            f"same budget as distinct full-field tickets:",
            f"  at least one high-tier hit (exact): "
            f"{_pct(rep.full_at_least_exact, d_args)}%",
            f"  at least one high-tier hit (hit-power approx): "
            f"{_pct(rep.full_at_least_approx, d_args)}%",
        ]
        if cover_size is not None:
            lines.append(f"covering design of {cover_size:,} blocks, full field:")
            lines.append(f"  at least one high-tier hit (exact): "
                         f"{_pct(rep.cover_at_least_exact, d_args)}%")
        payload = {"schema": SCHEMA, "command": "myth",
                   **rep.json_dict(args.decimals if args.decimals is not None else 3)}
        rows = [["field", "value"],
                ["favored", favored], ["ticket_budget", rep.ticket_budget],
                ["pool_at_least_percent", _pct(rep.pool_at_least, d_args)],
                ["full_at_least_exact_percent", _pct(rep.full_at_least_exact, d_args)],
                ["full_at_least_approx_percent", _pct(rep.full_at_least_approx, d_args)]]
        _emit(args, lines, payload, rows)
        return 0
    # Sub-pool too small to buy a single ticket: pool probability only.
    pool_p = prob_high_in_pool(scheme, favored)
    lines = [_scheme_line(scheme),
             f"favored sub-pool: {favored} of {scheme.pool} numbers",
             f"ticket budget: 0 (sub-pool smaller than a ticket)",
             f"P(draw lands >= {scheme.high_threshold} of its numbers in the "
             f"sub-pool): {_pct(pool_p, d_args)}%",
             "full-field comparison unavailable: the budget buys no tickets"]
    payload = {"schema": SCHEMA, "command": "myth",
               "scheme": _scheme_dict(scheme), "favored": favored,
               "ticket_budget": "0",
               "pool_at_least": _jd(pool_p, args)}
    rows = [["field", "value"], ["favored", favored], ["ticket_budget", 0],
            ["pool_at_least_percent", _pct(pool_p, d_args)]]
    _emit(args, lines, payload, rows)
    return 0


def cmd_myth_pool(args) -> int:
    return _myth_output(args)


def cmd_myth_compare(args) -> int:
    return _myth_output(args, cover_size=args.cover_size)


def cmd_simulate(args) -> int:
    target = SimTarget.parse(args.target)
    config = SimConfig(scheme=args.scheme, tickets=args.tickets,
                       trials=args.trials, seed=args.seed,
                       unique=not args.doubles, target=target)
    result = run_simulation(config, workers=args.workers, method=args.method)
    freq = Probability.exact(result.frequency)
    payload = {"schema": SCHEMA, "command": "simulate",
               "scheme": _scheme_dict(args.scheme), "tickets": args.tickets,
               "unique": not args.doubles, "target": target.describe(),
               **result.json_dict()}
    lines = [_scheme_line(args.scheme),
             f"tickets={args.tickets:,} trials={result.trials:,} seed={result.seed}",
             f"target: {target.describe()} method={result.method}",
             f"hits={result.hits:,} frequency={_pct(freq, args)}%",
             f"wilson95=[{result.wilson_low:.6f}, {result.wilson_high:.6f}]",
             f"elapsed={result.elapsed_seconds:.3f}s"]
    rows = [["field", "value"], ["trials", result.trials], ["hits", result.hits],
            ["frequency", float(result.frequency)],
            ["wilson_low", result.wilson_low], ["wilson_high", result.wilson_high],
            ["seed", result.seed]]
    _emit(args, lines, payload, rows)
    return 0


def cmd_bench(args) -> int:
    scheme = args.scheme
    if args.design:
        design = parse_design_file(args.design)
        blocks = design.block_count
        dup = design.duplicate_count()
    else:
        blocks = args.blocks
        dup = 0
    certain = Probability.exact(1)
    random_exact = prob_at_least_one_high(scheme, blocks)
    random_approx = prob_at_least_one_high(scheme, blocks, mode=MODE_APPROX_HITS)
    jackpot = prob_jackpot(scheme, blocks)
    lines = [
        _scheme_line(scheme),
        f"blocks compared: {blocks:,}" + (f" ({dup} duplicates)" if dup else ""),
        f"{'outcome':<28}  {'design':>12}  {'random portfolio':>18}",
        f"{'at least one high-tier hit':<28}  {_pct(certain, args) + '%':>12}  "
        f"{_pct(random_exact, args) + '%':>18}",
        f"{'jackpot':<28}  {_pct(jackpot, args) + '%':>12}  "
        f"{_pct(jackpot, args) + '%':>18}",
        "design column assumes the file verifies (run `design verify`);",
        "jackpot odds depend only on how many distinct tickets are in play.",
    ]
    payload = {"schema": SCHEMA, "command": "bench design-vs-random",
               "scheme": _scheme_dict(scheme), "blocks": blocks,
               "duplicates": dup,
               "design_at_least_one": _jd(certain, args),
               "random_at_least_one_exact": _jd(random_exact, args),
               "random_at_least_one_approx": _jd(random_approx, args),
               "jackpot_either_way": _jd(jackpot, args)}
    rows = [["outcome", "design_percent", "random_percent"],
            ["at_least_one_high", _pct(certain, args), _pct(random_exact, args)],
            ["jackpot", _pct(jackpot, args), _pct(jackpot, args)]]
    _emit(args, lines, payload, rows)
    return 0


# ------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    def make_fmt(default: str) -> argparse.ArgumentParser:
        q = argparse.ArgumentParser(add_help=False)
        q.add_argument("--format", "-f", choices=("text", "json", "csv"),
                       default=default, help=f"output format (default {default})")
        q.add_argument("--decimals", type=_decimals_type, default=None,
                       help=f"percent decimals, 0..{MAX_DECIMALS} "
                            f"(default 3, widened for tiny values)")
        return q

    fmt = make_fmt("text")
    fmt_json = make_fmt("json")
    scheme_p = argparse.ArgumentParser(add_help=False)
    scheme_p.add_argument("--scheme", type=_scheme_type, default=DEFAULT_SCHEME,
                          help="pool,ticket[,draw[,threshold]] (default 49,6,6,5)")
    workers_p = argparse.ArgumentParser(add_help=False)
    workers_p.add_argument("--workers", type=_nonneg_type, default=1,
                           help="worker threads; 0 = auto (default 1)")

    parser = argparse.ArgumentParser(
        prog="lottokit",
        description="Exact lottery probabilities, covering designs, simulation.")
    sub = parser.add_subparsers(dest="command")

    prob = sub.add_parser("prob", help="closed-form probabilities")
    prob_sub = prob.add_subparsers(dest="subcommand")

    p = prob_sub.add_parser("spectrum", parents=[fmt, scheme_p],
                            help="per-match-count combinations and probabilities")
    p.set_defaults(handler=cmd_prob_spectrum)

    p = prob_sub.add_parser("portfolio", parents=[fmt, scheme_p],
                            help="win probability of a ticket portfolio")
    p.add_argument("--tickets", "-v", type=_nonneg_type, required=True,
                   help="portfolio size")
    p.add_argument("--doubles", action="store_true",
                   help="tickets drawn independently (duplicates allowed)")
    p.add_argument("--mode", choices=MODES, default=MODE_EXACT,
                   help="evaluation mode for the at-least-1 target")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--at-least", type=_positive_type, default=None,
                       metavar="S", help="at least S high-tier hits (default 1)")
    group.add_argument("--jackpot", action="store_true",
                       help="at least one full match")
    group.add_argument("--exact-hits", type=_int_pair_type, default=None,
                       metavar="MATCHES,COUNT",
                       help="exactly COUNT tickets with exactly MATCHES matches")
    group.add_argument("--joint", type=_int_pair_type, default=None,
                       metavar="NEAR,FULL",
                       help="exactly NEAR near-miss and FULL jackpot tickets")
    p.set_defaults(handler=cmd_prob_portfolio)

    p = prob_sub.add_parser("approx-compare", parents=[fmt, scheme_p],
                            help="exact vs approximation modes")
    p.add_argument("--tickets", "-v", type=_nonneg_type, required=True)
    p.set_defaults(handler=cmd_prob_approx_compare)

    design = sub.add_parser("design", help="covering/lottery designs")
    design_sub = design.add_subparsers(dest="subcommand")

    p = design_sub.add_parser("verify", parents=[fmt, workers_p],
                              help="verify a design file")
    p.add_argument("file", help="design file path")
    p.add_argument("--kind", choices=("covering", "lottery"), default=None,
                   help="override the header kind")
    p.add_argument("--params", type=_int_tuple_type, default=None,
                   metavar="N,K,T|N,K,P,T",
                   help="header values for a headerless file")
    p.add_argument("--draw-size", type=_positive_type, default=None,
                   help="draw size when reinterpreting a covering as a lottery")
    p.add_argument("--witnesses", type=_nonneg_type, default=10,
                   help="max uncovered witnesses to report (default 10)")
    p.add_argument("--max-targets", type=_positive_type, default=TARGET_CAP,
                   help=f"bitset size cap (default {TARGET_CAP})")
    p.add_argument("--scan-cap", type=_positive_type, default=SCAN_CAP,
                   help=f"membership-test cap for the fallback scan "
                        f"(default {SCAN_CAP})")
    p.set_defaults(handler=cmd_design_verify)

    p = design_sub.add_parser("schonheim", parents=[fmt],
                              help="covering lower bound")
    p.add_argument("-n", type=_positive_type, required=True, help="pool size")
    p.add_argument("-k", type=_positive_type, required=True, help="block size")
    p.add_argument("-t", type=_positive_type, required=True, help="target size")
    p.add_argument("--chain", action="store_true",
                   help="also print every nesting level")
    p.set_defaults(handler=cmd_design_schonheim)

    p = design_sub.add_parser("greedy", parents=[fmt, workers_p],
                              help="construct a covering design")
    p.add_argument("-n", type=_positive_type, required=True)
    p.add_argument("-k", type=_positive_type, required=True)
    p.add_argument("-t", type=_positive_type, required=True)
    p.add_argument("--strategy", choices=(STRATEGY_EXHAUSTIVE, STRATEGY_SAMPLED),
                   default=STRATEGY_EXHAUSTIVE)
    p.add_argument("--samples", type=_nonneg_type, default=0,
                   help="candidates per round (sampled strategy)")
    p.add_argument("--seed", type=_nonneg_type, default=0)
    p.add_argument("--max-blocks", type=_positive_type, default=None)
    p.add_argument("--max-targets", type=_positive_type, default=TARGET_CAP)
    p.add_argument("--reference", type=_positive_type, default=None,
                   help="known design size to report the gap against")
    p.add_argument("--output", "-o", default=None, help="write the design here")
    p.add_argument("--progress-every", type=_positive_type, default=1000)
    p.add_argument("--quiet", action="store_true", help="suppress progress lines")
    p.set_defaults(handler=cmd_design_greedy)

    p = design_sub.add_parser("enumerate", parents=[fmt],
                              help="every k-subset as one design")
    p.add_argument("-n", type=_positive_type, required=True)
    p.add_argument("-k", type=_positive_type, required=True)
    p.add_argument("-t", type=_positive_type, default=None,
                   help="target size for the header (default k)")
    p.add_argument("--cap", type=_positive_type, default=20_000_000,
                   help="refuse to enumerate more blocks than this")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(handler=cmd_design_enumerate)

    myth = sub.add_parser("myth", help="number-pool restriction analysis")
    myth_sub = myth.add_subparsers(dest="subcommand")

    p = myth_sub.add_parser("pool", parents=[fmt, scheme_p],
                            help="restricted sub-pool vs full field")
    p.add_argument("--nstar", type=_nonneg_type, required=True,
                   help="favored sub-pool size")
    p.set_defaults(handler=cmd_myth_pool)

    p = myth_sub.add_parser("compare", parents=[fmt, scheme_p],
                            help="sub-pool vs full field vs covering design")
    p.add_argument("--nstar", type=_nonneg_type, required=True)
    p.add_argument("--cover-size", type=_positive_type, default=None,
                   help="covering design size for a third comparison line")
    p.set_defaults(handler=cmd_myth_compare)

    p = sub.add_parser("simulate", parents=[fmt_json, scheme_p, workers_p],
                       help="Monte Carlo portfolio simulation (JSON by default)")
    p.add_argument("--tickets", "-v", type=_nonneg_type, required=True)
    p.add_argument("--trials", type=_positive_type, required=True)
    p.add_argument("--seed", type=_nonneg_type, default=0)
    p.add_argument("--doubles", action="store_true")
    p.add_argument("--target", default="at-least-fives:1",
                   help="at-least-fives:S | jackpot | exact-hits:MATCHES,COUNT")
    p.add_argument("--method", choices=("auto", "direct", "rank-set"),
                   default="auto")
    p.set_defaults(handler=cmd_simulate)

    bench = sub.add_parser("bench", help="reference comparisons")
    bench_sub = bench.add_subparsers(dest="subcommand")
    p = bench_sub.add_parser("design-vs-random", parents=[fmt, scheme_p],
                             help="design guarantee vs random portfolio")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--blocks", type=_positive_type, default=None,
                       help="portfolio/design size")
    group.add_argument("--design", default=None, help="design file to size against")
    p.set_defaults(handler=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "handler"):
        parser.print_usage(sys.stderr)
        return 2
    try:
        return args.handler(args)
    except ResourceLimitError as e:
        print(f"error[{e.category}]: {e}", file=sys.stderr)
        return 3
    except LottoError as e:
        print(f"error[{e.category}]: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error[io]: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
