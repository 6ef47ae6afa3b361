#!/usr/bin/env python3
"""
Tangent Words Toolkit - command line interface

Classify, derive, enumerate and count tangent words, compare the closed
complexity formulas with enumeration, and code segments and curves on grids.
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from automata_functions import is_thin_diagonal
from counting_functions import (
    ClosedFormVariant,
    lipatov_balanced,
    prop3_analytic,
    prop3_tangent,
    reconcile,
)
from derivation_functions import derive, is_analytic_tangent, is_balanced, is_tangent
from geometry_functions import (
    CurveKind,
    CurveSpec,
    GridPlacement,
    LatticeSegment,
    analytic_slalom_pair,
    cutting_sequence,
    multigrid_factor_scan,
    segment_coding,
    slalom_bispecials,
)
from language_lab import (
    ANALYTIC,
    BALANCED,
    LanguageId,
    LanguageKind,
    bispecial_census,
    complexity_profile,
    enumerate_words,
    inclusion_audit,
    splits_into_two_balanced,
)
from report_formats import to_csv, to_json, to_plain, to_table, write_output
from toolkit_config import get_toolkit_config
from word_functions import InvalidCharacter, TangentWordsError, is_k_balanced, parse_word

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2


class ToolkitArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with status 1"""
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _language(text: str) -> LanguageId:
    try:
        return LanguageId.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _reals(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _pair(text: str) -> tuple:
    values = _reals(text)
    if len(values) != 2:
        raise argparse.ArgumentTypeError(f"expected two comma-separated numbers, got {text!r}")
    return tuple(values)


def emit(payload: Any, fmt: str, out: Optional[str] = None, rows: Optional[List[Dict[str, Any]]] = None) -> None:
    """Render a result in the requested format; tables use `rows` for csv/plain."""
    if fmt == "json":
        text = to_json(payload)
    elif fmt == "csv":
        text = to_csv(rows if rows is not None else [payload])
    elif rows is not None:
        text = to_table(rows)
    else:
        text = to_plain(payload)
    write_output(text, out)


def _derivation_steps(trace) -> List[Dict[str, Any]]:
    return [
        {"input": step.input, "rule": step.rule.value, "output": step.output, "repeat": step.repeat}
        for step in trace.steps
    ]


def cmd_classify(args) -> int:
    w = parse_word(args.word)
    trace = derive(w, accelerated=args.accelerated)
    split_ok, split_at = splits_into_two_balanced(w)
    report = {
        "word": w,
        "balanced": is_balanced(w),
        "analytic": is_analytic_tangent(w),
        "tangent": is_tangent(w),
        "two_balanced": is_k_balanced(w, 2),
        "split": split_at if split_ok else None,
        "derivation": _derivation_steps(trace),
        "final": trace.final,
    }
    emit(report, args.format, args.out)
    return EXIT_OK


def cmd_derive(args) -> int:
    w = parse_word(args.word)
    trace = derive(w, accelerated=args.accelerated)
    steps = _derivation_steps(trace)
    report = {"word": w, "accelerated": args.accelerated, "steps": steps, "final": trace.final}
    emit(report, args.format, args.out, rows=steps if args.format != "json" else None)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    words = enumerate_words(args.lang, args.len)
    report = {"language": args.lang.name, "n": args.len, "count": len(words), "words": words}
    emit(report, args.format, args.out, rows=[{"word": w} for w in words] if args.format != "json" else None)
    return EXIT_OK


def cmd_bispecial(args) -> int:
    census = bispecial_census(args.lang, args.len)
    report = {
        "language": args.lang.name,
        "n": args.len,
        "sb": census.sb,
        "ordinary": census.ordinary_count,
        "wb": census.wb,
        "strong": census.strong,
        "ordinary_words": census.ordinary,
        "weak": census.weak,
        "thin_diagonal": {
            "strong": sum(map(is_thin_diagonal, census.strong)),
            "ordinary": sum(map(is_thin_diagonal, census.ordinary)),
            "weak": sum(map(is_thin_diagonal, census.weak)),
        },
    }
    rows = [{"word": w, "class": kind} for kind, group in
            (("strong", census.strong), ("ordinary", census.ordinary), ("weak", census.weak)) for w in group]
    emit(report, args.format, args.out, rows=rows if args.format != "json" else None)
    return EXIT_OK


def _closed_form(lang: LanguageId, variant: ClosedFormVariant, n: int) -> int:
    if lang == BALANCED:
        return lipatov_balanced(n)
    if lang == ANALYTIC:
        return prop3_analytic(n, variant)
    return prop3_tangent(n, variant)


def complexity_rows(lang: LanguageId, n_max: int, method: str) -> List[Dict[str, Any]]:
    rows: List[Dict[str, Any]] = [{"n": n} for n in range(n_max + 1)]
    if method in ("enum", "all"):
        for row, value in zip(rows, complexity_profile(lang, n_max).values):
            row["enum"] = value
    if lang.kind is LanguageKind.K_BALANCED:
        return rows
    if lang == BALANCED and method != "enum":
        for row in rows:
            row["lipatov"] = lipatov_balanced(row["n"])
        return rows
    if method in ("paper", "all"):
        for row in rows:
            row["paper"] = _closed_form(lang, ClosedFormVariant.PAPER_AS_PRINTED, row["n"])
    if method in ("candidate", "all"):
        for row in rows:
            row["candidate"] = _closed_form(lang, ClosedFormVariant.GEOMETRIC_CANDIDATE, row["n"])
    return rows


def cmd_complexity(args, parser) -> int:
    if args.lang.kind is LanguageKind.K_BALANCED and args.method in ("paper", "candidate"):
        parser.error(f"no closed form for {args.lang.name}; use --method enum")
    rows = complexity_rows(args.lang, args.max, args.method)
    emit({"language": args.lang.name, "method": args.method, "rows": rows}, args.format, args.out, rows=rows)
    return EXIT_OK


def cmd_reconcile(args) -> int:
    report = reconcile(args.max)
    emit(report.rows, args.format, args.out, rows=report.rows)
    stream = sys.stdout if args.out else sys.stderr
    for line in report.mismatches():
        print(f"mismatch {line}", file=stream)
    return EXIT_OK


def cmd_audit(args) -> int:
    report = inclusion_audit(args.max)
    rows = [{"n": n, **report.counts[n], "gap": report.gap_counts[n]} for n in sorted(report.counts)]
    emit(report, args.format, args.out, rows=rows if args.format != "json" else None)
    return EXIT_OK


def cmd_code_segment(args, parser) -> int:
    if not args.slalom:
        words = [segment_coding(args.p, args.q)]
    else:
        words = _slalom_words(args, parser)

    if args.format == "plain":
        write_output("\n".join(words), args.out)
    else:
        emit({"p": args.p, "q": args.q, "slalom": " ".join(args.slalom or []), "words": words},
             args.format, args.out, rows=[{"word": w} for w in words] if args.format != "json" else None)
    return EXIT_OK


def _slalom_words(args, parser) -> List[str]:
    mode = args.slalom[0]
    if mode == "all":
        words = slalom_bispecials(args.p, args.q)
    elif mode == "above":
        words = [analytic_slalom_pair(args.p, args.q)[0]]
    elif mode == "below":
        words = [analytic_slalom_pair(args.p, args.q)[1]]
    elif mode == "mask" and len(args.slalom) == 2:
        bits = args.slalom[1]
        points = LatticeSegment(args.p, args.q).interior_points
        if len(bits) != points or set(bits) - {"0", "1"}:
            parser.error(f"mask needs {points} bits of 0/1 (1 = over), got {bits!r}")
        mask = sum(1 << i for i, bit in enumerate(bits) if bit == "1")
        words = [slalom_bispecials(args.p, args.q)[mask]]
    else:
        parser.error("--slalom takes above, below, all or mask BITS")
    return words


def _curve(args) -> CurveSpec:
    return CurveSpec(CurveKind(args.kind), tuple(args.params), tuple(args.domain))


def cmd_code_curve(args) -> int:
    curve = _curve(args)
    grid = GridPlacement(args.mesh, tuple(args.offset))
    word = cutting_sequence(curve, grid)
    if args.format == "plain":
        write_output(word, args.out)
        return EXIT_OK
    emit({"curve": curve.describe(), "mesh": grid.mesh, "offset": list(grid.offset), "word": word},
         args.format, args.out)
    return EXIT_OK


def cmd_scan(args) -> int:
    report = multigrid_factor_scan(_curve(args), args.meshes, args.offsets, args.max_factor_len)
    rows = [
        {"mesh": entry.mesh, "offset": list(entry.offset), "word": entry.word,
         "factors": len(entry.factors),
         "tangent": sum(v.tangent for v in entry.factors),
         "analytic": sum(v.analytic for v in entry.factors)}
        for entry in report.entries
    ]
    emit(report, args.format, args.out, rows=rows if args.format != "json" else None)
    return EXIT_OK


def build_parser() -> ToolkitArgumentParser:
    parser = ToolkitArgumentParser(
        prog="tangent-words",
        description="Recognize, enumerate, count and generate tangent words",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s classify 100100010010010010001001000100
  %(prog)s complexity --lang tangent --max 8 --method all --format plain
  %(prog)s reconcile --max 8 --out reconcile.json
  %(prog)s code-segment 5 5 --slalom all
  %(prog)s code-curve --kind parabola --params 1,0,0 --domain 0.2,3.0 --mesh 1 --offset 0.5,0.5
        """
    )
    parser.add_argument('--verbose', '-v', action='store_true', help='Log progress at INFO level')
    sub = parser.add_subparsers(dest='command', required=True, parser_class=ToolkitArgumentParser)

    def add_output(p, default="json"):
        p.add_argument('--format', choices=['json', 'csv', 'plain'], default=default,
                       help=f'Output format (default: {default})')
        p.add_argument('--out', help='Write the report to this path instead of stdout')

    p = sub.add_parser('classify', help='Membership verdicts and derivation of a word')
    p.add_argument('word', help="Word over '0'/'1' (empty string allowed)")
    p.add_argument('--accelerated', action='store_true', help='Use accelerated desubstitution steps')
    add_output(p)

    p = sub.add_parser('derive', help='Desubstitution trace down to the derivated word')
    p.add_argument('word')
    p.add_argument('--accelerated', action='store_true')
    add_output(p)

    for name, help_text in (('enumerate', 'Members of a language of one length'),
                            ('bispecial', 'Bispecial census of one length')):
        p = sub.add_parser(name, help=help_text)
        p.add_argument('--lang', type=_language, required=True,
                       help='balanced, analytic, tangent or <k>balanced')
        p.add_argument('--len', type=int, required=True)
        add_output(p)

    p = sub.add_parser('complexity', help='Complexity table by enumeration and closed forms')
    p.add_argument('--lang', type=_language, required=True)
    p.add_argument('--max', type=int, required=True)
    p.add_argument('--method', choices=['enum', 'paper', 'candidate', 'all'], default='enum')
    add_output(p)

    p = sub.add_parser('reconcile', help='Closed forms against enumeration')
    p.add_argument('--max', type=int, required=True)
    add_output(p)

    p = sub.add_parser('audit', help='Inclusion chain audit')
    p.add_argument('--max', type=int, required=True)
    add_output(p)

    p = sub.add_parser('code-segment', help='Coding or slalom words of a lattice segment')
    p.add_argument('p', type=int)
    p.add_argument('q', type=int)
    p.add_argument('--slalom', nargs='+', metavar='MODE',
                   help='above, below, all, or mask BITS (bit i = 1: over the i-th point)')
    add_output(p, default="plain")

    for name, help_text in (('code-curve', 'Cutting sequence of a curve on one grid'),
                            ('scan', 'Factors of a curve over several grids')):
        p = sub.add_parser(name, help=help_text)
        p.add_argument('--kind', choices=[k.value for k in CurveKind], required=True)
        p.add_argument('--params', type=_reals, required=True, help='Comma-separated curve parameters')
        p.add_argument('--domain', type=_pair, required=True, help='A,B')
        if name == 'code-curve':
            p.add_argument('--mesh', type=float, default=1.0)
            p.add_argument('--offset', type=_pair, default=(0.0, 0.0), help='OX,OY')
            add_output(p, default="plain")
        else:
            p.add_argument('--meshes', type=_reals, required=True, help='Comma-separated meshes')
            p.add_argument('--offsets', type=int, default=3, help='Placements per mesh (default: 3)')
            p.add_argument('--max-factor-len', type=int, default=16)
            add_output(p)

    return parser


COMMANDS = {
    'classify': cmd_classify,
    'derive': cmd_derive,
    'enumerate': cmd_enumerate,
    'bispecial': cmd_bispecial,
    'reconcile': cmd_reconcile,
    'audit': cmd_audit,
    'code-curve': cmd_code_curve,
    'scan': cmd_scan,
}

PARSER_COMMANDS = {
    'complexity': cmd_complexity,
    'code-segment': cmd_code_segment,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI interface. Returns the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        level = logging.INFO if args.verbose else get_toolkit_config()["log_level"]
        logging.basicConfig(
            level=level,
            format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            datefmt='%H:%M:%S',
            stream=sys.stderr,
        )
        if args.command in PARSER_COMMANDS:
            return PARSER_COMMANDS[args.command](args, parser)
        return COMMANDS[args.command](args)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    except InvalidCharacter as e:
        print(f"InvalidCharacter: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (TangentWordsError, OSError) as e:
        logger.debug("Command failed", exc_info=True)
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as e:
        print(f"ValueError: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
