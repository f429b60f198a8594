"""
Command-Line Interface
Batch access to the library: NCF normalization and analysis, count-table
recognition, exhaustive enumeration and hardness instances.

Exit codes: 0 success, 1 negative verdict, 2 usage or input error,
3 capacity exceeded, 4 internal invariant violated.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

from . import hardness, ncf, oracle, symtable
from .config import Limits, get_limits
from .errors import NcfSymError, ParseError
from .monitoring import log_error_safely, operation_monitor, setup_logging
from .truthtable import SymmetryPartition, format_truth_table, parse_truth_table

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


def _read_input(path: str) -> str:
    if path == '-':
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from e


def _load_ncf(path: str) -> ncf.NcfRepr:
    return ncf.parse_ncf(_read_input(path))


def _layer_lines(decomposition: ncf.LayerDecomposition) -> List[str]:
    lines = []
    for index, layer in enumerate(decomposition.layers, 1):
        tests = ' '.join(f"x{v}={int(a)}" for v, a in zip(layer.variables, layer.canalyzing_values))
        lines.append(f"  layer {index} -> {int(layer.canalyzed)}: {tests}")
    return lines


def cmd_normalize(args, limits: Limits) -> int:
    result = ncf.normalize(_load_ncf(args.input), canonical=args.canonical)
    print(ncf.render_ncf(result), end='')
    return EXIT_OK


def cmd_analyze(args, limits: Limits) -> int:
    original = _load_ncf(args.input)
    normalized = ncf.normalize(original)
    decomposition = ncf.layers(normalized)
    partition = ncf.symmetry_partition_ncf(normalized)
    strong = ncf.is_strongly_asymmetric_ncf(normalized)

    print(f"variables: {normalized.num_vars}")
    print(f"layers (default-normalized): {decomposition.q}")
    for line in _layer_lines(decomposition):
        print(line)
    print(f"symmetry groups: {partition}")
    print(f"symmetry level: {partition.level}")
    print(f"strongly asymmetric: {'yes' if strong else 'no'}")
    if normalized.num_vars <= limits.max_table_vars:
        print(f"truth table: {format_truth_table(ncf.to_truth_table(original))}")
    print(f"n={normalized.num_vars} q={decomposition.q} r1={decomposition.r1} "
          f"r2={decomposition.r2} level={partition.level} strong={int(strong)}")
    return EXIT_OK


def cmd_eval(args, limits: Limits) -> int:
    try:
        assignment = int(args.assignment, 0)
    except ValueError:
        raise ParseError(f"assignment must be an integer index, got {args.assignment!r}") from None
    print(int(ncf.evaluate_ncf(_load_ncf(args.input), assignment)))
    return EXIT_OK


def cmd_to_table(args, limits: Limits) -> int:
    representation = _load_ncf(args.input)
    limits.check('max_table_vars', representation.num_vars, 'to-table')
    print(format_truth_table(ncf.to_truth_table(representation)))
    return EXIT_OK


def cmd_inspect(args, limits: Limits) -> int:
    tt = parse_truth_table(_read_input(args.input), limits)
    partition = oracle.symmetry_partition_bf(tt, limits)
    triples = oracle.is_canalyzing_bf(tt, limits)

    print(f"truth table: {format_truth_table(tt)}")
    print(f"symmetry groups: {partition}")
    print(f"symmetry level: {partition.level}")
    if triples:
        print("canalyzing: " + ' '.join(f"x{v}:{int(a)}->{int(b)}" for v, a, b in triples))
    else:
        print("canalyzing: none")

    ncf_flag = '-'
    if tt.num_vars <= limits.max_ncf_bf_vars:
        representation = oracle.is_ncf_bf(tt, limits)
        ncf_flag = str(int(representation is not None))
        if representation is not None:
            print("nested canalyzing: yes")
            for line in ncf.render_ncf(ncf.normalize(representation)).splitlines():
                print(f"  {line}")
        else:
            print("nested canalyzing: no")
    else:
        print(f"nested canalyzing: skipped (n > {limits.max_ncf_bf_vars})")

    strong_flag = '-'
    if tt.num_vars <= limits.max_permutation_vars:
        verdict = oracle.is_strongly_asymmetric_bf(tt, limits)
        strong_flag = str(int(verdict.strongly_asymmetric))
        if verdict.strongly_asymmetric:
            print("strongly asymmetric: yes")
        else:
            print(f"strongly asymmetric: no (invariant under {verdict.witness})")
    else:
        print(f"strongly asymmetric: skipped (n > {limits.max_permutation_vars})")

    print(f"n={tt.num_vars} level={partition.level} canalyzing={len(triples)} "
          f"ncf={ncf_flag} strong={strong_flag}")
    return EXIT_OK


def cmd_recognize(args, limits: Limits) -> int:
    table = symtable.parse_symtable(_read_input(args.input), limits)
    partition = SymmetryPartition.contiguous(table.group_sizes)
    stats = symtable.RecognitionStats()
    result = symtable.recognize_ncf(table, partition, stats)
    logger.info(f"Recognizer examined {stats.row_visits} rows over {stats.iterations} iterations")
    if isinstance(result, symtable.NotNcf):
        print(str(result))
        return EXIT_NEGATIVE
    print(ncf.render_ncf(ncf.normalize(result)), end='')
    return EXIT_OK


def cmd_enumerate(args, limits: Limits) -> int:
    report = oracle.enumerate_ncfs(args.n, jobs=args.jobs, limits=limits)
    print(report.render_text())
    status = EXIT_OK
    if args.check:
        expected = ncf.count_strongly_asymmetric(args.n)
        if report.strongly_asymmetric_count == expected:
            print(f"  check: strong count matches n!*2^(n-1) = {expected}")
        else:
            print(f"  check: MISMATCH, expected n!*2^(n-1) = {expected}")
            status = EXIT_NEGATIVE
        layered = ncf.count_strongly_asymmetric_layered(args.n)
        agreement = 'matches' if report.strongly_asymmetric_count == layered else 'MISMATCH'
        print(f"  check: strong count {agreement} the count over all layer patterns = {layered}")
    print(report.machine_line())
    return status


def cmd_hardness(args, limits: Limits) -> int:
    base = hardness.parse_dimacs(_read_input(args.input))
    instance = hardness.reduce(base, args.rho)

    if args.action == 'gen':
        n, rho = base.num_vars, args.rho
        comment = (f"reduced from {n}-variable formula, rho={rho}\n"
                   f"X=1..{n} Y={instance.y_block.start}..{instance.y_block.stop - 1} "
                   f"Z={instance.z_block.start}..{instance.z_block.stop - 1}")
        text = hardness.render_dimacs(instance.result, comment=comment)
        if args.output:
            Path(args.output).write_text(text)
            logger.info(f"Wrote reduced formula to {args.output}")
        else:
            print(text, end='')
        return EXIT_OK

    verdict = hardness.verify_claims(instance, limits)
    print(f"g satisfiable: {'yes' if verdict.g_satisfiable else 'no'}")
    print(f"f variables: {instance.result.num_vars}")
    print(f"f symmetry groups: {verdict.partition}")
    print(verdict.machine_line())
    return EXIT_OK if verdict.claims_hold else EXIT_NEGATIVE


def _log_operation_stats() -> None:
    for name in operation_monitor.operations():
        stats = operation_monitor.get_operation_stats(name)
        logger.info(f"{name}: {stats['call_count']} calls, {stats['error_count']} failed, "
                    f"avg {stats['avg_ms']:.1f} ms, max {stats['max_ms']:.1f} ms")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='ncfsym',
        description='Symmetry analysis and recognition of nested canalyzing functions')
    parser.add_argument('--verbose', '-v', action='count', default=0,
                        help='Log progress to stderr (-vv for debug output)')
    parser.add_argument('--log-file',
                        help='Also write logs to this file')
    parser.add_argument('--max-n', type=int,
                        help='Variable cap for enumeration (at most 8) and permutation search (at most 12)')

    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True

    p = sub.add_parser('normalize', help='Print the default-normalized representation')
    p.add_argument('input', help="NCF file ('-' for stdin)")
    p.add_argument('--canonical', action='store_true',
                   help='Also sort the rules of each layer by variable')
    p.set_defaults(handler=cmd_normalize)

    p = sub.add_parser('analyze', help='Report layers, symmetry groups and level of an NCF')
    p.add_argument('input', help="NCF file ('-' for stdin)")
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser('eval', help='Evaluate an NCF at an assignment index')
    p.add_argument('input', help="NCF file ('-' for stdin)")
    p.add_argument('assignment', help='Assignment index, bit j-1 holds x_j (0x/0b prefixes allowed)')
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser('to-table', help='Print the truth table of an NCF')
    p.add_argument('input', help="NCF file ('-' for stdin)")
    p.set_defaults(handler=cmd_to_table)

    p = sub.add_parser('inspect', help='Brute-force report for an n=<k> tt=<hex> table')
    p.add_argument('input', help="truth table file ('-' for stdin)")
    p.set_defaults(handler=cmd_inspect)

    p = sub.add_parser('recognize', help='Decide whether a count table is an NCF')
    p.add_argument('input', help="count-table file ('-' for stdin)")
    p.set_defaults(handler=cmd_recognize)

    p = sub.add_parser('enumerate', help='Enumerate all NCFs of n variables')
    p.add_argument('n', type=int, help='Number of variables')
    p.add_argument('--check', action='store_true',
                   help='Compare the strongly asymmetric count with n!*2^(n-1)')
    p.add_argument('--jobs', type=int, default=1,
                   help='Worker processes (default: 1)')
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser('hardness', help='Symmetry-level gap instances from CNF formulas')
    p.add_argument('action', choices=['gen', 'verify'])
    p.add_argument('input', help="DIMACS CNF file ('-' for stdin)")
    p.add_argument('--rho', type=int, default=1, help='Gap parameter (default: 1)')
    p.add_argument('--output', '-o', help='gen: write the reduced formula here')
    p.set_defaults(handler=cmd_hardness)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command and return its exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    level = logging.WARNING
    if args.verbose == 1:
        level = logging.INFO
    elif args.verbose > 1:
        level = logging.DEBUG
    setup_logging(level, args.log_file)
    load_dotenv()
    operation_monitor.reset()

    try:
        limits = get_limits()
        if args.max_n is not None:
            limits = limits.with_cap(args.max_n)
        if getattr(args, 'jobs', 1) < 1:
            raise ParseError(f"--jobs must be at least 1, got {args.jobs}")
        return args.handler(args, limits)
    except NcfSymError as e:
        if e.exit_code > EXIT_USAGE:
            log_error_safely(e, context=args.command)
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    finally:
        if args.verbose:
            _log_operation_stats()


if __name__ == "__main__":
    sys.exit(main())
