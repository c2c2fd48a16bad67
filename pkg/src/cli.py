"""
Command Line Interface
gen, verify, classify, census and iso subcommands over the atlas library.
"""

import argparse
import json
import logging
import sys
from typing import Optional, Sequence, TextIO, Tuple

from config.atlas_config import configure_logging, get_default_budget
from src.autgroup import are_isomorphic
from src.classify import census, census_frame, classify, verify_instance
from src.errors import AtlasError
from src.families import Family, FamilyInstance, build_family
from src.graph_core import Graph, from_graph6, to_dot, to_graph6

logger = logging.getLogger(__name__)

FAMILY_HELP = ', '.join(f.value for f in Family if f is not Family.GRAPH6)


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='bicirculant-atlas',
                                     description='Census of connected 2-arc-transitive bicirculants')
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--budget', type=_positive, default=None,
                        help='group elements to enumerate in witness searches (default: $ATLAS_BUDGET or 2000000)')
    common.add_argument('--out', default=None, help='write output to PATH instead of stdout')
    common.add_argument('--verbose', action='store_true', help='log progress at INFO level')
    common.add_argument('--debug', action='store_true', help='log at DEBUG level')
    sub = parser.add_subparsers(dest='command', required=True)

    gen = sub.add_parser('gen', parents=[common], help='print a family member')
    gen.add_argument('family', help=f"one of: {FAMILY_HELP}")
    gen.add_argument('params', nargs='*')
    gen.add_argument('--format', choices=('graph6', 'dot', 'json'), default='graph6')

    verify = sub.add_parser('verify', parents=[common], help='verify a family member or graph6 input')
    verify.add_argument('family', nargs='?')
    verify.add_argument('params', nargs='*')
    verify.add_argument('--g6', default=None)

    cls = sub.add_parser('classify', parents=[common], help='classify a graph6 input (stdin if --g6 is absent)')
    cls.add_argument('--g6', default=None)

    cen = sub.add_parser('census', parents=[common], help='deduplicated census up to an order bound')
    cen.add_argument('--max-vertices', type=_positive, required=True)
    cen.add_argument('--format', choices=('json', 'csv'), default='json')
    cen.add_argument('--workers', type=_positive, default=1)
    cen.add_argument('--progress', action='store_true')

    iso = sub.add_parser('iso', parents=[common], help='test two graph6 inputs for isomorphism')
    iso.add_argument('--g6', action='append', default=[])
    return parser


def _read_graph6(value: Optional[str], stdin: TextIO) -> Graph:
    if value is None or value == '-':
        lines = [line.strip() for line in stdin.read().splitlines() if line.strip()]
        if not lines:
            raise AtlasError("no graph6 input on stdin")
        value = lines[0]
    return from_graph6(value)


def _instance_json(fi: FamilyInstance) -> dict:
    return {
        'family': fi.family_id.value,
        'params': [str(p) for p in fi.params],
        'label': fi.label,
        'order': fi.graph.n,
        'graph6': to_graph6(fi.graph),
        'edges': [list(e) for e in fi.graph.edges()],
        'witness': str(fi.witness) if fi.witness is not None else None,
    }


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + '\n'


def _run(args: argparse.Namespace, stdin: TextIO) -> Tuple[int, str]:
    budget = args.budget if args.budget is not None else get_default_budget()

    if args.command == 'gen':
        fi = build_family(args.family, args.params)
        if args.format == 'graph6':
            return 0, to_graph6(fi.graph) + '\n'
        if args.format == 'dot':
            return 0, to_dot(fi.graph, name=fi.family_id.name)
        return 0, _dump(_instance_json(fi))

    if args.command == 'verify':
        if (args.family is None) == (args.g6 is None):
            raise AtlasError("verify takes either a family with parameters or --g6, not both")
        if args.g6 is not None:
            fi = FamilyInstance(Family.GRAPH6, (), from_graph6(args.g6))
        else:
            fi = build_family(args.family, args.params)
        entry = verify_instance(fi, budget)
        return (0 if entry.verified else 1), _dump(entry.to_dict())

    if args.command == 'classify':
        report = classify(_read_graph6(args.g6, stdin), budget)
        return (0 if report.verdict == 'census_match' else 1), _dump(report.to_dict())

    if args.command == 'census':
        entries = census(args.max_vertices, budget, workers=args.workers, progress=args.progress)
        if args.format == 'csv':
            return 0, census_frame(entries).to_csv(index=False)
        return 0, _dump([entry.to_dict() for entry in entries])

    if args.command == 'iso':
        if len(args.g6) != 2:
            raise AtlasError(f"iso takes exactly two --g6 arguments, got {len(args.g6)}")
        a, b = (from_graph6(text) for text in args.g6)
        mapping = are_isomorphic(a, b)
        if mapping is None:
            return 1, 'non-isomorphic\n'
        return 0, _dump({'isomorphic': True, 'mapping': list(mapping.images), 'cycles': str(mapping)})

    raise AtlasError(f"unknown command {args.command!r}")


def run_cli(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None,
            stdin: Optional[TextIO] = None) -> int:
    """
    Run one command and return its exit status.

    Returns:
        0 on success, 1 on a rejection or non-isomorphic pair, 2 on usage errors
    """
    stdout = stdout or sys.stdout
    stdin = stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return int(exc.code or 0)

    level = logging.DEBUG if args.debug else logging.INFO if args.verbose else logging.WARNING
    configure_logging(level)
    try:
        status, text = _run(args, stdin)
    except AtlasError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, 'w', encoding='utf-8') as handle:
            handle.write(text)
        logger.info(f"📁 wrote {args.out}")
    else:
        stdout.write(text)
    return status


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))
