"""Batch front door: parse a context, dispatch one command, render output.

Exit codes: 0 success, 2 parse error, 3 domain error (invalid input,
failed validation), 4 verification mismatch.
"""

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import counting, exports, matchings, serialize, snakegraph, tpath, typea
from .errors import LPSnakeError
from .oracle import OracleCache
from .symbolic import rf_equal
from .trees import validate_nested_collection

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_MISMATCH = 4


@dataclass
class JobSpec:
    command: str
    context_path: str = None
    context_data: dict = None
    target: tuple = ()
    arc: tuple = None
    check: bool = False
    strict: bool = False
    fmt: str = 'text'
    seed: int = 0
    out: object = field(default_factory=lambda: sys.stdout)


def _load_context(job):
    if job.context_data is not None:
        data = job.context_data
    else:
        if job.context_path in (None, '-'):
            data = json.load(sys.stdin)
        else:
            with open(job.context_path) as fh:
                data = json.load(fh)
    job.context_data = data
    tree = serialize.tree_from_json(data)
    report = validate_nested_collection(
        tree, [frozenset(s) for s in data['nested_collection']])
    return tree, report, data


def run(job):
    """Execute one JobSpec; deterministic for fixed inputs and seed."""
    out = job.out
    try:
        tree, report, data = _load_context(job)
    except (KeyError, ValueError, OSError, json.JSONDecodeError) as exc:
        print('parse error: %s' % exc, file=out)
        return EXIT_PARSE

    if job.command == 'validate':
        print(serialize.dumps(report.to_json()), file=out)
        return EXIT_OK if report.is_maximal else EXIT_DOMAIN

    try:
        ctx = serialize.context_from_json(data)
    except LPSnakeError as exc:
        print('domain error: %s' % exc, file=out)
        return EXIT_DOMAIN

    try:
        return _dispatch(job, ctx, out)
    except LPSnakeError as exc:
        print('domain error: %s' % exc, file=out)
        return EXIT_DOMAIN


def _dispatch(job, ctx, out):
    target = frozenset(job.target)
    if job.command == 'expand':
        graph = snakegraph.build_snake_graph(ctx, target)
        found = matchings.enumerate_admissible(graph)
        if job.fmt == 'json':
            print(serialize.dumps(serialize.matchings_to_json(graph, found)),
                  file=out)
        else:
            print('matchings: %d' % len(found), file=out)
            print('chi = %s' % matchings.chi(graph, found), file=out)
        return EXIT_OK

    if job.command == 'enumerate':
        graph = snakegraph.build_snake_graph(ctx, target)
        found = matchings.enumerate_admissible(graph)
        print(serialize.dumps(serialize.matchings_to_json(graph, found)),
              file=out)
        return EXIT_OK

    if job.command == 'count':
        if job.check:
            det, enum = counting.count_matchings(ctx, target, check=True)
            status = 'ok' if det == enum else 'MISMATCH'
            print('det=%d enum=%d %s' % (det, enum, status), file=out)
            return EXIT_OK if det == enum else EXIT_MISMATCH
        print('det=%d' % counting.count_matchings(ctx, target), file=out)
        return EXIT_OK

    if job.command == 'oracle':
        cache = OracleCache(ctx)
        print('Y_S = %s' % cache.y_set(target), file=out)
        return EXIT_OK

    if job.command == 'verify':
        cache = OracleCache(ctx)
        result = cache.verify_expansion(target)
        print('verify %s: %s' % (sorted(target), 'ok' if result.ok else
                                 'MISMATCH'), file=out)
        print('expansion = %s' % result.expansion, file=out)
        print('oracle    = %s' % result.oracle_value, file=out)
        return EXIT_OK if result.ok else EXIT_MISMATCH

    if job.command == 'tpath':
        graph = snakegraph.build_snake_graph(ctx, target)
        found = matchings.enumerate_admissible(graph)
        paths = [tpath.matching_to_tpath(graph, p, check=False) for p in found]
        if job.fmt == 'tikz':
            for alpha in paths:
                print(exports.tpath_to_tikz(alpha), file=out)
        else:
            for p, alpha in zip(found, paths):
                report = tpath.validate_tpath(ctx, target, alpha,
                                              strict=job.strict)
                print('edges=%s weight=%s valid=%s'
                      % (list(p), alpha.weight(), report.ok), file=out)
        return EXIT_OK

    if job.command == 'export':
        graph = snakegraph.build_snake_graph(ctx, target)
        if job.fmt == 'dot':
            print(exports.graph_to_dot(graph), file=out)
        elif job.fmt == 'tikz':
            print(exports.graph_to_tikz(graph), file=out)
        else:
            print(serialize.dumps(serialize.graph_to_json(graph)), file=out)
        return EXIT_OK

    if job.command == 'typea':
        x, y = job.arc
        polygon, tri, gamma, interval = typea.path_lp_bridge(ctx, x, y)
        if job.fmt == 'tikz':
            print(exports.polygon_to_tikz(polygon, tri, gamma), file=out)
            return EXIT_OK
        expansion, interval = typea.bridge_expansion(ctx, x, y)
        print('interval set: %s' % sorted(interval), file=out)
        print('expansion = %s' % expansion, file=out)
        if job.check and interval:
            graph = snakegraph.build_snake_graph(ctx, interval)
            same = rf_equal(expansion, matchings.chi(graph))
            print('matches chi: %s' % same, file=out)
            return EXIT_OK if same else EXIT_MISMATCH
        return EXIT_OK

    print('unknown command %r' % job.command, file=out)
    return EXIT_PARSE


def build_parser():
    parser = argparse.ArgumentParser(
        prog='lpsnake',
        description='snake-graph expansions for graph LP algebras on trees')
    parser.add_argument('--context', default='-',
                        help='context JSON file, or - for stdin')
    parser.add_argument('--format', default='text',
                        choices=['text', 'json', 'dot', 'tikz'])
    parser.add_argument('--seed', type=int, default=0)
    parser.add_argument('--strict', action='store_true')
    parser.add_argument('--check', action='store_true')
    sub = parser.add_subparsers(dest='command', required=True)
    for name in ('expand', 'count', 'verify', 'oracle', 'enumerate', 'tpath',
                 'export'):
        p = sub.add_parser(name)
        p.add_argument('target', nargs='+', type=int,
                       help='vertex subset, e.g. 3 4 5 6 8 0')
    sub.add_parser('validate')
    p = sub.add_parser('typea')
    p.add_argument('arc', nargs=2, type=int, metavar=('X', 'Y'),
                   help='extended-path endpoints of the polygon arc')
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    job = JobSpec(command=args.command, context_path=args.context,
                  target=tuple(getattr(args, 'target', ())),
                  arc=tuple(args.arc) if hasattr(args, 'arc') else None,
                  check=args.check, strict=args.strict, fmt=args.format,
                  seed=args.seed)
    return run(job)


if __name__ == '__main__':
    sys.exit(main())
