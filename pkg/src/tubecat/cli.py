"""Command line interface.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage or load errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from itertools import product

import numpy as np

from . import __version__
from .axioms import check_axioms, s_matrix
from .category_data import DEFAULT_TOLERANCE, builtin_names, get_category
from .diagram import DiagramSyntaxError, evaluate, evaluate_cylinder, parse_diagram
from .homspace import Morphism, hom_dim
from .reps import block_decompose_end
from .tube import tube_algebra, tube_algebra_dimension
from .verify import check_names, reports_to_csv, reports_to_json, reports_to_text, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _c(v) -> list:
    v = complex(v)
    return [float(v.real), float(v.imag)]


def _meta(cat, args) -> dict:
    return {'category': cat.name, 'version': __version__, 'seed': args.seed, 'tolerance': cat.tolerance}


def _emit(args, text: str):
    if args.out:
        with open(args.out, 'w', encoding='utf-8') as fh:
            fh.write(text if text.endswith('\n') else text + '\n')
    else:
        print(text)


def _word(cat, s: str) -> tuple:
    try:
        return cat.word(s)
    except KeyError as err:
        raise UsageError(str(err.args[0])) from None


def cmd_check(args, cat) -> int:
    selection = args.select.split(',') if args.select else None
    if selection:
        unknown = [s for s in selection if s not in check_names()]
        if unknown:
            raise UsageError(f'unknown checks {unknown}; available: {", ".join(check_names())}')
    axioms = check_axioms(cat, seed=args.seed)
    reports = run_suite(cat, selection, seed=args.seed)
    ok = axioms.passed and all(r.passed for r in reports)
    if args.format == 'json':
        meta = _meta(cat, args)
        meta['axioms'] = {'passed': axioms.passed,
                          'residuals': {k: float(v) for k, v in axioms.residuals.items()}}
        text = reports_to_json(reports, meta, timings=args.timings)
    elif args.format == 'csv':
        text = reports_to_csv(reports)
    else:
        head = [f'category {cat.name}  version {__version__}  seed {args.seed}  tolerance {cat.tolerance:g}',
                'axioms: ' + ('pass' if axioms.passed else 'FAIL ' + ', '.join(axioms.failures()))]
        text = '\n'.join(head + [reports_to_text(reports)])
    _emit(args, text)
    if not ok:
        failed = axioms.failures() + [r.name for r in reports if not r.passed]
        print('failed: ' + ', '.join(failed), file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_tube(args, cat) -> int:
    X, Y = _word(cat, args.X), _word(cat, args.Y)
    n = cat.num_labels
    by_r = {cat.labels[R]: hom_dim(cat, (R,) + X, Y + (R,)) for R in range(n)}
    by_ij = {f'{cat.labels[I]},{cat.labels[J]}': (hom_dim(cat, (I, J), Y), hom_dim(cat, X, (I, J)))
             for I, J in product(range(n), repeat=2)}
    left = sum(by_r.values())
    right = sum(a * b for a, b in by_ij.values())
    ok = left == right
    if args.format == 'json':
        doc = {**_meta(cat, args), 'X': args.X, 'Y': args.Y, 'sum_R': by_r,
               'sum_IJ': {k: {'hom_IJ_Y': a, 'hom_X_IJ': b} for k, (a, b) in by_ij.items() if a * b},
               'tube_hom_dim': left, 'block_total': right, 'equal': ok}
        text = json.dumps(doc, indent=1)
    elif args.format == 'csv':
        rows = ['kind,label,value'] + [f'R,{k},{v}' for k, v in by_r.items()]
        rows += [f'IJ,"{k}",{a * b}' for k, (a, b) in by_ij.items() if a * b]
        text = '\n'.join(rows)
    else:
        lines = [f'category {cat.name}  X=[{args.X}]  Y=[{args.Y}]', 'R        dim Hom(RX, YR)']
        lines += [f'{k:<8} {v}' for k, v in by_r.items()]
        lines.append('I,J      dim Hom(IJ,Y) * dim Hom(X,IJ)')
        lines += [f'{k:<8} {a} * {b}' for k, (a, b) in by_ij.items() if a * b]
        lines.append(f'{left} = {right}' if ok else f'{left} != {right}')
        text = '\n'.join(lines)
    _emit(args, text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_idempotents(args, cat) -> int:
    X = _word(cat, args.X)
    bd = block_decompose_end(cat, X)
    ok = bd.passed()
    if args.format == 'json':
        text = json.dumps({**_meta(cat, args), **bd.to_dict(), 'passed': ok}, indent=1)
    else:
        lines = [f'category {cat.name}  X=[{args.X}]', 'I,J      size  idempotent components']
        for blk in bd.to_dict()['blocks']:
            comps = ' '.join(f'{R}:{np.round(complex(*v[0]), 10)}' if len(v) == 1 else f'{R}:<{len(v)}>'
                             for R, v in blk['idempotent'].items())
            lines.append(f'{blk["I"] + "," + blk["J"]:<8} {blk["size"]:<5} {comps}')
        lines += [f'{k}: {v:.3e}' for k, v in bd.residuals.items()]
        text = '\n'.join(lines)
    _emit(args, text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_tube_algebra(args, cat) -> int:
    ta = tube_algebra(cat)
    doc = {**_meta(cat, args), **ta.to_dict(),
           'associativity_residual': ta.associativity_residual(), 'unit_residual': ta.unit_residual()}
    text = json.dumps(doc, indent=1)
    if args.out:
        try:
            _emit(args, text)
        except OSError as err:
            print(f'error: cannot write {args.out}: {err}', file=sys.stderr)
            return EXIT_USAGE
    elif args.format == 'json':
        print(text)
    ok = (ta.dimension == tube_algebra_dimension(cat)
          and max(ta.associativity_residual(), ta.unit_residual()) <= cat.tolerance)
    print(f'tube algebra of {cat.name}: dimension {ta.dimension}',
          file=sys.stderr if args.format == 'json' and not args.out else sys.stdout)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_eval(args, cat) -> int:
    try:
        with open(args.diagram, encoding='utf-8') as fh:
            text = fh.read()
    except OSError as err:
        raise UsageError(f'cannot read {args.diagram}: {err}') from None
    bindings = {}
    if args.bindings:
        try:
            with open(args.bindings, encoding='utf-8') as fh:
                raw = json.load(fh)
            bindings = {name: Morphism.from_dict(cat, doc) for name, doc in raw.items()}
        except (OSError, ValueError, KeyError) as err:
            raise UsageError(f'cannot load bindings: {err}') from None
    d = parse_diagram(text, cat, bindings)
    m = evaluate_cylinder(cat, d, bindings) if d.glue is not None else evaluate(cat, d, bindings)
    if args.format == 'json':
        out = json.dumps({**_meta(cat, args), 'morphism': m.to_dict()}, indent=1)
    else:
        lines = [f'[{cat.word_name(m.source)}] -> [{cat.word_name(m.target)}]']
        for c, b in sorted(m.blocks.items()):
            lines.append(f'charge {cat.labels[c]}:')
            lines.append(np.array2string(np.round(b, 12), precision=10, suppress_small=True))
        out = '\n'.join(lines)
    _emit(args, out)
    return EXIT_OK


def cmd_s_matrix(args, cat) -> int:
    S = s_matrix(cat)
    if args.format == 'json':
        text = json.dumps({**_meta(cat, args), 'labels': list(cat.labels),
                           'S': [[_c(v) for v in row] for row in S],
                           'qdim': [_c(v) for v in cat.qdim], 'global_dim': _c(cat.global_dim)}, indent=1)
    elif args.format == 'csv':
        rows = ['a,b,re,im'] + [f'{cat.labels[a]},{cat.labels[b]},{S[a, b].real!r},{S[a, b].imag!r}'
                                for a, b in product(range(cat.num_labels), repeat=2)]
        text = '\n'.join(rows)
    else:
        text = f'S-matrix of {cat.name} (labels {", ".join(cat.labels)})\n' + \
            np.array2string(np.round(S, 10), precision=10, suppress_small=True)
    _emit(args, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--cat', default='fibonacci',
                        help=f'builtin category ({", ".join(builtin_names())}, z<odd n>) or path to a JSON file')
    common.add_argument('--tol', type=float, default=DEFAULT_TOLERANCE, help='numerical tolerance')
    common.add_argument('--seed', type=int, default=0, help='seed of the random instances')
    common.add_argument('--out', default=None, help='write the report to this file')
    common.add_argument('--format', choices=['json', 'csv', 'text'], default='text')
    p = argparse.ArgumentParser(prog='tubecat', parents=[common],
                                description='Tube categories of modular tensor categories.')
    p.add_argument('--version', action='version', version=f'tubecat {__version__}')
    sub = p.add_subparsers(dest='command', required=True)
    c = sub.add_parser('check', parents=[common], help='verify axioms and all identities')
    c.add_argument('--select', default='', help='comma separated check names')
    c.add_argument('--timings', action='store_true', help='include wall times in JSON output')
    t = sub.add_parser('tube', parents=[common], help='dimension of Hom_TC(X, Y) both ways')
    t.add_argument('X', help='comma separated labels, "" for the unit')
    t.add_argument('Y')
    i = sub.add_parser('idempotents', parents=[common], help='block decomposition of End_TC(X)')
    i.add_argument('X')
    sub.add_parser('tube-algebra', parents=[common], help='export tube algebra structure constants')
    e = sub.add_parser('eval', parents=[common], help='evaluate a diagram file')
    e.add_argument('diagram')
    e.add_argument('--bindings', default=None, help='JSON file: box name -> {source, target, coeffs}')
    sub.add_parser('s-matrix', parents=[common], help='print the S-matrix')
    return p


_COMMANDS = {
    'check': cmd_check,
    'tube': cmd_tube,
    'idempotents': cmd_idempotents,
    'tube-algebra': cmd_tube_algebra,
    'eval': cmd_eval,
    's-matrix': cmd_s_matrix,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_USAGE if err.code else EXIT_OK
    if not args.tol > 0:
        print('error: tolerance must be positive', file=sys.stderr)
        return EXIT_USAGE
    try:
        cat = get_category(args.cat, args.tol)
    except (KeyError, ValueError, OSError) as err:
        msg = err.args[0] if isinstance(err, KeyError) and err.args else err
        print(f'error: cannot load category {args.cat!r}: {msg}', file=sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args, cat)
    except (UsageError, DiagramSyntaxError, KeyError, ValueError) as err:
        msg = err.args[0] if isinstance(err, KeyError) and err.args else err
        print(f'error: {msg}', file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
