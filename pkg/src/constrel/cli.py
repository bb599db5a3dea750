"""Command-line interface.

Exit codes: 0 success, 1 domain error (bad input, store problems,
unverifiable math), 2 usage error.  Every subcommand takes --json for
machine-readable output with a stable schema.  The default store directory
comes from $CONSTREL_STORE when --store is not given.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import mpmath as mp

from .convergence import classify, plan_depth, predict_error_digits
from .ctransform import CTransform, eval_to_depth, proxy_decimal_digits
from .engine import (EngineConfig, experiment_csv, experiment_table,
                     find_relation, roi_experiment)
from .errors import ConstrelError
from .hypergraph import Hypergraph
from .identify import IdentifyRequest, identify
from .numerics import DEFAULT_EVAL_PREC, Real
from .polynomials import RationalFunc
from .search import SearchJob, run_search
from .seeds import seed_store
from .values import evaluate_ctransform


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConstrelError as exc:
        print(f'error: {exc}', file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError, OSError) as exc:
        print(f'error: {exc}', file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='constrel',
        description='Evaluate canonical continued fractions, search for '
                    'integer relations between constants, and maintain a '
                    'hypergraph of the findings.')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('eval', help='evaluate a C[...] fraction')
    p.add_argument('--ctransform', required=True, metavar='TEXT',
                   help='fraction in C[(num)/(den)] notation')
    p.add_argument('--depth', type=int, help='evaluation depth')
    p.add_argument('--digits', type=int,
                   help='target decimal digits (depth is planned)')
    p.add_argument('--prec', type=int, default=DEFAULT_EVAL_PREC,
                   help='working precision in bits (default %(default)s)')
    p.add_argument('--force', action='store_true',
                   help='evaluate even when classified non-convergent')
    p.add_argument('--json', action='store_true', help='machine output')
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser('classify', help='convergence class and depth planning')
    p.add_argument('--ctransform', required=True, metavar='TEXT')
    p.add_argument('--depth', type=int, help='predict digits at this depth')
    p.add_argument('--digits', type=int, help='recommend a depth for this many digits')
    p.add_argument('--json', action='store_true', help='machine output')
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser('pslq', help='integer relation on a list of values')
    p.add_argument('--values', metavar='FILE',
                   help='file with one decimal value per line')
    p.add_argument('--value', action='append', default=[], metavar='DECIMAL',
                   help='inline value (repeatable)')
    p.add_argument('--prec', type=int, default=0,
                   help='working precision in bits (default: from input digits)')
    p.add_argument('--tolerance', default='0.75',
                   help='success tolerance as a fraction of precision')
    p.add_argument('--backend', choices=['pslq', 'lll'], default='pslq')
    p.add_argument('--json', action='store_true', help='machine output')
    p.set_defaults(func=_cmd_pslq)

    p = sub.add_parser('search', help='run an enrichment search job')
    p.add_argument('--job', required=True, metavar='JOB.json')
    p.add_argument('--store', metavar='DIR', default=None)
    p.add_argument('--json', action='store_true', help='machine output')
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser('identify', help='identify values against the store')
    p.add_argument('--value', action='append', default=[], metavar='DECIMAL')
    p.add_argument('--ctransform', action='append', default=[], metavar='TEXT')
    p.add_argument('--store', '--db', dest='store', metavar='DIR', default=None)
    p.add_argument('--upload', action='store_true',
                   help='commit unknown fractions and findings to the store')
    p.add_argument('--reconfirm', action='store_true',
                   help='re-run at ten times the digit budget')
    p.add_argument('--d', type=int, default=2, help='max polynomial degree')
    p.add_argument('--o', type=int, default=1, help='max polynomial order')
    p.add_argument('--tags', default=None,
                   help='comma-separated tag filter for store candidates')
    p.add_argument('--json', action='store_true', help='machine output')
    p.set_defaults(func=_cmd_identify)

    p = sub.add_parser('export-dot', help='render the store as DOT text')
    p.add_argument('--store', metavar='DIR', default=None)
    p.add_argument('-o', '--output', metavar='FILE', default=None)
    p.set_defaults(func=_cmd_export_dot)

    p = sub.add_parser('reverify', help='recheck every edge at doubled precision')
    p.add_argument('--store', metavar='DIR', default=None)
    p.add_argument('--factor', type=int, default=2)
    p.add_argument('--json', action='store_true', help='machine output')
    p.set_defaults(func=_cmd_reverify)

    p = sub.add_parser('stats', help='store summary')
    p.add_argument('--store', metavar='DIR', default=None)
    p.add_argument('--json', action='store_true', help='machine output')
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser('seed', help='populate a store with the bundled constants')
    p.add_argument('--store', metavar='DIR', default=None)
    p.add_argument('--prec', type=int, default=1024,
                   help='verification precision in bits (default %(default)s)')
    p.add_argument('--constants-only', action='store_true',
                   help='skip the fixture relations')
    p.add_argument('--json', action='store_true', help='machine output')
    p.set_defaults(func=_cmd_seed)

    p = sub.add_parser('roi-experiment',
                       help='RoI statistics of relation searches on random inputs')
    p.add_argument('--backend', choices=['pslq', 'lll', 'both'], default='pslq')
    p.add_argument('--n', default='5,10,15,20',
                   help='comma-separated input counts (default %(default)s)')
    p.add_argument('--trials', type=int, default=100)
    p.add_argument('--precision-rule', default='50+5*n', metavar='EXPR',
                   help='working precision as an expression in n (default %(default)s)')
    p.add_argument('--tolerance', default='0.65')
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--csv', metavar='FILE', default=None)
    p.add_argument('--plot', metavar='FILE', default=None,
                   help='write a PNG errorbar plot')
    p.add_argument('--json', action='store_true', help='machine output')
    p.set_defaults(func=_cmd_roi_experiment)
    return parser


def _store_dir(args) -> str:
    path = args.store or os.environ.get('CONSTREL_STORE')
    if not path:
        raise ConstrelError('no store given: pass --store DIR or set CONSTREL_STORE')
    return path


def _emit(args, obj: dict, text: str) -> int:
    if getattr(args, 'json', False):
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text)
    return 0


def _cmd_eval(args) -> int:
    ct = CTransform.from_text(args.ctransform)
    cls = classify(ct.f.shifted(ct.shift))
    if not cls.converges and not args.force:
        raise ConstrelError(
            f'{ct.to_text()} is {cls.describe()}; pass --force to evaluate anyway')
    if args.depth is None and args.digits is None:
        raise ConstrelError('give --depth or --digits')
    depth = args.depth
    if depth is None:
        depth = plan_depth(cls, args.digits)
        if depth is None:
            raise ConstrelError(
                f'cannot plan a depth for {cls.describe()}; give --depth')
        depth = max(depth, 2)
    prec = args.prec
    if args.digits is not None:
        prec = max(prec, int(args.digits * 3.33) + 32)
    value, proxy = eval_to_depth(ct, depth, prec)
    proxy_digits = proxy_decimal_digits(proxy) if proxy != 0 else None
    predicted = predict_error_digits(cls, depth)
    shown = min(proxy_digits or value.decimal_digits(), value.decimal_digits())
    text = (f'{ct.to_text()} at depth {depth}\n'
            f'value     = {value.decimal(max(shown, 4))}\n'
            f'proxy     = {proxy_digits} decimal digits agree with previous depth\n'
            f'predicted = {predicted} digits ({cls.describe()})')
    return _emit(args, {'ctransform': ct.to_text(), 'depth': depth,
                        'value': value.decimal(max(shown, 4)),
                        'proxy_digits': proxy_digits,
                        'predicted_digits': predicted,
                        'class': cls.kind.value}, text)


def _cmd_classify(args) -> int:
    ct = CTransform.from_text(args.ctransform)
    cls = classify(ct.f.shifted(ct.shift))
    obj = {'ctransform': ct.to_text(), 'class': cls.kind.value,
           'C': str(cls.C) if cls.C is not None else None,
           'k': str(cls.k) if cls.k is not None else None,
           'converges': cls.converges}
    lines = [f'{ct.to_text()}: {cls.describe()}']
    if args.depth is not None:
        pred = predict_error_digits(cls, args.depth)
        obj['predicted_digits'] = pred
        lines.append(f'predicted digits at depth {args.depth}: {pred}')
    if args.digits is not None:
        depth = plan_depth(cls, args.digits)
        obj['recommended_depth'] = depth
        lines.append(f'recommended depth for {args.digits} digits: {depth}')
    return _emit(args, obj, '\n'.join(lines))


def _cmd_pslq(args) -> int:
    texts = list(args.value)
    if args.values:
        with open(args.values) as fh:
            texts.extend(line.strip() for line in fh if line.strip())
    if len(texts) < 2:
        raise ConstrelError('need at least two values')
    reals = [Real.from_decimal(t) for t in texts]
    prec = args.prec
    if prec <= 0:
        from .numerics import precision_of
        prec = max(64, int(min(precision_of(r.err, prec_bits=r.prec_bits)
                               for r in reals) * 0.9))
    cfg = EngineConfig(prec_bits=prec, tolerance_fraction=Fraction(args.tolerance),
                       backend=args.backend)
    rel = find_relation(reals, cfg)
    if rel is None:
        print('no relation found')
        return 0
    with mp.workprec(64):
        resid = mp.nstr(rel.residual, 4)
    text = (f'coefficients = {list(rel.coeffs)}\n'
            f'residual    <= {resid}\n'
            f'precision    = {rel.precision_bits} bits\n'
            f'roi          = {float(rel.roi):.2f}')
    return _emit(args, {'coefficients': list(rel.coeffs), 'residual': resid,
                        'precision_bits': rel.precision_bits,
                        'roi': str(rel.roi)}, text)


def _cmd_search(args) -> int:
    store_dir = _store_dir(args)
    store = Hypergraph.load(store_dir)
    with open(args.job) as fh:
        job = SearchJob.from_json(json.load(fh), store)
    report = run_search(job, store)
    store.save(store_dir)
    obj = report.to_json()
    text = '\n'.join(f'{k} = {v}' for k, v in obj.items() if k != 'evaluation_failures')
    return _emit(args, obj, text)


def _cmd_identify(args) -> int:
    inputs = list(args.value) + list(args.ctransform)
    store_dir = args.store or os.environ.get('CONSTREL_STORE')
    store = Hypergraph.load(store_dir) if store_dir else Hypergraph()
    tags = tuple(args.tags.split(',')) if args.tags else None
    req = IdentifyRequest(tuple(inputs), use_store=bool(store.constants),
                          candidate_tags=tags, d=args.d, o=args.o,
                          auto_upload=args.upload, reconfirm=args.reconfirm)
    result = identify(req, store)
    if args.upload and store_dir:
        store.save(store_dir)
    names = store.names()
    obj = {'matches': [{'input': a, 'constant': b, 'name': names.get(b)}
                       for a, b in result.matches],
           'relations': [{'equation': eq, 'relation': rel.to_json()}
                         for rel, eq in result.relations],
           'uploaded_constants': result.uploaded_constants,
           'uploaded_relations': result.uploaded_relations}
    lines = []
    for a, b in result.matches:
        lines.append(f'match: {a[:40]} = {names.get(b, b[:12])}')
    for rel, eq in result.relations:
        lines.append(f'relation (roi {float(rel.roi):.1f}, '
                     f'{rel.precision_bits} bits): {eq}')
    if not lines:
        lines = ['nothing identified']
    return _emit(args, obj, '\n'.join(lines))


def _cmd_export_dot(args) -> int:
    store = Hypergraph.load(_store_dir(args))
    text = store.export_dot()
    if args.output:
        with open(args.output, 'w') as fh:
            fh.write(text)
    else:
        print(text, end='')
    return 0


def _cmd_reverify(args) -> int:
    from .values import constant_value
    store_dir = _store_dir(args)
    store = Hypergraph.load(store_dir)
    report = store.reverify(constant_value, factor=args.factor)
    store.save(store_dir)
    ok = sum(1 for _, old, new in report if new >= old)
    obj = {'edges': len(report), 'non_decreasing': ok,
           'report': [{'edge': e, 'old_bits': o, 'new_bits': n}
                      for e, o, n in report]}
    text = f'{ok}/{len(report)} edges re-verified at >= their stored precision'
    return _emit(args, obj, text)


def _cmd_stats(args) -> int:
    store = Hypergraph.load(_store_dir(args))
    obj = store.stats()
    text = '\n'.join(f'{k} = {v}' for k, v in obj.items())
    return _emit(args, obj, text)


def _cmd_seed(args) -> int:
    store_dir = _store_dir(args)
    store = Hypergraph.load(store_dir)
    counts = seed_store(store, prec_bits=args.prec,
                        with_relations=not args.constants_only)
    store.save(store_dir)
    text = (f'{counts["constants_added"]} constants and '
            f'{counts["relations_added"]} relations added')
    return _emit(args, counts, text)


def _cmd_roi_experiment(args) -> int:
    ns = [int(v) for v in args.n.split(',') if v]
    rule = _precision_rule(args.precision_rule)
    backends = ['pslq', 'lll'] if args.backend == 'both' else [args.backend]
    rows = []
    for backend in backends:
        rows.extend(roi_experiment(backend, ns, args.trials, rule,
                                   tolerance_fraction=Fraction(args.tolerance),
                                   seed=args.seed))
    if args.csv:
        with open(args.csv, 'w') as fh:
            fh.write(experiment_csv(rows))
    if args.plot:
        _plot_rows(rows, args.plot)
    if args.json:
        print(json.dumps([{k: v for k, v in row.__dict__.items()
                           if k not in ('rois', 'residual_rois')}
                          for row in rows]))
    else:
        print(experiment_table(rows))
    return 0


def _precision_rule(expr: str):
    def rule(n: int) -> int:
        return int(eval(expr, {'__builtins__': {}}, {'n': n}))
    return rule


def _plot_rows(rows, path: str):
    import matplotlib
    matplotlib.use('Agg')
    import matplotlib.pyplot as plt
    fig, ax = plt.subplots(figsize=(7, 4))
    for backend in sorted({r.backend for r in rows}):
        sel = [r for r in rows if r.backend == backend]
        ax.errorbar([r.n for r in sel], [r.mean_roi for r in sel],
                    yerr=[r.std_roi for r in sel], marker='o', capsize=3,
                    label=backend)
    for y, style in ((1.25, ':'), (1.5, '--'), (2.0, '-.')):
        ax.axhline(y, linestyle=style, linewidth=0.8, color='gray')
    ax.set_xlabel('n (input count)')
    ax.set_ylabel('RoI')
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)


if __name__ == '__main__':
    sys.exit(main())
