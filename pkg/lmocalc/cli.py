#!/usr/bin/python3

import argparse
import json
import sys

from lmocalc import coblang, cylinders, diagrams, generators, samples, tscat
from lmocalc.args import ComplicatedArgs
from lmocalc.config import get_config, setting
from lmocalc.decor import err, out, report, setup_logging
from lmocalc.errors import (CheckFailure, LmoError, PositionedError, ShapeError, TableError,
                            TypecheckError)
from lmocalc.generators import CheckResult
from lmocalc.series import Series, format_rational

SUITES = ('hopf', 'table', 'invert-t1', 'morita', 'compose', 'ihx')

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_TYPE = 2
EXIT_CHECK = 3


def load_table(path):
    if not path:
        return generators.builtin_degree2()
    with open(path) as table_file:
        return generators.load_table(table_file.read())


def _max_ideg(args):
    max_ideg = setting(args, args.config_data, 'max_ideg')
    if max_ideg < 0:
        raise ShapeError('max i-deg must be nonnegative')
    return max_ideg


def _compile(args):
    return coblang.compile_expr(args.expr, strict=args.strict)


def _print_element(args, value):
    if setting(args, args.config_data, 'format') == 'machine':
        out(json.dumps({'g': value.g, 'f': value.f, 'max_ideg': value.max_ideg,
                        'W': str(value.W), 'Y': str(value.y)}, ensure_ascii=False))
    else:
        out(str(value))


def eval_expr(args):
    value = coblang.evaluate(_compile(args), args.table, _max_ideg(args))
    _print_element(args, value)
    return EXIT_OK


def lk(args):
    expr = _compile(args)
    W = coblang.lk_only(expr, args.table)
    if setting(args, args.config_data, 'format') == 'machine':
        out(json.dumps({'g': len(expr.top), 'f': len(expr.bottom), 'W': str(W)},
                       ensure_ascii=False))
    else:
        out(str(W))
    return EXIT_OK


def casson(args):
    value = coblang.evaluate(_compile(args), args.table, _max_ideg(args))
    if (value.g, value.f) == (0, 0):
        lam = cylinders.casson_lambda(value)
    else:
        lam = cylinders.fill_casson(value, args.table)
    out(format_rational(lam))
    return EXIT_OK


def dump(args):
    out(generators.dump_table(args.table).rstrip('\n'))
    return EXIT_OK


#
# Check suites.  Each returns a list of CheckResults.
#

def _relations(relations, args):
    max_ideg = min(_max_ideg(args), args.table.max_ideg)
    return [generators.check_relation(r, args.table, max_ideg)
            for r in relations]


def suite_hopf(args, rng, trials):
    return _relations(generators.HOPF_RELATIONS + generators.Y_RELATIONS
                      + generators.C_RELATIONS, args)


def suite_table(args, rng, trials):
    return generators.validate_table(args.table)


def suite_invert_t1(args, rng, trials):
    m1, p1 = diagrams.minus(1), diagrams.plus(1)
    expected = Series.from_terms(2, [
        (1, ()),
        ('-1/8', (diagrams.bubble(m1, p1),)),
        ('-1/48', (diagrams.bubble(p1, p1),)),
        ('1/8', (diagrams.H(m1, p1, p1, m1),)),
    ])
    chi = generators.chi_identity(2)
    t1 = tscat.star_inverse(chi, 1)
    results = [CheckResult('T1 = star inverse of the identity value', t1 == expected,
                           '' if t1 == expected else str(t1))]
    product = tscat.star(chi, t1, 1)
    results.append(CheckResult('identity value * T1 = empty', product == Series.one(2),
                               '' if product == Series.one(2) else str(product)))
    tg = generators.normalizer(2)
    ok = tg.y == expected.union(expected.recolor({m1: diagrams.minus(2), p1: diagrams.plus(2)}))
    results.append(CheckResult('T2 = T1 x T1', ok, ''))
    return results


def suite_morita(args, rng, trials):
    max_ideg = max(2, min(_max_ideg(args), args.table.max_ideg))
    results = []
    for k in range(trials):
        g = rng.choice((1, 2, 3, 3))
        M = samples.random_cylinder(rng, g, max_ideg, terms=2, side='+')
        N = samples.random_cylinder(rng, g, max_ideg, terms=2, side='-')
        r = cylinders.morita_check(M, N, args.table)
        results.append(CheckResult('morita #{0} (genus {1})'.format(k, g), r.equal,
                                   'lambda {0} vs {1}'.format(format_rational(r.lhs),
                                                              format_rational(r.rhs))))
    return results


def suite_compose(args, rng, trials):
    max_ideg = _max_ideg(args)
    results = []
    for k in range(trials):
        g, f, h = rng.randint(1, 2), rng.randint(0, 2), rng.randint(0, 2)
        a = samples.random_split(rng, g, f, max_ideg, terms=2, top=2)
        b = samples.random_split(rng, h, g, max_ideg, terms=2, top=2)
        shape = '{0} -> {1} -> {2}'.format(h, g, f)
        ok = tscat.compose(a, b) == tscat.compose_expanded(a, b)
        results.append(CheckResult('split composition #{0}'.format(k), ok, shape))
        D = samples.random_shift(rng, h, g)
        ok = tscat.exponential_shift(a, b, D) == tscat.compose(a, tscat.with_struts(b, D))
        results.append(CheckResult('exponential shift #{0}'.format(k), ok, shape))
        C = samples.random_shift(rng, f, g)
        ok = (tscat.exponential_shift_left(C, a, b)
              == tscat.compose(tscat.with_struts_left(a, C), b))
        results.append(CheckResult('left exponential shift #{0}'.format(k), ok, shape))
        genus = rng.randint(1, 2)
        M = samples.random_cylinder(rng, genus, max_ideg, terms=2)
        N = samples.random_cylinder(rng, genus, max_ideg, terms=2)
        ok = (tscat.compose(M.to_element(), N.to_element())
              == cylinders.cyl_compose(M, N).to_element())
        results.append(CheckResult('cylinder product #{0}'.format(k), ok,
                                   'genus {0}'.format(genus)))
    return results


def suite_ihx(args, rng, trials):
    colors = diagrams.minuses(2) + diagrams.pluses(2)
    top = max(1, min(_max_ideg(args), 3))
    tadpole = diagrams.shapes(1, 1)[0]._replace(legs=(colors[0],))
    results = [CheckResult('tadpole vanishes', not Series.from_diagram(1, tadpole), '')]
    for k in range(trials):
        n = rng.randint(1, top)
        d = samples.random_diagram(rng, colors, n)
        if d is None:
            continue
        ok = True
        for relation in diagrams.ihx_relations(d):
            if Series.from_terms(n, [(1, (x,)) for x in relation]):
                ok = False
        results.append(CheckResult('IHX on {0}'.format(d), ok, ''))
    return results


_SUITE_FUNCTIONS = {'hopf': suite_hopf, 'table': suite_table,
                    'invert-t1': suite_invert_t1, 'morita': suite_morita,
                    'compose': suite_compose, 'ihx': suite_ihx}


def check(args):
    seed = setting(args, args.config_data, 'seed')
    trials = setting(args, args.config_data, 'trials')
    names = SUITES if args.suite == 'all' else (args.suite,)
    failed = 0
    for name in names:
        rng = samples.rng_for(seed)
        failed += report(name, _SUITE_FUNCTIONS[name](args, rng, trials))
    if failed:
        raise CheckFailure('{0} check(s) failed'.format(failed))
    return EXIT_OK


def create_parser():
    parser = ComplicatedArgs(prog='lmocalc',
                             description='Exact LMO functor values of Lagrangian cobordisms')

    parser.add_argument('-v', '--verbose', action='store_true', help='Debug logging')
    parser.add_argument('--config', default=None,
                        help='Configuration file (default ~/.lmocalc.json)')

    # accepted before or after the command
    common = argparse.ArgumentParser(add_help=False)
    for p, default in ((parser.parser(), None), (common, argparse.SUPPRESS)):
        p.add_argument('-d', '--max-ideg', type=int, default=default, dest='max_ideg',
                       help='Truncation i-degree (default 2)')
        p.add_argument('--table', default=default, help='Generator table file')
        p.add_argument('--seed', type=int, default=default, help='Random seed for checks')
        p.add_argument('--format', choices=('text', 'machine'), default=default,
                       help='Output format')
        p.add_argument('--strict', action='store_true',
                       default=False if default is None else default,
                       help='Require exact word bracketing when composing')

    cmd = parser.command('eval', help='Evaluate an expression', handler=eval_expr,
                         parents=(common,))
    cmd.add_argument('expr', help='Cobordism expression')

    cmd = parser.command('lk', help='Linking matrix of an expression', handler=lk,
                         parents=(common,))
    cmd.add_argument('expr', help='Cobordism expression')

    cmd = parser.command('check', help='Run a check suite', handler=check, parents=(common,))
    cmd.add_argument('--trials', type=int, default=None, help='Random trials per suite')
    cmd.add_argument('suite', choices=SUITES + ('all',), help='Suite to run')

    cmd = parser.command('casson', help='Casson invariant of a (filled) expression',
                         handler=casson, parents=(common,))
    cmd.add_argument('expr', help='Cobordism expression')

    parser.command('dump-table', help='Print the generator table', handler=dump,
                   parents=(common,))

    return parser


def run(argv=None):
    parser = create_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if not e.code else EXIT_USAGE

    setup_logging(ns.verbose)
    if not ns.command:
        parser.parser().print_help()
        return EXIT_USAGE

    try:
        config = get_config(ns.config)
        diagrams.set_enumeration_limit(setting(ns, config, 'enumeration_limit'))
        table = load_table(setting(ns, config, 'table'))
        # Pass these down in namespace to handlers
        parser.add_arg('config_data', config)
        parser.add_arg('table', table)
        return parser.finalize(ns, EXIT_USAGE)
    except PositionedError as e:
        err(e.caret())
        return EXIT_USAGE
    except (TypecheckError, ShapeError) as e:
        err('error: {0}'.format(e))
        return EXIT_TYPE
    except CheckFailure as e:
        err(str(e))
        return EXIT_CHECK
    except (TableError, LmoError) as e:
        err('error: {0}'.format(e))
        return EXIT_USAGE
    except (OSError, ValueError) as e:
        err('error: {0}'.format(e))
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
