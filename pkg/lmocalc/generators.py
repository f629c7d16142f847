#!/usr/bin/python3
#
# Generator values: the built-in degree-2 table, table files, and the
# relations every table has to satisfy.

import logging
import re
from collections import namedtuple
from functools import lru_cache

from lmocalc.diagrams import H, Y, bubble, minus, plus
from lmocalc.errors import LmoError, NotationError, ShapeError, TableError
from lmocalc.notation import parse_color, parse_series, rational
from lmocalc.pairing import StrutMatrix
from lmocalc.series import Series, format_rational
from lmocalc.tscat import TsElement, element_colors, identity, star_inverse, tensor
from lmocalc.words import parse_word

log = logging.getLogger(__name__)

# name: (top word, bottom word)
GENERATOR_WORDS = {
    'psi': ('(..)', '(..)'),
    'psi_inv': ('(..)', '(..)'),
    'mu': ('(..)', '.'),
    'eta': ('', '.'),
    'delta': ('.', '(..)'),
    'eps': ('.', ''),
    's': ('.', '.'),
    's_inv': ('.', '.'),
    'v+': ('', '.'),
    'v-': ('', '.'),
    'Y': ('((..).)', ''),
    'c': ('', '(..)'),
    'P': ('(.(..))', '((..).)'),
    'Pinv': ('((..).)', '(.(..))'),
}

TABLE_ORDER = ('eta', 'eps', 'P', 'Pinv', 'v+', 'v-', 's', 's_inv', 'psi',
               'psi_inv', 'mu', 'delta', 'Y', 'c')


def arity(name):
    top, bottom = GENERATOR_WORDS[name]
    return len(parse_word(top)), len(parse_word(bottom))


class GeneratorTable(object):

    def __init__(self, max_ideg, entries, associator='even'):
        self.max_ideg = max_ideg
        self.associator = associator
        self.entries = dict(entries)

    def names(self):
        return [n for n in TABLE_ORDER if n in self.entries]

    def __contains__(self, name):
        return name in self.entries

    def __getitem__(self, name):
        return value_of(name, self)

    def __eq__(self, other):
        return (isinstance(other, GeneratorTable) and self.max_ideg == other.max_ideg
                and self.associator == other.associator
                and self.entries.keys() == other.entries.keys()
                and all(self.entries[n] == other.entries[n] for n in self.entries))

    def __ne__(self, other):
        return not self == other

    __hash__ = None


def value_of(name, table):
    try:
        return table.entries[name]
    except KeyError:
        raise TableError('generator {0} is not in the table'.format(name))


def _row(name, w_entries, log_terms, max_ideg=2):
    g, f = arity(name)
    W = StrutMatrix.from_entries(element_colors(g, f), w_entries)
    logy = Series.from_terms(max_ideg, [(q, (d,)) for q, d in log_terms])
    return TsElement(g, f, W, logy.exp())


@lru_cache(maxsize=None)
def builtin_degree2():
    m1, m2 = minus(1), minus(2)
    p1, p2, p3 = plus(1), plus(2), plus(3)
    rows = {
        'eta': _row('eta', {}, []),
        'eps': _row('eps', {}, []),
        'P': identity(3),
        'Pinv': identity(3),
        'v+': _row('v+', {(m1, m1): -1}, [('1/48', bubble(m1, m1))]),
        'v-': _row('v-', {(m1, m1): 1}, [('1/48', bubble(m1, m1))]),
        's': _row('s', {(p1, m1): -1},
                  [('-1/4', bubble(m1, p1)), ('-1/4', H(m1, p1, p1, m1))]),
        's_inv': _row('s_inv', {(p1, m1): -1},
                      [('1/4', bubble(m1, p1)), ('1/4', H(m1, p1, p1, m1))]),
        'psi': _row('psi', {(p1, m2): 1, (p2, m1): 1},
                    [('-1/2', H(m2, p1, p2, m1))]),
        'psi_inv': _row('psi_inv', {(p1, m2): 1, (p2, m1): 1},
                        [('1/2', H(m2, p1, p2, m1))]),
        'mu': _row('mu', {(p1, m1): 1, (p2, m1): 1},
                   [('1/2', Y(m1, p1, p2)),
                    ('1/12', H(p1, m1, p2, p1)),
                    ('1/12', H(m1, p2, p2, p1))]),
        'delta': _row('delta', {(p1, m1): 1, (p1, m2): 1},
                      [('1/2', Y(p1, m1, m2)),
                       ('1/12', H(m2, p1, m1, m2)),
                       ('1/12', H(p1, m1, m1, m2)),
                       ('-1/4', H(m1, p1, p1, m2))]),
        'Y': _row('Y', {},
                  [(-1, Y(p1, p2, p3)),
                   ('1/2', H(p1, p2, p3, p1)),
                   ('1/2', H(p2, p3, p1, p2)),
                   ('1/2', H(p3, p1, p2, p3))]),
        'c': _row('c', {(m1, m2): -1},
                  [('1/8', bubble(m1, m2)), ('1/8', H(m1, m2, m2, m1))]),
    }
    return GeneratorTable(2, rows)


def chi_identity(max_ideg=2):
    """Y-part of the symmetrized value of the identity of one letter."""
    if max_ideg > 2:
        raise TableError('the identity value is only known up to i-deg 2')
    m1, p1 = minus(1), plus(1)
    return Series.from_terms(max_ideg, [
        (1, ()),
        ('1/8', (bubble(m1, p1),)),
        ('1/48', (bubble(p1, p1),)),
        ('-1/8', (H(m1, p1, p1, m1),)),
    ])


def normalizer(g, max_ideg=2):
    """T_g, the tensor power of the inverse of the identity value."""
    one = identity(1, max_ideg)
    t1 = TsElement(1, 1, one.W, star_inverse(chi_identity(max_ideg), 1))
    result = identity(0, max_ideg)
    for _ in range(g):
        result = tensor(result, t1)
    return result


#
# Relations.
#

Relation = namedtuple('Relation', ['name', 'lhs', 'rhs'])

HOPF_RELATIONS = (
    Relation('left unit', 'mu o (eta x id[.])', 'id[.]'),
    Relation('right unit', 'mu o (id[.] x eta)', 'id[.]'),
    Relation('left counit', '(eps x id[.]) o delta', 'id[.]'),
    Relation('right counit', '(id[.] x eps) o delta', 'id[.]'),
    Relation('associativity', 'mu o (mu x id[.]) o P[.,.,.]', 'mu o (id[.] x mu)'),
    Relation('coassociativity', '(delta x id[.]) o delta',
             'P[.,.,.] o (id[.] x delta) o delta'),
    Relation('left antipode', 'mu o (s x id[.]) o delta', 'eta o eps'),
    Relation('right antipode', 'mu o (id[.] x s) o delta', 'eta o eps'),
    Relation('antipode inverse', 's o s_inv', 'id[.]'),
    Relation('antipode inverse (reversed)', 's_inv o s', 'id[.]'),
    Relation('braiding inverse', 'psi o psi_inv', 'id[(..)]'),
    Relation('braiding inverse (reversed)', 'psi_inv o psi', 'id[(..)]'),
    Relation('associator inverse', 'P[.,.,.] o Pinv[.,.,.]', 'id[((..).)]'),
)

Y_RELATIONS = (
    Relation('Y after unit (first)', 'Y o P[.,.,.] o (eta x id[(..)])', 'eps x eps'),
    Relation('Y after unit (middle)', 'Y o (id[.] x eta x id[.])', 'eps x eps'),
    Relation('Y after unit (last)', 'Y o (id[(..)] x eta)', 'eps x eps'),
    Relation('Y after c (left)', 'Y o (c x id[.])', 'eps'),
    Relation('Y after c (right)', 'Y o P[.,.,.] o (id[.] x c)', 'eps'),
)

C_EXPRESSION = ('(mu x mu) o P[.,.,(..)] o (id[.] x Pinv[.,.,.]) o Pinv[.,(..),.]'
                ' o (id[.] x delta x id[.]) o (v- x v+ x v-)')

C_RELATIONS = (
    Relation('c decomposition', 'c', C_EXPRESSION),
)

# spot checks run by validate_table
TABLE_RELATIONS = (
    HOPF_RELATIONS[0], HOPF_RELATIONS[10], Y_RELATIONS[0], Y_RELATIONS[3],
)

CheckResult = namedtuple('CheckResult', ['name', 'ok', 'detail'])


def check_relation(relation, table, max_ideg=None, strict=True):
    from lmocalc import coblang

    try:
        lhs = coblang.evaluate(coblang.compile_expr(relation.lhs, strict), table, max_ideg)
        rhs = coblang.evaluate(coblang.compile_expr(relation.rhs, strict), table, max_ideg)
    except LmoError as e:
        return CheckResult(relation.name, False, str(e))
    if lhs == rhs:
        return CheckResult(relation.name, True, '')
    return CheckResult(relation.name, False, '{0} != {1}'.format(relation.lhs, relation.rhs))


def check_entry(name, value):
    try:
        expected = arity(name)
    except KeyError:
        return CheckResult(name, False, 'unknown generator')
    if (value.g, value.f) != expected:
        return CheckResult(name, False, 'arity {0} -> {1}, expected {2} -> {3}'.format(
            value.g, value.f, *expected))
    if not value.is_group_like():
        return CheckResult(name, False, 'Y-part is not group-like')
    return CheckResult(name, True, '')


def validate_table(table):
    report = [check_entry(n, table.entries[n]) for n in table.names()]
    for relation in TABLE_RELATIONS:
        report.append(check_relation(relation, table))
    return report


#
# Table files.
#

_GEN = re.compile(r'^gen\s+(\S+)\s*:\s*(\d+)\s*->\s*(\d+)$')
_W = re.compile(r'^W\s*\{(.*)\}$')
_LOG = re.compile(r'^logY\s*=\s*(.*)$')


def _format_w(W):
    entries = ['{0}|{1} = {2}'.format(a, b, format_rational(q)) for a, b, q in W.entries()]
    if not entries:
        return 'W { }'
    return 'W { ' + '; '.join(entries) + ' }'


def dump_table(table):
    lines = ['maxideg={0}'.format(table.max_ideg),
             'associator={0}'.format(table.associator)]
    for name in table.names():
        value = table.entries[name]
        lines.append('gen {0} : {1} -> {2}'.format(name, value.g, value.f))
        lines.append(_format_w(value.W))
        lines.append('logY = {0}'.format(value.log_y()))
    return '\n'.join(lines) + '\n'


def _parse_w(text, colors, lineno):
    entries = {}
    for item in text.split(';'):
        item = item.strip()
        if not item:
            continue
        key, _, value = item.partition('=')
        a, _, b = key.partition('|')
        try:
            pair = (parse_color(a.strip()), parse_color(b.strip()))
            entries[pair] = rational(value.strip())
        except (NotationError, ValueError) as e:
            raise TableError('line {0}: bad W entry {1!r}: {2}'.format(lineno, item, e))
    try:
        return StrutMatrix.from_entries(colors, entries)
    except ShapeError as e:
        raise TableError('line {0}: {1}'.format(lineno, e))


def load_table(document):
    max_ideg = None
    associator = ''
    entries = {}
    lines = [(i + 1, line.strip()) for i, line in enumerate(document.splitlines())]
    lines = [(i, line) for i, line in lines if line and not line.startswith('#')]
    k = 0
    while k < len(lines):
        lineno, line = lines[k]
        k += 1
        if line.startswith('maxideg='):
            max_ideg = int(line.split('=', 1)[1])
            continue
        if line.startswith('associator='):
            associator = line.split('=', 1)[1].strip()
            continue
        m = _GEN.match(line)
        if not m:
            raise TableError('line {0}: unexpected {1!r}'.format(lineno, line))
        if max_ideg is None:
            raise TableError('line {0}: maxideg must come first'.format(lineno))
        if k + 2 > len(lines):
            raise TableError('line {0}: entry is missing its W or logY line'.format(lineno))
        name, g, f = m.group(1), int(m.group(2)), int(m.group(3))
        if name not in GENERATOR_WORDS:
            raise TableError('line {0}: unknown generator {1}'.format(lineno, name))
        if (g, f) != arity(name):
            raise TableError('line {0}: {1} has arity {2} -> {3}'.format(
                lineno, name, *arity(name)))
        (wline, wtext), (lline, ltext) = lines[k], lines[k + 1]
        k += 2
        mw, ml = _W.match(wtext), _LOG.match(ltext)
        if not mw:
            raise TableError('line {0}: expected W {{ ... }}'.format(wline))
        if not ml:
            raise TableError('line {0}: expected logY = ...'.format(lline))
        W = _parse_w(mw.group(1), element_colors(g, f), wline)
        try:
            logy = parse_series(ml.group(1), max_ideg)
        except NotationError as e:
            raise TableError('line {0}: {1}'.format(lline, e.caret()))
        if logy.empty_coefficient() or logy != logy.connected_part():
            raise TableError('line {0}: logY must be a connected series'.format(lline))
        try:
            entries[name] = TsElement(g, f, W, logy.exp())
        except LmoError as e:
            raise TableError('line {0}: {1}'.format(wline, e))
    if max_ideg is None:
        raise TableError('table has no maxideg line')
    log.debug('loaded table with %d entries at i-deg %d', len(entries), max_ideg)
    return GeneratorTable(max_ideg, entries, associator)
