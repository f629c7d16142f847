#!/usr/bin/python3
#
# Cobordism expressions: parsing, word typechecking and evaluation.
#
#   expr := expr 'o' term | term
#   term := term 'x' atom | atom
#   atom := GEN | 'id[' word ']' | 'P[' word ',' word ',' word ']'
#         | 'Pinv[' word ',' word ',' word ']' | '(' expr ')'
#
# 'a o b' means b first, then a.

import logging
import re
from collections import namedtuple

from lmocalc import tscat
from lmocalc.errors import EvaluationError, ParseError, TypecheckError
from lmocalc.generators import GENERATOR_WORDS, builtin_degree2, value_of
from lmocalc.notation import Scanner
from lmocalc.words import parse_word, read_word

log = logging.getLogger(__name__)

GENERATORS = ('psi', 'psi_inv', 'mu', 'eta', 'delta', 'eps', 's', 's_inv',
              'v+', 'v-', 'Y', 'c')

_TOKEN = re.compile(r'v[+-]|[A-Za-z_][A-Za-z0-9_]*')

Gen = namedtuple('Gen', ['name', 'span', 'top', 'bottom'], defaults=(None, None))
Id = namedtuple('Id', ['word', 'span', 'top', 'bottom'], defaults=(None, None))
Assoc = namedtuple('Assoc', ['u', 'v', 'w', 'inverted', 'span', 'top', 'bottom'],
                   defaults=(None, None))
Compose = namedtuple('Compose', ['left', 'right', 'span', 'top', 'bottom', 'rebracket'],
                     defaults=(None, None, False))
Tensor = namedtuple('Tensor', ['left', 'right', 'span', 'top', 'bottom'],
                    defaults=(None, None))


class _Parser(object):

    def __init__(self, text):
        self.sc = Scanner(text, ParseError)

    def expr(self):
        start = self._start()
        node = self.term()
        while self.sc.keyword('o', _TOKEN):
            node = Compose(node, self.term(), (start, self.sc.pos))
        return node

    def term(self):
        start = self._start()
        node = self.atom()
        while self.sc.keyword('x', _TOKEN):
            node = Tensor(node, self.atom(), (start, self.sc.pos))
        return node

    def _start(self):
        self.sc.skip()
        return self.sc.pos

    def atom(self):
        sc = self.sc
        start = self._start()
        if sc.accept('('):
            node = self.expr()
            sc.expect(')')
            return node
        name = sc.match(_TOKEN)
        if name is None:
            sc.error('expected a generator, id[...], P[...] or (')
        if name == 'id':
            sc.expect('[')
            word = read_word(sc)
            sc.expect(']')
            return Id(word, (start, sc.pos))
        if name in ('P', 'Pinv'):
            sc.expect('[')
            words = [self._letter_word()]
            for _ in range(2):
                sc.expect(',')
                words.append(self._letter_word())
            sc.expect(']')
            return Assoc(words[0], words[1], words[2], name == 'Pinv', (start, sc.pos))
        if name in GENERATORS:
            return Gen(name, (start, sc.pos))
        sc.error('unknown generator {0}'.format(name), start)

    def _letter_word(self):
        self.sc.skip()
        start = self.sc.pos
        word = read_word(self.sc)
        if word.tree is None:
            self.sc.error('associator words must be nonempty', start)
        return word


def parse(text):
    parser = _Parser(text)
    node = parser.expr()
    parser.sc.finish()
    return node


_GEN_WORDS = {name: (parse_word(top), parse_word(bottom))
              for name, (top, bottom) in GENERATOR_WORDS.items()}


def typecheck(expr, strict=True):
    """Annotate every node with its (top, bottom) words.

    In lenient mode a composition whose words differ only by bracketing is
    accepted and marked for implicit re-bracketing.
    """
    if isinstance(expr, Gen):
        top, bottom = _GEN_WORDS[expr.name]
        return expr._replace(top=top, bottom=bottom)
    if isinstance(expr, Id):
        return expr._replace(top=expr.word, bottom=expr.word)
    if isinstance(expr, Assoc):
        right = expr.u.tensor(expr.v.tensor(expr.w))
        left = expr.u.tensor(expr.v).tensor(expr.w)
        if expr.inverted:
            return expr._replace(top=left, bottom=right)
        return expr._replace(top=right, bottom=left)
    if isinstance(expr, Tensor):
        a = typecheck(expr.left, strict)
        b = typecheck(expr.right, strict)
        return expr._replace(left=a, right=b, top=a.top.tensor(b.top),
                             bottom=a.bottom.tensor(b.bottom))
    if isinstance(expr, Compose):
        a = typecheck(expr.left, strict)
        b = typecheck(expr.right, strict)
        rebracket = False
        if a.top != b.bottom:
            if strict or len(a.top) != len(b.bottom):
                raise TypecheckError(
                    'cannot compose: {0} has top word {1} but {2} has bottom word {3}'.format(
                        format_expr(a), a.top.describe(), format_expr(b), b.bottom.describe()),
                    expected=a.top, found=b.bottom)
            log.warning('re-bracketing %s as %s', b.bottom.describe(), a.top.describe())
            rebracket = True
        return expr._replace(left=a, right=b, top=b.top, bottom=a.bottom, rebracket=rebracket)
    raise TypeError('not an expression: {0!r}'.format(expr))


def compile_expr(text, strict=True):
    return typecheck(parse(text), strict)


def format_expr(expr):
    """Fully parenthesized text of an expression."""
    if isinstance(expr, Gen):
        return expr.name
    if isinstance(expr, Id):
        return 'id[{0}]'.format(expr.word)
    if isinstance(expr, Assoc):
        return '{0}[{1},{2},{3}]'.format('Pinv' if expr.inverted else 'P',
                                          expr.u, expr.v, expr.w)
    op = ' o ' if isinstance(expr, Compose) else ' x '
    return '(' + format_expr(expr.left) + op + format_expr(expr.right) + ')'


class _Evaluator(object):

    def __init__(self, table, max_ideg):
        self.table = table
        self.max_ideg = max_ideg
        self.cache = {}

    def generator(self, name):
        if name not in self.cache:
            self.cache[name] = value_of(name, self.table).truncate(self.max_ideg)
        return self.cache[name]

    def visit(self, node):
        if isinstance(node, Gen):
            return self.generator(node.name)
        if isinstance(node, Id):
            return tscat.identity(len(node.word), self.max_ideg)
        if isinstance(node, Assoc):
            if all(w.is_letter() for w in (node.u, node.v, node.w)):
                return self.generator('Pinv' if node.inverted else 'P')
            if self.max_ideg <= 2:
                return tscat.identity(len(node.top), self.max_ideg)
            raise EvaluationError('no associator value for {0} above i-deg 2'.format(
                format_expr(node)))
        if isinstance(node, Tensor):
            return tscat.tensor(self.visit(node.left), self.visit(node.right))
        if isinstance(node, Compose):
            if node.rebracket and self.max_ideg > 2:
                raise EvaluationError('implicit re-bracketing in {0} needs explicit P[...]'
                                      ' above i-deg 2'.format(format_expr(node)))
            return tscat.compose(self.visit(node.left), self.visit(node.right))
        raise TypeError('not an expression: {0!r}'.format(node))


def evaluate(expr, table=None, max_ideg=None):
    if table is None:
        table = builtin_degree2()
    if max_ideg is None:
        max_ideg = table.max_ideg
    if max_ideg > table.max_ideg:
        raise EvaluationError('i-deg {0} exceeds the table i-deg {1}'.format(
            max_ideg, table.max_ideg))
    if expr.top is None:
        expr = typecheck(expr)
    return _Evaluator(table, max_ideg).visit(expr)


def lk_only(expr, table=None):
    """W of the value of expr, composed from the generator W's alone."""
    if table is None:
        table = builtin_degree2()
    if expr.top is None:
        expr = typecheck(expr)
    return _lk(expr, table)


def _lk(node, table):
    if isinstance(node, Gen):
        return value_of(node.name, table).W
    if isinstance(node, Id):
        return tscat.identity(len(node.word)).W
    if isinstance(node, Assoc):
        if all(w.is_letter() for w in (node.u, node.v, node.w)):
            return value_of('Pinv' if node.inverted else 'P', table).W
        return tscat.identity(len(node.top)).W
    if isinstance(node, Tensor):
        return tscat.tensor_lk(_lk(node.left, table), _lk(node.right, table))
    return tscat.compose_lk(_lk(node.left, table), _lk(node.right, table))


def spans(expr):
    """Yield (node, (start, end)) for every node, outermost first."""
    yield expr, expr.span
    if isinstance(expr, (Compose, Tensor)):
        yield from spans(expr.left)
        yield from spans(expr.right)

