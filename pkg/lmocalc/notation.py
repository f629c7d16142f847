#!/usr/bin/python3
#
# Parsers for the textual notation of colors, diagrams, series, strut
# matrices and split elements.  Printing lives with the types themselves.

import re

from sympy import QQ

from lmocalc import diagrams
from lmocalc.errors import DiagramError, NotationError, ShapeError
from lmocalc.pairing import StrutMatrix
from lmocalc.series import Series
from lmocalc.tscat import TsElement, element_colors

_NAME = re.compile(r'[A-Za-z_][A-Za-z0-9_]*')
_COLOR = re.compile(r'\d+[-+*]|[A-Za-z_][A-Za-z0-9_]*')
_RATIONAL = re.compile(r'\d+(?:/\d+)?')
_SIGNED = re.compile(r'-?\d+(?:/\d+)?')
_KINDS = {'-': diagrams.minus, '+': diagrams.plus, '*': diagrams.star}


class Scanner(object):
    """Cursor over a string, skipping whitespace between tokens."""

    def __init__(self, text, error=NotationError):
        self.text = text
        self.pos = 0
        self._error = error

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, literal):
        self.skip()
        return self.text.startswith(literal, self.pos)

    def accept(self, literal):
        if self.peek(literal):
            self.pos += len(literal)
            return True
        return False

    def expect(self, literal):
        if not self.accept(literal):
            self.error("expected '{0}'".format(literal))

    def match(self, regex):
        self.skip()
        m = regex.match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return m.group(0)

    def number(self, regex):
        self.skip()
        start = self.pos
        token = self.match(regex)
        if token is None:
            return None
        try:
            return rational(token)
        except NotationError as e:
            self.error(e.message, start)

    def keyword(self, word, regex=_NAME):
        saved = self.pos
        if self.match(regex) == word:
            return True
        self.pos = saved
        return False

    def at_end(self):
        self.skip()
        return self.pos >= len(self.text)

    def finish(self):
        if not self.at_end():
            self.error('unexpected trailing text')

    def error(self, message, pos=None):
        raise self._error(message, self.text, self.pos if pos is None else pos)


def rational(text):
    num, _, den = text.partition('/')
    if den and int(den) == 0:
        raise NotationError('zero denominator in {0}'.format(text), text, text.index('/') + 1)
    return QQ(int(num), int(den or 1))


def _color(sc):
    start = sc.pos
    token = sc.match(_COLOR)
    if token is None:
        sc.error('expected a color')
    try:
        if token[-1] in _KINDS:
            return _KINDS[token[-1]](int(token[:-1]))
        return diagrams.free(token)
    except DiagramError as e:
        sc.error(str(e), start)


def _colors(sc, count, separators):
    out = [_color(sc)]
    for sep in separators[:count - 1]:
        sc.expect(sep)
        out.append(_color(sc))
    return out


def _graph(sc, start):
    sc.expect('{')
    vertices, edges, legs = [], [], []
    while not sc.accept('}'):
        word = sc.match(_NAME)
        if word is None:
            sc.error('expected a vertex, edges{...} or legs{...}')
        if word == 'edges' and sc.peek('{'):
            sc.expect('{')
            while not sc.accept('}'):
                a = sc.match(_NAME)
                sc.expect('-')
                b = sc.match(_NAME)
                if a is None or b is None:
                    sc.error('expected an edge h-h')
                edges.append((a, b))
                sc.accept(';')
        elif word == 'legs' and sc.peek('{'):
            sc.expect('{')
            while not sc.accept('}'):
                h = sc.match(_NAME)
                if h is None:
                    sc.error('expected a leg h=color')
                sc.expect('=')
                legs.append((h, _color(sc)))
                sc.accept(';')
        else:
            sc.expect(':')
            sc.expect('(')
            names = [sc.match(_NAME)]
            while sc.accept(','):
                names.append(sc.match(_NAME))
            sc.expect(')')
            if None in names:
                sc.error('expected a half-edge name')
            vertices.append(tuple(names))
        sc.accept(';')
    try:
        return diagrams.graph(vertices, edges, legs)
    except DiagramError as e:
        sc.error(str(e), start)


def _diagram(sc):
    start = sc.pos
    name = sc.match(_NAME)
    if name == 'strut':
        sc.expect('(')
        a, b = _colors(sc, 2, ',')
        sc.expect(')')
        return diagrams.strut(a, b)
    if name == 'Y':
        sc.expect('(')
        cs = _colors(sc, 3, ',,')
        sc.expect(')')
        return diagrams.Y(*cs)
    if name == 'H':
        sc.expect('(')
        cs = _colors(sc, 4, ',|,')
        sc.expect(')')
        return diagrams.H(*cs)
    if name == 'bubble':
        sc.expect('(')
        a, b = _colors(sc, 2, ',')
        sc.expect(')')
        return diagrams.bubble(a, b)
    if name == 'theta':
        if sc.accept('('):
            sc.expect(')')
        return diagrams.theta()
    if name == 'graph':
        return _graph(sc, start)
    sc.error('expected a diagram', start)


def _monomial(sc):
    if sc.accept('∅'):
        return ()
    parts = [_diagram(sc)]
    while sc.accept('|'):
        parts.append(_diagram(sc))
    return tuple(parts)


def _series(sc, max_ideg):
    terms = []
    sign = -1 if sc.accept('-') else 1
    while True:
        number = sc.number(_RATIONAL)
        if number is not None:
            coef = number
            monomial = _monomial(sc) if sc.accept('*') else ()
        else:
            coef = QQ(1)
            monomial = _monomial(sc)
        terms.append((coef * sign, monomial))
        if sc.accept('+'):
            sign = 1
        elif sc.accept('-'):
            sign = -1
        else:
            break
    return Series.from_terms(max_ideg, terms)


def _matrix(sc):
    sc.expect('[')
    if sc.accept(']'):
        return StrutMatrix(())
    sc.expect('color')
    sc.expect('=')
    colors = [_color(sc)]
    while sc.accept(','):
        colors.append(_color(sc))
    rows = []
    while sc.accept(';'):
        row = []
        while True:
            number = sc.number(_SIGNED)
            if number is None:
                break
            row.append(number)
        if len(row) != len(colors):
            sc.error('matrix row has {0} entries for {1} colors'.format(len(row), len(colors)))
        rows.append(row)
    sc.expect(']')
    if len(rows) != len(colors):
        sc.error('matrix has {0} rows for {1} colors'.format(len(rows), len(colors)))
    try:
        return StrutMatrix(colors, rows)
    except ShapeError as e:
        sc.error(str(e))


def _whole(parser, text, *args):
    sc = Scanner(text)
    value = parser(sc, *args)
    sc.finish()
    return value


def parse_color(text):
    return _whole(_color, text)


def parse_diagram(text):
    return _whole(_diagram, text)


def parse_series(text, max_ideg=2):
    return _whole(_series, text, max_ideg)


def parse_matrix(text):
    return _whole(_matrix, text)


def parse_element(text, g, f, max_ideg=2):
    """Parse 'W = [...]; Y = <series>' as an element g -> f."""
    sc = Scanner(text)
    sc.expect('W')
    sc.expect('=')
    W = _matrix(sc)
    sc.expect(';')
    sc.expect('Y')
    sc.expect('=')
    y = _series(sc, max_ideg)
    sc.finish()
    colors = element_colors(g, f)
    if not W.colors:
        W = StrutMatrix(colors)
    elif W.colors != colors:
        padded = {(a, b): q for a, b, q in W.entries()}
        try:
            W = StrutMatrix.from_entries(colors, padded)
        except ShapeError as e:
            raise NotationError(str(e), text, 0)
    try:
        return TsElement(g, f, W, y)
    except ShapeError as e:
        raise NotationError(str(e), text, 0)
