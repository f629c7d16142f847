#!/usr/bin/python3
#
# Jacobi diagrams with colored legs.
#
# A diagram with n trivalent vertices and L legs is made of the half-edges
# 0 .. 3n+L-1.  Vertex v owns the half-edges 3v, 3v+1, 3v+2, listed in
# counterclockwise cyclic order; leg i is the half-edge 3n+i and carries
# the color legs[i].  ``edges`` pairs up every half-edge exactly once.

import logging
from collections import deque, namedtuple
from functools import lru_cache

from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.utilities.iterables import connected_components, multiset_permutations

from lmocalc.errors import DiagramError, EnumerationLimitError

log = logging.getLogger(__name__)

MINUS, PLUS, STAR, FREE = range(4)
_SUFFIX = {MINUS: '-', PLUS: '+', STAR: '*'}

RESERVED_NAMES = ('strut', 'Y', 'H', 'bubble', 'theta', 'graph', 'edges',
                  'legs', 'color')


class Color(namedtuple('Color', ['kind', 'key'])):
    """A leg color.  Colors sort as minus < plus < star < free symbols."""
    __slots__ = ()

    def __str__(self):
        if self.kind == FREE:
            return self.key
        return '{0}{1}'.format(self.key, _SUFFIX[self.kind])

    def __repr__(self):
        return 'Color({0})'.format(self)


def _indexed(kind, i):
    if not isinstance(i, int) or i < 1:
        raise DiagramError('color index must be a positive integer, got {0!r}'.format(i))
    return Color(kind, i)


def minus(i):
    return _indexed(MINUS, i)


def plus(i):
    return _indexed(PLUS, i)


def star(i):
    return _indexed(STAR, i)


def free(name):
    if not name or not name.isidentifier() or name in RESERVED_NAMES:
        raise DiagramError('bad color symbol {0!r}'.format(name))
    return Color(FREE, name)


def minuses(n):
    return tuple(minus(i) for i in range(1, n + 1))


def pluses(n):
    return tuple(plus(i) for i in range(1, n + 1))


def stars(n):
    return tuple(star(i) for i in range(1, n + 1))


class Diagram(namedtuple('Diagram', ['n', 'legs', 'edges'])):
    __slots__ = ()

    @classmethod
    def build(cls, n, legs, edges):
        """Validate and normalize a connected uni-trivalent graph."""
        legs = tuple(legs)
        for c in legs:
            if not isinstance(c, Color):
                raise DiagramError('leg color {0!r} is not a Color'.format(c))
        total = 3 * n + len(legs)
        if n < 0 or total == 0:
            raise DiagramError('empty diagram')
        seen = [False] * total
        pairs = []
        for a, b in edges:
            if a == b or not (0 <= a < total and 0 <= b < total):
                raise DiagramError('bad edge {0}-{1}'.format(a, b))
            for h in (a, b):
                if seen[h]:
                    raise DiagramError('half-edge {0} is used twice'.format(h))
                seen[h] = True
            pairs.append((a, b) if a < b else (b, a))
        if not all(seen):
            raise DiagramError('dangling half-edge {0}'.format(seen.index(False)))
        d = cls(n, legs, tuple(sorted(pairs)))
        if not d._connected():
            raise DiagramError('diagram is not connected')
        return d

    def _node(self, h):
        base = 3 * self.n
        return h // 3 if h < base else self.n + h - base

    def _connected(self):
        links = [(self._node(a), self._node(b)) for a, b in self.edges]
        return len(connected_components((list(range(self.n + len(self.legs))), links))) == 1

    @property
    def ideg(self):
        return self.n

    @property
    def edeg(self):
        return len(self.legs)

    @property
    def deg(self):
        return (self.n + len(self.legs)) // 2

    @property
    def betti(self):
        return len(self.edges) - self.n - len(self.legs) + 1

    @property
    def is_strut(self):
        return self.n == 0

    @property
    def is_closed(self):
        return not self.legs

    def partner(self):
        return _partner(self)

    def leg_color(self, h):
        return self.legs[h - 3 * self.n]

    def has_self_loop(self):
        return any(a // 3 == b // 3 and b < 3 * self.n for a, b in self.edges)

    def describe(self):
        """Return (text, sign) with self == sign * (diagram written as text)."""
        return _describe(self)

    def __str__(self):
        text, sign = self.describe()
        return text if sign > 0 else '-' + text


@lru_cache(maxsize=None)
def _partner(d):
    partner = {}
    for a, b in d.edges:
        partner[a] = b
        partner[b] = a
    return partner


def strut(a, b):
    return Diagram.build(0, (a, b), [(0, 1)])


def Y(a, b, c):
    return Diagram.build(1, (a, b, c), [(0, 3), (1, 4), (2, 5)])


def H(a, b, c, d):
    """The tree with vertices (a, b, e) and (c, d, e)."""
    return Diagram.build(2, (a, b, c, d),
                         [(0, 6), (1, 7), (2, 5), (3, 8), (4, 9)])


def bubble(a, b):
    """Planar i-deg 2 wheel: vertices (a, p, q) and (b, q, p)."""
    return Diagram.build(2, (a, b), [(0, 6), (3, 7), (1, 5), (2, 4)])


def theta():
    """Planar theta: the two vertices read their edges in opposite orders."""
    return Diagram.build(2, (), [(0, 3), (1, 5), (2, 4)])


def graph(vertices, edges, legs):
    """General constructor from named half-edges.

    vertices: list of 3-tuples of half-edge names (cyclic order)
    edges: list of name pairs; legs: list of (name, Color)
    """
    ids = {}
    for k, names in enumerate(vertices):
        if len(names) != 3:
            raise DiagramError('vertex {0} is not trivalent'.format(k))
        for r, name in enumerate(names):
            if name in ids:
                raise DiagramError('half-edge {0} appears twice'.format(name))
            ids[name] = 3 * k + r
    base = 3 * len(vertices)
    colors = []
    for i, (name, color) in enumerate(legs):
        if name in ids:
            raise DiagramError('half-edge {0} appears twice'.format(name))
        ids[name] = base + i
        colors.append(color)
    try:
        pairs = [(ids[a], ids[b]) for a, b in edges]
    except KeyError as e:
        raise DiagramError('unknown half-edge {0}'.format(e.args[0]))
    return Diagram.build(len(vertices), colors, pairs)


#
# Canonical forms.
#
# A walk labels the diagram breadth-first from a starting half-edge.  Each
# vertex is entered through a half-edge which becomes its first slot, and
# the two remaining half-edges are taken either in cyclic order (sign +1)
# or reversed (sign -1).  The canonical form is the smallest code over all
# walks; if it is reached with both signs the diagram equals its negative.
#

def _entries(h):
    v, r = divmod(h, 3)
    a = 3 * v + (r + 1) % 3
    b = 3 * v + (r + 2) % 3
    yield (h, a, b), 1
    yield (h, b, a), -1


def _code(d, order, vseq, lseq):
    base = 3 * d.n
    new = {}
    for k, v in enumerate(vseq):
        for r, h in enumerate(order[v]):
            new[h] = 3 * k + r
    for i, h in enumerate(lseq):
        new[h] = base + i
    edges = tuple(sorted(tuple(sorted((new[a], new[b]))) for a, b in d.edges))
    return (d.n, tuple(d.legs[h - base] for h in lseq), edges)


def _explore(d, partner, queue, order, vseq, lseq, sign):
    base = 3 * d.n
    while queue:
        y = partner[queue.popleft()]
        if y >= base:
            if y not in lseq:
                lseq = lseq + [y]
            continue
        v = y // 3
        if v in order:
            continue
        for entry, s in _entries(y):
            branch = deque(queue)
            branch.extend(entry[1:])
            yield from _explore(d, partner, branch, _extend(order, v, entry),
                                vseq + [v], lseq, sign * s)
        return
    yield _code(d, order, vseq, lseq), sign


def _extend(order, v, entry):
    order = dict(order)
    order[v] = entry
    return order


def _walks(d, partner, start):
    if start >= 3 * d.n:
        yield from _explore(d, partner, deque([start]), {}, [], [start], 1)
        return
    for entry, s in _entries(start):
        yield from _explore(d, partner, deque(entry), {start // 3: entry},
                            [start // 3], [], s)


@lru_cache(maxsize=None)
def _canonical(d):
    """(code, sign) where sign is 0 when the diagram vanishes by AS."""
    partner = _partner(d)
    base = 3 * d.n
    if d.legs:
        low = min(d.legs)
        starts = [base + i for i, c in enumerate(d.legs) if c == low]
    else:
        starts = range(base)
    best = None
    signs = set()
    for h in starts:
        for code, sign in _walks(d, partner, h):
            if best is None or code < best:
                best = code
                signs = {sign}
            elif code == best:
                signs.add(sign)
    return best, (signs.pop() if len(signs) == 1 else 0)


def canonicalize(d):
    """Return (canonical diagram, sign) with d == sign * canonical, or None."""
    code, sign = _canonical(d)
    if not sign:
        return None
    return Diagram(*code), sign


def canonical_code(d):
    return _canonical(d)[0]


#
# Shapes: uncolored connected diagrams, including ones which vanish.
#

_BLANK = Color(FREE, '_')


def _insert_leg(d, edge):
    n, nlegs = d.n, len(d.legs)

    def move(h):
        return h if h < 3 * n else h + 3

    edges = [(move(a), move(b)) for a, b in d.edges if (a, b) != edge]
    c = 3 * n
    a, b = edge
    edges += [(move(a), c), (c + 1, move(b)), (c + 2, 3 * (n + 1) + nlegs)]
    return Diagram.build(n + 1, d.legs + (_BLANK,), edges)


def _join_legs(d):
    base = 3 * d.n
    partner = _partner(d)
    p, q = partner[base], partner[base + 1]
    if p == base + 1:
        return None
    edges = [e for e in d.edges if base not in e and base + 1 not in e]
    return Diagram.build(d.n, (), edges + [(p, q)])


@lru_cache(maxsize=None)
def shapes(n, nlegs):
    if n < 0 or nlegs < 0 or nlegs > n + 2 or (3 * n + nlegs) % 2:
        return ()
    if n == 0:
        return (strut(_BLANK, _BLANK),) if nlegs == 2 else ()
    found = {}

    def add(d):
        if d is not None:
            code = canonical_code(d)
            found.setdefault(code, Diagram(*code))

    if nlegs == 0:
        for d in shapes(n, 2):
            add(_join_legs(d))
    else:
        if (n, nlegs) == (1, 1):
            add(Diagram.build(1, (_BLANK,), [(0, 1), (2, 3)]))
        for d in shapes(n - 1, nlegs - 1):
            for edge in d.edges:
                add(_insert_leg(d, edge))
    return tuple(found[k] for k in sorted(found))


#
# IHX and sector bases.
#

def _regraft(d, u, v, slots_u, slots_v):
    moved = {}
    for r, h in enumerate(slots_u):
        moved[h] = 3 * u + r
    for r, h in enumerate(slots_v):
        moved[h] = 3 * v + r
    edges = [(moved.get(a, a), moved.get(b, b)) for a, b in d.edges]
    return Diagram.build(d.n, d.legs, edges)


def ihx_relations(d):
    """Yield the three-term IHX relations living on internal edges of d.

    Writing T(P,Q|R,S) for the vertices (P,Q,x), (R,S,y) joined by the
    edge x-y, each relation is T(A,B|C,D) + T(B,C|A,D) + T(C,A|B,D) = 0.
    """
    base = 3 * d.n
    for x, y in d.edges:
        if y >= base or x // 3 == y // 3:
            continue
        u, v = x // 3, y // 3
        a, b = (3 * u + (x + 1) % 3, 3 * u + (x + 2) % 3)
        c, e = (3 * v + (y + 1) % 3, 3 * v + (y + 2) % 3)
        yield [_regraft(d, u, v, (a, b, x), (c, e, y)),
               _regraft(d, u, v, (b, c, x), (a, e, y)),
               _regraft(d, u, v, (c, a, x), (b, e, y))]


_limit = {'ideg': 6}


def set_enumeration_limit(n):
    _limit['ideg'] = int(n)


def enumeration_limit():
    return _limit['ideg']


class SectorBasis(object):
    """Basis of the span of connected diagrams of one i-deg and leg multiset,
    modulo AS and IHX, with the reduction of every canonical diagram."""

    def __init__(self, ideg, colors, basis, reduction, relations):
        self.ideg = ideg
        self.colors = colors
        self.basis = basis
        self.reduction = reduction
        self.relations = relations

    @property
    def dim(self):
        return len(self.basis)

    def candidates(self):
        return sorted(self.reduction)

    def expand(self, d):
        return dict(self.reduction[d])

    def __repr__(self):
        return 'SectorBasis(ideg={0}, colors=({1}), dim={2})'.format(
            self.ideg, ','.join(str(c) for c in self.colors), self.dim)


def sector_basis(ideg, colors):
    colors = tuple(sorted(colors))
    if ideg > _limit['ideg']:
        raise EnumerationLimitError(
            'i-deg {0} exceeds the enumeration limit {1}'.format(ideg, _limit['ideg']))
    return _sector(ideg, colors)


def _colorings(colors):
    distinct = sorted(set(colors))
    for perm in multiset_permutations([distinct.index(c) for c in colors]):
        yield tuple(distinct[i] for i in perm)


@lru_cache(maxsize=None)
def _sector(ideg, colors):
    candidates = set()
    for shape in shapes(ideg, len(colors)):
        for legs in _colorings(colors):
            found = canonicalize(shape._replace(legs=legs))
            if found is not None:
                candidates.add(found[0])
    cands = sorted(candidates)
    index = {d: i for i, d in enumerate(cands)}

    relations = []
    rows = []
    for d in cands:
        for terms in ihx_relations(d):
            row = [QQ(0)] * len(cands)
            for term in terms:
                found = canonicalize(term)
                if found is not None:
                    row[index[found[0]]] += found[1]
            if any(row):
                rows.append(row)
                relations.append({cands[j]: q for j, q in enumerate(row) if q})

    pivots = ()
    if rows:
        rref, pivots = DomainMatrix(rows, (len(rows), len(cands)), QQ).rref()
        rref = rref.to_Matrix()
    free_cols = [j for j in range(len(cands)) if j not in pivots]
    reduction = {}
    for j in free_cols:
        reduction[cands[j]] = {cands[j]: QQ(1)}
    for r, p in enumerate(pivots):
        reduction[cands[p]] = {cands[j]: -QQ.from_sympy(rref[r, j])
                               for j in free_cols if rref[r, j] != 0}
    log.debug('sector i-deg %d (%s): %d diagrams, %d relations, dim %d',
              ideg, ','.join(str(c) for c in colors), len(cands), len(rows),
              len(free_cols))
    return SectorBasis(ideg, colors, tuple(cands[j] for j in free_cols),
                       reduction, relations)


@lru_cache(maxsize=None)
def _expansion(d):
    if d.is_strut:
        a, b = sorted(d.legs)
        return ((strut(a, b), QQ(1)),)
    found = canonicalize(d)
    if found is None:
        return ()
    canon, sign = found
    sector = sector_basis(canon.n, canon.legs)
    return tuple((b, q * sign) for b, q in sector.reduction[canon].items())


def expand(d):
    """Express a connected diagram in the basis of its sector."""
    return dict(_expansion(d))


#
# Printing.
#

def _leg_at(d, partner, h):
    other = partner[h]
    if other < 3 * d.n:
        return None
    return d.leg_color(other)


def _short_forms(d):
    partner = _partner(d)
    if d.n == 0:
        yield 'strut({0},{1})'.format(*d.legs), d
        return
    if d.has_self_loop():
        return
    if d.n == 1 and len(d.legs) == 3:
        legs = [_leg_at(d, partner, h) for h in range(3)]
        yield 'Y({0},{1},{2})'.format(*legs), Y(*legs)
    if d.n != 2:
        return
    if len(d.legs) == 4:
        for x in range(3):
            y = partner[x]
            if 3 <= y < 6:
                a, b = (x + 1) % 3, (x + 2) % 3
                c, e = 3 + (y + 1) % 3, 3 + (y + 2) % 3
                legs = [_leg_at(d, partner, h) for h in (a, b, c, e)]
                if None not in legs:
                    yield 'H({0},{1}|{2},{3})'.format(*legs), H(*legs)
    elif len(d.legs) == 2:
        a = next(_leg_at(d, partner, h) for h in range(3) if partner[h] >= 6)
        b = next(_leg_at(d, partner, h) for h in range(3, 6) if partner[h] >= 6)
        yield 'bubble({0},{1})'.format(a, b), bubble(a, b)
    elif not d.legs:
        yield 'theta', theta()


def _general_form(d):
    base = 3 * d.n
    vertices = ';'.join('v{0}:(h{1},h{2},h{3})'.format(v, 3 * v, 3 * v + 1, 3 * v + 2)
                        for v in range(d.n))
    edges = ';'.join('h{0}-h{1}'.format(a, b) for a, b in d.edges)
    legs = ';'.join('h{0}={1}'.format(base + i, c) for i, c in enumerate(d.legs))
    parts = [p for p in (vertices, 'edges{' + edges + '}', 'legs{' + legs + '}') if p]
    return 'graph{' + ';'.join(parts) + '}'


@lru_cache(maxsize=None)
def _describe(d):
    target = canonicalize(d)
    if target is not None:
        for text, raw in _short_forms(d):
            found = canonicalize(raw)
            if found is not None and found[0] == target[0]:
                return text, found[1] * target[1]
    return _general_form(d), 1
