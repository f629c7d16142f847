#!/usr/bin/python3
#
# Strut matrices, contraction brackets and formal Gaussian integration.

import itertools
import logging
from functools import lru_cache
from math import comb, factorial

from sympy import Matrix, QQ, Rational
from sympy.matrices import MatrixBase
from sympy.core.basic import Basic
from sympy.utilities.iterables import connected_components

from lmocalc import diagrams
from lmocalc.errors import DegenerateGaussianError, PairingError, ShapeError
from lmocalc.series import Series, format_rational, ideg, qq

log = logging.getLogger(__name__)


def _sym(x):
    if isinstance(x, Basic):
        return x
    q = qq(x)
    return Rational(int(q.numerator), int(q.denominator))


class StrutMatrix(object):
    """Symmetric rational matrix indexed by colors.

    Stands for [M/2], the exponential of the sum over i <= j of M_ij
    strut(i,j) with diagonal entries halved.  Colors are kept sorted.
    """

    __slots__ = ('colors', 'matrix', '_index')

    def __init__(self, colors, matrix=None):
        colors = tuple(colors)
        n = len(colors)
        if len(set(colors)) != n:
            raise ShapeError('repeated color in a strut matrix')
        if matrix is None or n == 0:
            m = Matrix.zeros(n, n)
        elif isinstance(matrix, MatrixBase):
            m = matrix.applyfunc(_sym)
        else:
            m = Matrix([[_sym(x) for x in row] for row in matrix])
        if m.shape != (n, n):
            raise ShapeError('matrix shape {0} does not match {1} colors'.format(m.shape, n))
        order = sorted(range(n), key=lambda i: colors[i])
        self.colors = tuple(colors[i] for i in order)
        self.matrix = m.extract(order, order) if n else m
        self._index = {c: i for i, c in enumerate(self.colors)}

    @classmethod
    def from_entries(cls, colors, entries):
        """entries: {(a, b): q}, filled symmetrically."""
        colors = tuple(sorted(colors))
        index = {c: i for i, c in enumerate(colors)}
        m = Matrix.zeros(len(colors), len(colors))
        for (a, b), q in entries.items():
            if a not in index or b not in index:
                raise ShapeError('color {0} is not an index of the matrix'.format(
                    a if a not in index else b))
            m[index[a], index[b]] = _sym(q)
            m[index[b], index[a]] = _sym(q)
        return cls(colors, m)

    @property
    def size(self):
        return len(self.colors)

    def entry(self, a, b):
        try:
            return QQ.from_sympy(self.matrix[self._index[a], self._index[b]])
        except KeyError:
            raise PairingError('color {0} is not an index of the matrix'.format(
                a if a not in self._index else b))

    def block(self, rows, cols):
        return self.matrix.extract([self._index[c] for c in rows],
                                   [self._index[c] for c in cols])

    def restrict(self, colors):
        colors = sorted(colors)
        return StrutMatrix(colors, self.block(colors, colors))

    def is_symmetric(self):
        return self.matrix == self.matrix.T

    def is_zero(self):
        return all(x == 0 for x in self.matrix)

    def entries(self):
        """Yield (a, b, q) for nonzero entries with a <= b."""
        for i, a in enumerate(self.colors):
            for j in range(i, len(self.colors)):
                if self.matrix[i, j] != 0:
                    yield a, self.colors[j], QQ.from_sympy(self.matrix[i, j])

    def __neg__(self):
        return StrutMatrix(self.colors, -self.matrix)

    def __add__(self, other):
        if self.colors != other.colors:
            raise ShapeError('strut matrices over different colors')
        return StrutMatrix(self.colors, self.matrix + other.matrix)

    def __eq__(self, other):
        return (isinstance(other, StrutMatrix) and self.colors == other.colors
                and self.matrix == other.matrix)

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def inverse(self):
        if not self.colors:
            return self
        if self.matrix.det(method='bareiss') == 0:
            raise DegenerateGaussianError('singular strut matrix')
        return StrutMatrix(self.colors, self.matrix.inv(method='GE'))

    def log_struts(self, max_ideg):
        """The strut series whose exponential is [M/2]."""
        terms = []
        for a, b, q in self.entries():
            terms.append((q / 2 if a == b else q, (diagrams.strut(a, b),)))
        return Series.from_terms(max_ideg, terms)

    def exponential(self, max_ideg, order):
        return self.log_struts(max_ideg).exp(order)

    def __str__(self):
        if not self.colors or self.is_zero():
            return '[]'
        rows = ['color=' + ','.join(str(c) for c in self.colors)]
        for i in range(self.size):
            rows.append(' '.join(format_rational(QQ.from_sympy(x))
                                 for x in self.matrix.row(i)))
        return '[' + '; '.join(rows) + ']'

    def __repr__(self):
        return 'StrutMatrix({0})'.format(self)


#
# Gluing.
#

def _s_legs(monomial, S, first):
    """S-legs of a monomial as (slot, color, class).

    Legs of identical components with a single S-leg share a class, since
    gluing to one or another of them gives the same diagram.
    """
    out = []
    for k, d in enumerate(monomial):
        legs = [(i, c) for i, c in enumerate(d.legs) if c in S]
        for i, c in legs:
            slot = (first + k, i)
            out.append((slot, c, (d, i) if len(legs) == 1 else slot))
    return out


def all_pairings(items):
    """Yield all perfect matchings of items as lists of pairs."""
    items = list(items)
    if not items:
        yield []
        return
    first = items.pop(0)
    for i, item in enumerate(items):
        for rest in all_pairings(items[:i] + items[i + 1:]):
            yield [(first, item)] + rest


def _spread(r, caps):
    """Count vectors summing to r, bounded entrywise by caps."""
    if not caps:
        if r == 0:
            yield ()
        return
    for k in range(min(r, caps[0]), -1, -1):
        for rest in _spread(r - k, caps[1:]):
            yield (k,) + rest


def _assignments(es, ds):
    """Yield (multiplicity, joins, unused) gluing every D slot to an E slot.

    es and ds are lists of slot lists, one list per class.  Assignments
    that differ only by permuting slots inside classes are yielded once.
    """
    def walk(i, used, weight, joins):
        if i == len(ds):
            yield weight, joins, [s for slots, n in zip(es, used) for s in slots[n:]]
            return
        members = ds[i]
        caps = [len(slots) - n for slots, n in zip(es, used)]
        for counts in _spread(len(members), caps):
            w = weight * factorial(len(members))
            more = list(joins)
            now = list(used)
            it = iter(members)
            for j, k in enumerate(counts):
                if k:
                    w *= comb(caps[j], k)
                    more.extend((next(it), s) for s in es[j][used[j]:used[j] + k])
                    now[j] += k
            yield from walk(i + 1, now, w, more)

    yield from walk(0, [0] * len(es), 1, [])


def _gluings(e_legs, d_legs, weight):
    """Yield (coefficient, joins) for every admissible gluing.

    Each D leg is glued to an E leg of the same color.  With weight None
    every E leg must be used; otherwise the leftover E legs are matched
    among themselves, a pair of colors (a, b) contributing weight(a, b).
    """
    e_by, d_by = {}, {}
    for slot, c, cls in e_legs:
        e_by.setdefault(c, {}).setdefault(cls, []).append(slot)
    for slot, c, cls in d_legs:
        d_by.setdefault(c, {}).setdefault(cls, []).append(slot)
    groups = []
    for c in sorted(set(e_by) | set(d_by)):
        es = list(e_by.get(c, {}).values())
        ds = list(d_by.get(c, {}).values())
        ne, nd = sum(map(len, es)), sum(map(len, ds))
        if nd > ne or (weight is None and nd != ne):
            return
        groups.append((c, es, ds))
    for choice in itertools.product(*[list(_assignments(es, ds)) for _, es, ds in groups]):
        n = 1
        joins = []
        rest = []
        for (c, _, _), (k, chosen, unused) in zip(groups, choice):
            n *= k
            joins.extend(chosen)
            rest.extend((e, c) for e in unused)
        if weight is None:
            yield QQ(n), joins
            continue
        for matching in all_pairings(rest):
            w = QQ(n)
            for (a, ca), (b, cb) in matching:
                w *= weight(ca, cb)
                if not w:
                    break
            if w:
                yield w, joins + [(a, b) for (a, _), (b, _) in matching]


@lru_cache(maxsize=1 << 16)
def _glue(components, joins):
    """Glue legs of the given diagrams; return the resulting components."""
    offsets = []
    total = 0
    for d in components:
        offsets.append(total)
        total += 3 * d.n + len(d.legs)

    def leg_id(slot):
        k, i = slot
        return offsets[k] + 3 * components[k].n + i

    partner = {}
    owner = {}
    color = {}
    for k, d in enumerate(components):
        off = offsets[k]
        for a, b in d.edges:
            partner[off + a] = off + b
            partner[off + b] = off + a
        for h in range(3 * d.n):
            owner[off + h] = ('v', k, h // 3)
        for i, c in enumerate(d.legs):
            owner[off + 3 * d.n + i] = ('l', off + 3 * d.n + i)
            color[off + 3 * d.n + i] = c

    glue = {}
    for a, b in joins:
        ha, hb = leg_id(a), leg_id(b)
        glue[ha] = hb
        glue[hb] = ha

    used = set()
    edges = set()
    for h in range(total):
        if h in glue:
            continue
        x = partner[h]
        while x in glue:
            used.add(x)
            used.add(glue[x])
            x = partner[glue[x]]
        edges.add((min(h, x), max(h, x)))
    if len(used) != len(glue):
        raise PairingError('gluing closes a circle without vertices')

    links = [(owner[a], owner[b]) for a, b in edges]
    nodes = list(dict.fromkeys(v for link in links for v in link))
    return tuple(_assemble(set(part), edges, owner, offsets, color)
                 for part in connected_components((nodes, links)))


def _assemble(nodes, edges, owner, offsets, color):
    vertices = sorted(v for v in nodes if v[0] == 'v')
    legs = sorted(x[1] for x in nodes if x[0] == 'l')
    new = {}
    for i, (_, k, v) in enumerate(vertices):
        base = offsets[k] + 3 * v
        for r in range(3):
            new[base + r] = 3 * i + r
    for j, h in enumerate(legs):
        new[h] = 3 * len(vertices) + j
    pairs = [(new[a], new[b]) for a, b in edges if a in new]
    return diagrams.Diagram.build(len(vertices), [color[h] for h in legs], pairs)


def is_substantial(x, S):
    """No strut of x has both legs colored in S."""
    S = frozenset(S)
    return not any(d.is_strut and d.legs[0] in S and d.legs[1] in S
                   for m in x.terms for d in m)


def bracket(E, D, S, M=None):
    """Sum over all ways of gluing the S-legs of D to S-legs of E.

    With a strut matrix M the bracket is taken against [M/2] ⊔ D, so the
    S-legs of E left over are matched among themselves with weights M.
    """
    E._check(D)
    S = frozenset(S)
    weight = M.entry if M is not None else None
    by_signature = {}
    for md, qd in D.terms.items():
        key = tuple(sorted(c for d in md for c in d.legs if c in S))
        by_signature.setdefault(key, []).append((md, qd))
    terms = []
    for me, qe in E.terms.items():
        e_legs = _s_legs(me, S, 0)
        de = ideg(me)
        if weight is None:
            candidates = by_signature.get(tuple(sorted(c for _, c, _ in e_legs)), ())
        else:
            candidates = D.terms.items()
        for md, qd in candidates:
            if de + ideg(md) > E.max_ideg:
                continue
            d_legs = _s_legs(md, S, len(me))
            for w, joins in _gluings(e_legs, d_legs, weight):
                terms.append((qe * qd * w, _glue(me + md, tuple(joins))))
    return Series.from_terms(E.max_ideg, terms)


def contract_finite(E, D, S):
    if not (is_substantial(E, S) or is_substantial(D, S)):
        raise PairingError('neither side of the bracket is substantial')
    return bracket(E, D, S)


def wick_contract(M, D):
    if not M.is_symmetric():
        raise PairingError('Wick weights must be symmetric')
    S = frozenset(M.colors)
    if not is_substantial(D, S):
        raise PairingError('integrand has a strut with both legs contracted')
    return bracket(D, Series.one(D.max_ideg), S, M)


def gaussian_integrate(L, P, S=None):
    if S is not None and frozenset(S) != frozenset(L.colors):
        L = L.restrict(S)
    return wick_contract(-L.inverse(), P)


def gaussian_integrate_partial(L, P, S):
    """Integrate [L/2] ⊔ P along S only.

    Returns (L', P') with [L'/2] ⊔ P' the result, L' the Schur complement
    over the remaining colors of L.
    """
    S = sorted(S)
    rest = [c for c in L.colors if c not in S]
    if not set(S) <= set(L.colors):
        raise ShapeError('integration colors are not indices of L')
    A = L.restrict(S)
    Ainv = A.inverse()
    B = L.block(S, rest)
    shift = -Ainv.matrix * B
    schur = L.block(rest, rest) - B.T * Ainv.matrix * B
    sigma = {c: {c: 1} for c in P.colors()}
    for i, s in enumerate(S):
        target = {s: QQ(1)}
        for j, t in enumerate(rest):
            if shift[i, j] != 0:
                target[t] = QQ.from_sympy(shift[i, j])
        sigma[s] = target
    shifted = P.recolor(sigma)
    return StrutMatrix(rest, schur), wick_contract(-Ainv, shifted)


def check_group_like_closure(E, D, S):
    if not (E.is_group_like() and D.is_group_like()):
        raise PairingError('closure check needs group-like arguments')
    return contract_finite(E, D, S).is_group_like()


def split_series(x, colors):
    """Split a group-like series with struts into (W, Y) with x = [W/2] ⊔ Y."""
    if x.empty_coefficient() != 1:
        raise PairingError('series is not group-like')
    entries = {}
    for m, q in x.terms.items():
        if len(m) == 1 and m[0].is_strut:
            a, b = m[0].legs
            entries[(a, b)] = 2 * q if a == b else q
    W = StrutMatrix.from_entries(colors, entries)
    return W, x.strutless_part()
