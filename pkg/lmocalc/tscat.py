#!/usr/bin/python3
#
# Top-substantial diagrams stored in split form [W/2] ⊔ Y.
#
# A morphism g -> f has legs colored 1+..g+ (top) and 1-..f- (bottom).
# W is indexed by the bottom colors first, then the top ones, and has no
# top-top struts.

import logging
from collections import Counter
from itertools import combinations_with_replacement, product
from math import factorial

from sympy import Matrix, QQ, eye

from lmocalc import diagrams
from lmocalc.diagrams import MINUS, PLUS, STAR, minus, minuses, plus, pluses, stars
from lmocalc.errors import ShapeError, TruncationError
from lmocalc.pairing import StrutMatrix, bracket, contract_finite, split_series
from lmocalc.series import Series, ideg

log = logging.getLogger(__name__)


def element_colors(g, f):
    return minuses(f) + pluses(g)


def _blocks(W, f):
    m = W.matrix
    low = list(range(f))
    high = list(range(f, m.rows))
    return m.extract(low, low), m.extract(low, high), m.extract(high, low), m.extract(high, high)


def _from_blocks(g, f, mm, mp, pm):
    m = Matrix.zeros(f + g, f + g)
    for i in range(f):
        for j in range(f):
            m[i, j] = mm[i, j]
        for j in range(g):
            m[i, f + j] = mp[i, j]
            m[f + j, i] = pm[j, i]
    return StrutMatrix(element_colors(g, f), m)


def _arity(W):
    f = sum(1 for c in W.colors if c.kind == MINUS)
    return W.size - f, f


class TsElement(object):
    __slots__ = ('g', 'f', 'W', 'y')

    def __init__(self, g, f, W, y):
        if W.colors != element_colors(g, f):
            raise ShapeError('W is not indexed by the colors of {0} -> {1}'.format(g, f))
        if not W.is_symmetric():
            raise ShapeError('W is not symmetric')
        if any(x != 0 for x in _blocks(W, f)[3]):
            raise ShapeError('W has a strut between two top colors')
        if not y.is_strutless():
            raise ShapeError('the Y-part contains a strut')
        stray = y.colors() - set(W.colors)
        if stray:
            raise ShapeError('Y-part uses colors outside {0} -> {1}: {2}'.format(
                g, f, ','.join(str(c) for c in sorted(stray))))
        self.g = g
        self.f = f
        self.W = W
        self.y = y

    @property
    def max_ideg(self):
        return self.y.max_ideg

    def blocks(self):
        """(W--, W-+, W+-) as sympy matrices."""
        return _blocks(self.W, self.f)[:3]

    def truncate(self, n):
        return TsElement(self.g, self.f, self.W, self.y.truncate(n))

    def log_y(self):
        return self.y.log()

    def s_part(self):
        """Logarithm of the strut part, i.e. the series W/2."""
        return self.W.log_struts(self.max_ideg)

    def is_group_like(self):
        return self.y.is_group_like()

    def __eq__(self, other):
        return (isinstance(other, TsElement) and (self.g, self.f) == (other.g, other.f)
                and self.W == other.W and self.y == other.y)

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def __str__(self):
        return 'W = {0}; Y = {1}'.format(self.W, self.y)

    def __repr__(self):
        return 'TsElement({0} -> {1}: {2})'.format(self.g, self.f, self)


def identity(g, max_ideg=2):
    return TsElement(g, g, _from_blocks(g, g, Matrix.zeros(g, g), eye(g), eye(g)),
                     Series.one(max_ideg))


def empty(g, f, max_ideg=2):
    return TsElement(g, f, StrutMatrix(element_colors(g, f)), Series.one(max_ideg))


def tensor_lk(A, B):
    ga, fa = _arity(A)
    gb, fb = _arity(B)
    f, g = fa + fb, ga + gb
    pos_a = list(range(fa)) + [f + i for i in range(ga)]
    pos_b = [fa + i for i in range(fb)] + [f + ga + i for i in range(gb)]
    m = Matrix.zeros(f + g, f + g)
    for src, pos in ((A, pos_a), (B, pos_b)):
        for i, p in enumerate(pos):
            for j, q in enumerate(pos):
                m[p, q] = src.matrix[i, j]
    return StrutMatrix(element_colors(g, f), m)


def tensor(a, b):
    if a.max_ideg != b.max_ideg:
        raise TruncationError('truncation mismatch: {0} vs {1}'.format(a.max_ideg, b.max_ideg))
    sigma = {minus(i): {minus(a.f + i): 1} for i in range(1, b.f + 1)}
    sigma.update({plus(i): {plus(a.g + i): 1} for i in range(1, b.g + 1)})
    return TsElement(a.g + b.g, a.f + b.f, tensor_lk(a.W, b.W),
                     a.y.union(b.y.recolor(sigma)))


def compose_lk(A, B):
    """W of a ∘ b from the W's alone."""
    g, f = _arity(A)
    h, g2 = _arity(B)
    if g != g2:
        raise ShapeError('cannot compose {0} -> {1} after {2} -> {3}'.format(g, f, h, g2))
    Amm, Amp, Apm, _ = _blocks(A, f)
    Bmm, Bmp, Bpm, _ = _blocks(B, g)
    return _from_blocks(h, f, Amm + Amp * Bmm * Apm, Amp * Bmp, Bpm * Apm)


def _add_terms(target, color, column):
    for k, x in enumerate(column):
        if x != 0:
            target[color(k + 1)] = target.get(color(k + 1), QQ(0)) + QQ.from_sympy(x)


def star_AB(x, y, A, B):
    """Y-part of the composite of [A/2] ⊔ x after [B/2] ⊔ y."""
    g, f = _arity(A)
    h, g2 = _arity(B)
    if g != g2:
        raise ShapeError('matrices of shapes {0} -> {1} and {2} -> {3} do not chain'.format(
            g, f, h, g2))
    _, Amp, _, _ = _blocks(A, f)
    Bmm, _, Bpm, _ = _blocks(B, g)
    AB = Amp * Bmm
    sx = {c: {c: 1} for c in minuses(f)}
    sy = {c: {c: 1} for c in pluses(h)}
    for i in range(1, g + 1):
        t = {diagrams.star(i): QQ(1)}
        _add_terms(t, plus, Bpm.col(i - 1))
        _add_terms(t, minus, AB.col(i - 1))
        sx[plus(i)] = t
        t = {diagrams.star(i): QQ(1)}
        _add_terms(t, minus, Amp.col(i - 1))
        sy[minus(i)] = t
    weights = StrutMatrix(stars(g), Bmm)
    return bracket(x.recolor(sx), y.recolor(sy), stars(g), weights)


def compose(a, b):
    """a ∘ b: do b, then a."""
    if a.g != b.f:
        raise ShapeError('cannot compose {0} -> {1} after {2} -> {3}'.format(a.g, a.f, b.g, b.f))
    if a.max_ideg != b.max_ideg:
        raise TruncationError('truncation mismatch: {0} vs {1}'.format(a.max_ideg, b.max_ideg))
    return TsElement(b.g, a.f, compose_lk(a.W, b.W), star_AB(a.y, b.y, a.W, b.W))


def _genus(*series):
    g = 0
    for x in series:
        for c in x.colors():
            if c.kind not in (MINUS, PLUS):
                raise ShapeError('color {0} is neither top nor bottom'.format(c))
            g = max(g, c.key)
    return g


def star(x, y, g=None):
    """The product of Y-parts of two cylinders of genus g."""
    top = _genus(x, y)
    if g is None:
        g = top
    elif top > g:
        raise ShapeError('series use colors beyond genus {0}'.format(g))
    sx = {c: {c: 1} for c in minuses(g)}
    sy = {c: {c: 1} for c in pluses(g)}
    for i in range(1, g + 1):
        sx[plus(i)] = {diagrams.star(i): 1, plus(i): 1}
        sy[minus(i)] = {diagrams.star(i): 1, minus(i): 1}
    return bracket(x.recolor(sx), y.recolor(sy), stars(g))


def star_inverse(x, g=None):
    if x.empty_coefficient() != 1:
        raise TruncationError('star_inverse needs coefficient 1 on the empty diagram')
    if g is None:
        g = _genus(x)
    z = Series.one(x.max_ideg)
    for k in range(1, x.max_ideg + 1):
        z = z - star(x, z, g).homogeneous(k)
    return z


def fill_in(a):
    if not a.W.is_zero():
        log.warning('fill_in discards a nonzero W')
    return a.y.recolor({c: {} for c in a.W.colors})


def with_struts(b, D):
    """b ⊔ [D] for an h+ x g- matrix D."""
    Bmm, Bmp, Bpm = b.blocks()
    D = Matrix(D)
    if D.shape != (b.g, b.f):
        raise ShapeError('shift matrix must be {0} x {1}'.format(b.g, b.f))
    return TsElement(b.g, b.f, _from_blocks(b.g, b.f, Bmm, Bmp + D.T, Bpm + D), b.y)


def with_struts_left(a, C):
    """[C] ⊔ a for an f- x g+ matrix C."""
    Amm, Amp, Apm = a.blocks()
    C = Matrix(C)
    if C.shape != (a.f, a.g):
        raise ShapeError('shift matrix must be {0} x {1}'.format(a.f, a.g))
    return TsElement(a.g, a.f, _from_blocks(a.g, a.f, Amm, Amp + C, Apm + C.T), a.y)


def _star_legs(monomial):
    return Counter(c for d in monomial for c in d.legs if c.kind == STAR)


def _strut_power(kinds, picks):
    """(coefficient, struts) of the product over t of (q_t s_t)^n_t / n_t!."""
    coef = QQ(1)
    struts = []
    for t, n in Counter(picks).items():
        s, q, _ = kinds[t]
        coef *= q ** n / QQ(factorial(n))
        struts.extend([s] * n)
    return coef, tuple(struts)


def compose_expanded(a, b, shift=None, left_shift=None):
    """a ∘ b by expanding both strut exponentials and gluing directly.

    shift (h x g) recolors the top legs of a as i+ -> i* + sum_j D[j,i] j+;
    left_shift (f x g) recolors the bottom legs of b as
    i- -> i* + sum_k C[k,i] k-.

    Only the terms of the two exponentials that can end in a single strut
    or in a strutless monomial are expanded.  For a pair of Y-monomials
    every lower strut but one must touch a star leg of a's monomial, and
    the upper struts then have to balance the star legs color by color.
    """
    if a.g != b.f:
        raise ShapeError('cannot compose {0} -> {1} after {2} -> {3}'.format(a.g, a.f, b.g, b.f))
    m = a.max_ideg
    g, f, h = a.g, a.f, b.g
    Amm, Amp, Apm = a.blocks()

    shift = Matrix(shift) if shift is not None else Matrix.zeros(h, g)
    left_shift = Matrix(left_shift) if left_shift is not None else Matrix.zeros(f, g)
    sx = {c: {c: 1} for c in minuses(f)}
    sy = {c: {c: 1} for c in pluses(h)}
    for i in range(1, g + 1):
        t = {diagrams.star(i): QQ(1)}
        _add_terms(t, plus, shift.col(i - 1))
        sx[plus(i)] = t
        t = {diagrams.star(i): QQ(1)}
        _add_terms(t, minus, left_shift.col(i - 1))
        sy[minus(i)] = t

    active = _from_blocks(g, f, Matrix.zeros(f, f), Amp, Apm)
    up = [(ms[0], q, _star_legs(ms)) for ms, q in active.log_struts(m).recolor(sx).terms.items()]
    low = [(ms[0], q, _star_legs(ms)) for ms, q in b.W.log_struts(m).recolor(sy).terms.items()]
    by_star = {}
    for t, (_, _, st) in enumerate(up):
        if st:
            by_star.setdefault(next(iter(st)), []).append(t)
    starred = [t for t, (_, _, st) in enumerate(low) if st]

    top, bottom = {}, {}
    for s, q, st in up:
        if not st:
            top[(s,)] = q
    for s, q, st in low:
        if not st:
            bottom[(s,)] = q
    ax = a.y.recolor(sx)
    by = b.y.recolor(sy)
    for ma, qa in ax.terms.items():
        P = _star_legs(ma)
        for mb, qb in by.terms.items():
            if ideg(ma) + ideg(mb) > m:
                continue
            Q = _star_legs(mb)
            budget = sum(P.values()) + (0 if ma or mb else 1)
            for size in range(budget + 1):
                for picks in combinations_with_replacement(starred, size):
                    l = Counter()
                    for t in picks:
                        l.update(low[t][2])
                    need = {i: Q[i] + l[i] - P[i] for i in stars(g)}
                    if any(n < 0 or (n and i not in by_star) for i, n in need.items()):
                        continue
                    coef, struts = _strut_power(low, picks)
                    bottom[tuple(sorted(mb + struts))] = qb * coef
                    for choice in product(*[combinations_with_replacement(by_star.get(i, ()), n)
                                            for i, n in need.items()]):
                        coef, struts = _strut_power(up, [t for c in choice for t in c])
                        top[tuple(sorted(ma + struts))] = qa * coef

    result = contract_finite(Series(m, top), Series(m, bottom), stars(g))
    W, y = split_series(result, element_colors(h, f))
    W = W + _from_blocks(h, f, Amm, Matrix.zeros(f, h), Matrix.zeros(h, f))
    return TsElement(h, f, W, y)


def exponential_shift(a, b, D):
    """a ∘ (b ⊔ [D]) through the shifted gluing of a's top legs."""
    return compose_expanded(a, b, shift=D)


def exponential_shift_left(C, a, b):
    """([C] ⊔ a) ∘ b through the shifted gluing of b's bottom legs."""
    return compose_expanded(a, b, left_shift=C)
