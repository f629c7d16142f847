#!/usr/bin/python3
#
# Truncated series of Jacobi diagrams.
#
# A monomial is a sorted tuple of canonical basis diagrams (its connected
# components); the empty tuple is the empty diagram.  A Series maps
# monomials to exact rationals and never holds a monomial of total i-deg
# above max_ideg.

import itertools
import re

from sympy import QQ

from lmocalc import diagrams
from lmocalc.errors import NormalFormError, RecolorError, TruncationError

_RATIONAL = re.compile(r'^(-?\d+)(?:/(\d+))?$')


def qq(x):
    """Coerce ints, 'p/q' strings, sympy Rationals and QQ elements to QQ."""
    if isinstance(x, str):
        m = _RATIONAL.match(x.strip())
        if not m:
            raise ValueError('not a rational: {0!r}'.format(x))
        return QQ(int(m.group(1)), int(m.group(2) or 1))
    return QQ.convert(x)


def format_rational(q):
    if q.denominator == 1:
        return str(q.numerator)
    return '{0}/{1}'.format(q.numerator, q.denominator)


def ideg(monomial):
    return sum(d.n for d in monomial)


def format_monomial(monomial):
    """Return (text, sign) for a monomial."""
    if not monomial:
        return '∅', 1
    parts = []
    sign = 1
    for d in monomial:
        text, s = d.describe()
        parts.append(text)
        sign *= s
    return '|'.join(parts), sign


def _sort_key(monomial):
    return (ideg(monomial), len(monomial), monomial)


class Series(object):
    __slots__ = ('max_ideg', 'terms')

    def __init__(self, max_ideg, terms=None):
        # terms must already be reduced; use from_terms otherwise
        self.max_ideg = max_ideg
        self.terms = {m: q for m, q in (terms or {}).items() if q}

    @classmethod
    def zero(cls, max_ideg):
        return cls(max_ideg)

    @classmethod
    def one(cls, max_ideg):
        return cls(max_ideg, {(): QQ(1)})

    @classmethod
    def from_terms(cls, max_ideg, terms):
        """Reduce an iterable of (coefficient, components) to normal form."""
        out = {}
        for coef, components in terms:
            coef = qq(coef)
            if not coef or ideg(components) > max_ideg:
                continue
            partial = {(): coef}
            for d in components:
                expansion = diagrams.expand(d)
                partial = {m + (b,): q * w for m, q in partial.items()
                           for b, w in expansion.items()}
                if not partial:
                    break
            for m, q in partial.items():
                key = tuple(sorted(m))
                out[key] = out.get(key, QQ(0)) + q
        return cls(max_ideg, out)

    @classmethod
    def from_diagram(cls, max_ideg, d, coef=1):
        return cls.from_terms(max_ideg, [(coef, (d,))])

    def _check(self, other):
        if not isinstance(other, Series):
            raise TypeError('expected a Series, got {0!r}'.format(other))
        if other.max_ideg != self.max_ideg:
            raise TruncationError('truncation mismatch: {0} vs {1}'.format(
                self.max_ideg, other.max_ideg))

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, q in other.terms.items():
            out[m] = out.get(m, QQ(0)) + q
        return Series(self.max_ideg, out)

    def __neg__(self):
        return Series(self.max_ideg, {m: -q for m, q in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = qq(c)
        return Series(self.max_ideg, {m: q * c for m, q in self.terms.items()})

    def union(self, other):
        """Disjoint union, bilinear and truncated."""
        self._check(other)
        out = {}
        for m1, q1 in self.terms.items():
            d1 = ideg(m1)
            for m2, q2 in other.terms.items():
                if d1 + ideg(m2) > self.max_ideg:
                    continue
                m = tuple(sorted(m1 + m2))
                out[m] = out.get(m, QQ(0)) + q1 * q2
        return Series(self.max_ideg, out)

    def __mul__(self, other):
        if isinstance(other, Series):
            return self.union(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        return isinstance(other, Series) and self.terms == other.terms

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        for m in self.monomials():
            yield m, self.terms[m]

    def monomials(self):
        return sorted(self.terms, key=_sort_key)

    def empty_coefficient(self):
        return self.terms.get((), QQ(0))

    def coefficient(self, monomial):
        """Coefficient of a monomial given as a diagram or a tuple of them.

        The monomial is first brought to normal form; it must reduce to a
        nonzero multiple of a single basis monomial.
        """
        if isinstance(monomial, diagrams.Diagram):
            monomial = (monomial,)
        monomial = tuple(monomial)
        reduced = Series.from_terms(max(self.max_ideg, ideg(monomial)),
                                    [(1, monomial)])
        if len(reduced.terms) != 1:
            raise NormalFormError('{0} is not a multiple of a basis monomial'.format(
                format_monomial(monomial)[0]))
        (m, c), = reduced.terms.items()
        return self.terms.get(m, QQ(0)) / c

    def truncate(self, n):
        return Series(n, {m: q for m, q in self.terms.items() if ideg(m) <= n})

    def homogeneous(self, k):
        return Series(self.max_ideg,
                      {m: q for m, q in self.terms.items() if ideg(m) == k})

    def is_strutless(self):
        return not any(d.is_strut for m in self.terms for d in m)

    def strutless_part(self):
        return Series(self.max_ideg, {m: q for m, q in self.terms.items()
                                      if not any(d.is_strut for d in m)})

    def closed_part(self):
        return Series(self.max_ideg, {m: q for m, q in self.terms.items()
                                      if all(d.is_closed for d in m)})

    def connected_part(self):
        return Series(self.max_ideg,
                      {m: q for m, q in self.terms.items() if len(m) == 1})

    def tree_reduce(self):
        return Series(self.max_ideg, {m: q for m, q in self.terms.items()
                                      if all(d.betti == 0 for d in m)})

    def colors(self):
        return {c for m in self.terms for d in m for c in d.legs}

    def exp(self, order=None):
        """Disjoint-union exponential; struts need an explicit order bound."""
        if self.empty_coefficient():
            raise TruncationError('exp needs a zero coefficient on the empty diagram')
        if order is None and not self.is_strutless():
            raise TruncationError('exp of a series with struts needs an order')
        result = Series.one(self.max_ideg)
        power = Series.one(self.max_ideg)
        for k in itertools.count(1):
            if order is not None and k > order:
                break
            power = power.union(self).scale(QQ(1, k))
            if not power:
                break
            result = result + power
        return result

    def log(self):
        if self.empty_coefficient() != 1:
            raise TruncationError('log needs coefficient 1 on the empty diagram')
        if not self.is_strutless():
            raise TruncationError('log is only defined on strutless series')
        rest = self - Series.one(self.max_ideg)
        result = Series.zero(self.max_ideg)
        power = Series.one(self.max_ideg)
        for k in itertools.count(1):
            power = power.union(rest)
            if not power:
                break
            result = result + power.scale(QQ((-1) ** (k + 1), k))
        return result

    def is_group_like(self):
        if self.empty_coefficient() != 1 or not self.is_strutless():
            return False
        return all(len(m) == 1 for m in self.log().terms)

    def recolor(self, sigma):
        """Multilinear leg substitution.

        sigma maps each occurring color to a dict {color: coefficient}; an
        empty dict deletes every diagram with that color.
        """
        sigma = {c: _combination(t) for c, t in sigma.items()}
        terms = []
        for m, q in self.terms.items():
            options = [_recolor_diagram(d, sigma) for d in m]
            for choice in itertools.product(*options):
                coef = q
                for w, _ in choice:
                    coef *= w
                terms.append((coef, tuple(d for _, d in choice)))
        return Series.from_terms(self.max_ideg, terms)

    def __str__(self):
        if not self.terms:
            return '0'
        pieces = []
        for m in self.monomials():
            text, sign = format_monomial(m)
            q = self.terms[m] * sign
            body = '{0}*{1}'.format(format_rational(abs(q)), text)
            if not pieces:
                pieces.append(('-' if q < 0 else '') + body)
            else:
                pieces.append((' - ' if q < 0 else ' + ') + body)
        return ''.join(pieces)

    def __repr__(self):
        return 'Series({0}, {1})'.format(self.max_ideg, self)


def _combination(target):
    if isinstance(target, diagrams.Color):
        return {target: QQ(1)}
    if not target:
        return {}
    return {c: qq(w) for c, w in dict(target).items() if w}


def _recolor_diagram(d, sigma):
    choices = []
    for c in d.legs:
        if c not in sigma:
            raise RecolorError('no substitution for color {0}'.format(c))
        choices.append(list(sigma[c].items()))
    out = []
    for pick in itertools.product(*choices):
        w = QQ(1)
        for _, weight in pick:
            w *= weight
        out.append((w, d._replace(legs=tuple(c for c, _ in pick))))
    return out
