#!/usr/bin/python3
#
# Homology cylinders: values with the antidiagonal linking matrix, their
# star product, Casson invariant and the Morita formula.

import logging
from collections import namedtuple

from lmocalc.diagrams import theta
from lmocalc.errors import EvaluationError, ShapeError, TruncationError
from lmocalc.generators import builtin_degree2, value_of
from lmocalc.series import Series
from lmocalc import tscat

log = logging.getLogger(__name__)

MoritaResult = namedtuple('MoritaResult', ['lhs', 'rhs', 'equal'])


def cylinder_lk(g):
    return tscat.identity(g).W


def is_cylinder(a):
    return a.g == a.f and a.W == cylinder_lk(a.g)


class CylinderValue(object):
    __slots__ = ('g', 'y')

    def __init__(self, g, y):
        tscat.TsElement(g, g, cylinder_lk(g), y)
        if not y.is_group_like():
            raise ShapeError('a cylinder value must be group-like')
        self.g = g
        self.y = y

    @property
    def max_ideg(self):
        return self.y.max_ideg

    @classmethod
    def trivial(cls, g, max_ideg=2):
        return cls(g, Series.one(max_ideg))

    @classmethod
    def from_element(cls, a):
        if not is_cylinder(a):
            raise ShapeError('element {0} -> {1} does not have a cylinder W'.format(a.g, a.f))
        return cls(a.g, a.y)

    def to_element(self):
        return tscat.TsElement(self.g, self.g, cylinder_lk(self.g), self.y)

    def __eq__(self, other):
        return isinstance(other, CylinderValue) and self.g == other.g and self.y == other.y

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def __str__(self):
        return 'genus {0}: {1}'.format(self.g, self.y)


def cyl_compose(a, b):
    if a.g != b.g:
        raise ShapeError('genus mismatch: {0} vs {1}'.format(a.g, b.g))
    return CylinderValue(a.g, tscat.star(a.y, b.y, a.g))


def tau1(a):
    return a.y.log().homogeneous(1)


def theta_coefficient(x):
    if x.max_ideg < 2:
        raise TruncationError('the theta coefficient needs i-deg 2')
    return x.coefficient(theta())


def casson_lambda(a):
    if (a.g, a.f) != (0, 0):
        raise ShapeError('the Casson invariant needs an element 0 -> 0, got {0} -> {1}'.format(
            a.g, a.f))
    return 2 * theta_coefficient(a.y)


def _power(name, g, table, max_ideg):
    if max_ideg > table.max_ideg:
        raise EvaluationError('i-deg {0} exceeds the table i-deg {1}'.format(
            max_ideg, table.max_ideg))
    one = value_of(name, table).truncate(max_ideg)
    result = tscat.identity(0, max_ideg)
    for _ in range(g):
        result = tscat.tensor(result, one)
    return result


def fill(a, table=None):
    """eps^g ∘ a ∘ eta^g for an element g -> g."""
    if a.g != a.f:
        raise ShapeError('fill needs an element g -> g, got {0} -> {1}'.format(a.g, a.f))
    if table is None:
        table = builtin_degree2()
    eps = _power('eps', a.g, table, a.max_ideg)
    eta = _power('eta', a.g, table, a.max_ideg)
    return tscat.compose(eps, tscat.compose(a, eta))


def fill_casson(a, table=None):
    return casson_lambda(fill(a, table))


def morita_check(M, N, table=None):
    lhs = fill_casson(cyl_compose(M, N).to_element(), table)
    rhs = (fill_casson(M.to_element(), table)
           + fill_casson(N.to_element(), table)
           + 2 * theta_coefficient(tscat.star(tau1(M), tau1(N), M.g)))
    log.debug('morita: lhs %s rhs %s', lhs, rhs)
    return MoritaResult(lhs, rhs, lhs == rhs)
