#!/usr/bin/python3
#
# Seeded random values for the check suites and the tests.  Every
# function takes a random.Random so runs are reproducible from a seed.

import random

from sympy import Matrix, Rational

from lmocalc.cylinders import CylinderValue
from lmocalc.diagrams import minuses, pluses, shapes, theta
from lmocalc.pairing import StrutMatrix
from lmocalc.series import Series
from lmocalc.tscat import TsElement, _blocks, _from_blocks, element_colors


def rng_for(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_rational(rng, bound=3):
    num = 0
    while num == 0:
        num = rng.randint(-bound, bound)
    return Rational(num, rng.randint(1, bound))


def _leg_counts(ideg, colors):
    # one-legged diagrams vanish
    counts = [k for k in range(ideg + 3) if (3 * ideg + k) % 2 == 0]
    if not colors:
        return [k for k in counts if k == 0]
    return [k for k in counts if k >= 2]


def _pick_legs(rng, colors, k, touch):
    """k leg colors, one from each touch group first, distinct while colors last."""
    legs = []
    for group in touch:
        free = [c for c in group if c not in legs]
        if free and len(legs) < k:
            legs.append(rng.choice(free))
    rest = [c for c in colors if c not in legs]
    need = k - len(legs)
    if need <= len(rest):
        legs += rng.sample(rest, need)
    else:
        legs += rest + [rng.choice(colors) for _ in range(need - len(rest))]
    rng.shuffle(legs)
    return tuple(legs)


def random_diagram(rng, colors, ideg, touch=()):
    """A random connected diagram of the given i-deg, or None if none exists.

    Every group in touch gets at least one leg when the diagram has enough
    legs.
    """
    colors = list(colors)
    counts = [k for k in _leg_counts(ideg, colors) if shapes(ideg, k)]
    if not counts:
        return None
    d = rng.choice(shapes(ideg, rng.choice(counts)))
    return d._replace(legs=_pick_legs(rng, colors, len(d.legs), touch))


def random_connected(rng, colors, max_ideg, terms=3, min_ideg=1, touch=()):
    """A random combination of connected strutless diagrams.

    The first term has i-deg min_ideg.
    """
    out = []
    for k in range(terms):
        n = min_ideg if k == 0 else rng.randint(min_ideg, max_ideg)
        d = random_diagram(rng, colors, n, touch)
        if d is not None:
            out.append((random_rational(rng), (d,)))
    return Series.from_terms(max_ideg, out)


def random_group_like(rng, colors, max_ideg, terms=3, top=None, touch=()):
    """exp of random_connected, with terms of i-deg at most top."""
    x = random_connected(rng, colors, min(top or max_ideg, max_ideg), terms, touch=touch)
    return Series(max_ideg, x.terms).exp()


def random_symmetric(rng, colors, bound=2, density=0.5):
    n = len(colors)
    m = Matrix.zeros(n, n)
    for i in range(n):
        for j in range(i, n):
            if rng.random() < density:
                m[i, j] = m[j, i] = rng.randint(-bound, bound)
    return StrutMatrix(colors, m)


def random_nondegenerate(rng, colors, bound=2):
    while True:
        M = random_symmetric(rng, colors, bound, density=0.8)
        if M.matrix.det(method='bareiss') != 0:
            return M


def random_split(rng, g, f, max_ideg=2, terms=3, top=None):
    """A random group-like element g -> f with a small integral W.

    Every Y term has a top leg and a bottom leg when g and f allow it.
    """
    colors = element_colors(g, f)
    mm, mp, pm, _ = _blocks(random_symmetric(rng, colors), f)
    W = _from_blocks(g, f, mm, mp, pm)
    touch = [group for group in (pluses(g), minuses(f)) if group]
    return TsElement(g, f, W, random_group_like(rng, colors, max_ideg, terms, top, touch))


def random_shift(rng, rows, cols, bound=2):
    return Matrix(rows, cols, lambda i, j: rng.randint(-bound, bound))


def random_cylinder(rng, g, max_ideg=2, terms=3, side=None):
    """A random cylinder value g -> g.

    side '+' or '-' adds a tree on the top or bottom colors only.  From
    i-deg 2 on a theta term is added as well.
    """
    colors = element_colors(g, g)
    x = random_connected(rng, colors, max_ideg, terms)
    extra = []
    if side is not None:
        tree = random_diagram(rng, pluses(g) if side == '+' else minuses(g), 1)
        if tree is not None:
            extra.append((random_rational(rng), (tree,)))
    if max_ideg >= 2:
        extra.append((random_rational(rng), (theta(),)))
    return CylinderValue(g, (x + Series.from_terms(max_ideg, extra)).exp())
