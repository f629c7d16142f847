import logging

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, QQ

from lmocalc import samples, tscat
from lmocalc.coblang import compile_expr, evaluate
from lmocalc.diagrams import MINUS, PLUS, H, Y, bubble, minus, plus, theta
from lmocalc.errors import ShapeError, TruncationError
from lmocalc.generators import chi_identity
from lmocalc.pairing import StrutMatrix
from lmocalc.series import Series, ideg
from lmocalc.tscat import TsElement, compose, identity, star, star_inverse, tensor

m1, m2 = minus(1), minus(2)
p1, p2, p3 = plus(1), plus(2), plus(3)


def test_identity_is_antidiagonal():
    W = identity(2).W
    assert W.colors == (m1, m2, p1, p2)
    assert W.matrix == Matrix([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])


def test_element_validation():
    with pytest.raises(ShapeError):
        TsElement(1, 0, StrutMatrix([p1], [[1]]), Series.one(2))
    with pytest.raises(ShapeError):
        TsElement(1, 1, StrutMatrix([m1]), Series.one(2))
    with pytest.raises(ShapeError):
        TsElement(1, 1, identity(1).W, Series.from_diagram(2, Y(m1, p1, p2)).exp())


def test_compose_arity_mismatch():
    with pytest.raises(ShapeError):
        compose(identity(1), identity(2))
    with pytest.raises(TruncationError):
        compose(identity(1, 1), identity(1, 2))


def test_tensor_arity_and_recoloring():
    a = TsElement(1, 1, identity(1).W, Series.from_diagram(2, bubble(m1, p1)).exp())
    b = tensor(identity(1), a)
    assert (b.g, b.f) == (2, 2)
    assert b.W == identity(2).W
    assert b.y == Series.from_diagram(2, bubble(m2, p2)).exp()


def test_compose_lk():
    # identity after an element 0 -> 2
    A = tscat.tensor_lk(identity(1).W, identity(1).W)
    assert A == identity(2).W
    B = StrutMatrix.from_entries(tscat.element_colors(0, 2), {(m1, m2): -1})
    assert tscat.compose_lk(A, B) == B


def test_star_inverse_of_identity_value():
    expected = Series.from_terms(2, [
        (1, ()),
        ('-1/8', (bubble(m1, p1),)),
        ('-1/48', (bubble(p1, p1),)),
        ('1/8', (H(m1, p1, p1, m1),)),
    ])
    t1 = star_inverse(chi_identity(2), 1)
    assert t1 == expected
    assert star(chi_identity(2), t1, 1) == Series.one(2)
    assert star(t1, chi_identity(2), 1) == Series.one(2)


def test_star_with_trivial():
    x = Series.from_diagram(2, Y(m1, p1, p2)).exp()
    assert star(Series.one(2), x, 2) == x
    assert star(x, Series.one(2), 2) == x


def test_star_rejects_stray_colors():
    with pytest.raises(ShapeError):
        star(Series.from_diagram(2, Y(m1, p1, p3)).exp(), Series.one(2), 2)


def test_fill_in_warns_on_nonzero_w(caplog):
    with caplog.at_level(logging.WARNING, logger='lmocalc.tscat'):
        assert tscat.fill_in(identity(1)) == Series.one(2)
    assert 'nonzero W' in caplog.text


def test_fill_in_of_poincare_value():
    value = evaluate(compile_expr('Y o (v+ x v+ x v+)'))
    assert value.W.is_zero()
    assert tscat.fill_in(value).coefficient((theta(),)) == QQ(1, 2)


def test_truncate_and_parts():
    a = samples.random_split(samples.rng_for(3), 1, 1, 2)
    assert a.truncate(1).max_ideg == 1
    assert a.log_y().exp() == a.y
    assert a.s_part() == a.W.log_struts(2)
    assert a.is_group_like()


def split_pair(rng, max_ideg=2):
    """Composable random elements h -> 2 -> f."""
    f, h = rng.randint(1, 2), rng.randint(1, 2)
    return samples.random_split(rng, 2, f, max_ideg, terms=2), \
        samples.random_split(rng, h, 2, max_ideg, terms=2)


def y_parts_meet(a, b):
    """Some Y term of a has a top leg i+ where one of b has the bottom leg i-."""
    def keys(x, kind):
        return [(ideg(m), {c.key for d in m for c in d.legs if c.kind == kind})
                for m in x.terms]
    return any(da + db <= a.max_ideg and ka & kb
               for da, ka in keys(a.y, PLUS) for db, kb in keys(b.y, MINUS))


def test_random_pairs_glue_their_y_parts():
    rng = samples.rng_for(0)
    pairs = [split_pair(rng) for _ in range(100)]
    assert sum(y_parts_meet(a, b) for a, b in pairs) >= 40


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_identity_laws(seed):
    rng = samples.rng_for(seed)
    g, f = rng.randint(0, 2), rng.randint(0, 2)
    a = samples.random_split(rng, g, f, 2, terms=2)
    assert compose(identity(f), a) == a
    assert compose(a, identity(g)) == a


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_split_composition_matches_expansion(seed):
    a, b = split_pair(samples.rng_for(seed))
    assert compose(a, b) == tscat.compose_expanded(a, b)


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_split_composition_matches_expansion_at_ideg_3(seed):
    rng = samples.rng_for(seed)
    a = samples.random_split(rng, 1, 1, 3, terms=2)
    b = samples.random_split(rng, 1, 1, 3, terms=2)
    assert compose(a, b) == tscat.compose_expanded(a, b)


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_exponential_shifts(seed):
    rng = samples.rng_for(seed)
    a, b = split_pair(rng)
    D = samples.random_shift(rng, b.g, 2)
    assert tscat.exponential_shift(a, b, D) == compose(a, tscat.with_struts(b, D))
    C = samples.random_shift(rng, a.f, 2)
    assert tscat.exponential_shift_left(C, a, b) == compose(tscat.with_struts_left(a, C), b)


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_composition_keeps_group_likeness(seed):
    a, b = split_pair(samples.rng_for(seed))
    assert compose(a, b).is_group_like()


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_composition_is_associative(seed):
    rng = samples.rng_for(seed)
    f, g, h, k = (rng.randint(1, 2) for _ in range(4))
    a = samples.random_split(rng, g, f, 2, terms=2)
    b = samples.random_split(rng, h, g, 2, terms=2)
    c = samples.random_split(rng, k, h, 2, terms=2)
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@settings(max_examples=5, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_composition_is_associative_at_ideg_3(seed):
    rng = samples.rng_for(seed)
    a, b, c = (samples.random_split(rng, 1, 1, 3, terms=2, top=2) for _ in range(3))
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_tensor_interchange(seed):
    rng = samples.rng_for(seed)
    a, b, c, d = (samples.random_split(rng, 1, 1, 2, terms=2) for _ in range(4))
    assert compose(tensor(a, b), tensor(c, d)) == tensor(compose(a, c), compose(b, d))


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_star_inverse_is_an_involution(seed):
    rng = samples.rng_for(seed)
    g = rng.randint(1, 2)
    x = samples.random_cylinder(rng, g, 2, terms=2).y
    inverse = star_inverse(x, g)
    assert star(x, inverse, g) == Series.one(2)
    assert star_inverse(inverse, g) == x
