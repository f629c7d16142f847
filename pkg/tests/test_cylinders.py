import pytest
from hypothesis import given, settings, strategies as st

from lmocalc import samples, tscat
from lmocalc.coblang import compile_expr, evaluate
from lmocalc.cylinders import (CylinderValue, casson_lambda, cyl_compose, fill, fill_casson,
                               is_cylinder, morita_check, tau1, theta_coefficient)
from lmocalc.diagrams import Y, minus, plus, theta
from lmocalc.errors import ShapeError, TruncationError
from lmocalc.generators import builtin_degree2
from lmocalc.series import Series

m1, m2, m3 = minus(1), minus(2), minus(3)
p1, p2, p3 = plus(1), plus(2), plus(3)


def cylinder(g, *trees):
    x = Series.from_terms(2, [(1, (t,)) for t in trees])
    return CylinderValue(g, x.exp())


def test_is_cylinder():
    assert is_cylinder(tscat.identity(2))
    assert not is_cylinder(builtin_degree2()['v+'])
    assert not is_cylinder(builtin_degree2()['s'])


def test_cylinder_value_rejects_non_group_like():
    with pytest.raises(ShapeError):
        CylinderValue(3, Series.one(2) + Series.from_diagram(2, Y(p1, p2, p3)))
    with pytest.raises(ShapeError):
        CylinderValue.from_element(builtin_degree2()['s'])


def test_element_round_trip():
    M = cylinder(3, Y(p1, p2, p3))
    assert CylinderValue.from_element(M.to_element()) == M


def test_trivial_is_a_unit():
    M = cylinder(3, Y(p1, p2, m3))
    assert cyl_compose(CylinderValue.trivial(3), M) == M
    assert cyl_compose(M, CylinderValue.trivial(3)) == M


def test_genus_mismatch():
    with pytest.raises(ShapeError):
        cyl_compose(CylinderValue.trivial(1), CylinderValue.trivial(2))


def test_tau1():
    assert not tau1(CylinderValue.trivial(2))
    assert tau1(cylinder(3, Y(p1, p2, p3))) == Series.from_diagram(2, Y(p1, p2, p3))


def test_theta_needs_degree_2():
    with pytest.raises(TruncationError):
        theta_coefficient(Series.one(1))


def test_casson_arity():
    assert casson_lambda(tscat.empty(0, 0)) == 0
    with pytest.raises(ShapeError):
        casson_lambda(tscat.identity(1))


def test_casson_adds_under_tensor():
    poincare = evaluate(compile_expr('Y o (v+ x v+ x v+)'))
    assert casson_lambda(poincare) == 1
    assert casson_lambda(tscat.tensor(poincare, poincare)) == 2


def test_fill_of_trivial_cylinder():
    filled = fill(tscat.identity(2))
    assert (filled.g, filled.f) == (0, 0)
    assert filled.y == Series.one(2)
    assert fill_casson(tscat.identity(2)) == 0


def test_fill_keeps_closed_part():
    M = CylinderValue(1, Series.from_terms(2, [(1, (theta(),))]).exp())
    assert fill_casson(M.to_element()) == 2


def test_morita_trivial():
    r = morita_check(CylinderValue.trivial(2), CylinderValue.trivial(2))
    assert (r.lhs, r.rhs, r.equal) == (0, 0, True)


def test_morita_triple_gluing():
    M = cylinder(3, Y(p1, p2, p3))
    N = cylinder(3, Y(m1, m2, m3))
    r = morita_check(M, N)
    assert r.equal
    assert abs(r.rhs) == 2


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_morita_random(seed):
    rng = samples.rng_for(seed)
    g = rng.choice((1, 2, 3, 3))
    M = samples.random_cylinder(rng, g, 2, terms=2, side='+')
    N = samples.random_cylinder(rng, g, 2, terms=2, side='-')
    assert morita_check(M, N).equal


def test_random_cylinders_have_casson_and_cross_terms():
    rng = samples.rng_for(0)
    casson = cross = 0
    for _ in range(50):
        M = samples.random_cylinder(rng, 3, 2, terms=2, side='+')
        N = samples.random_cylinder(rng, 3, 2, terms=2, side='-')
        casson += fill_casson(M.to_element()) != 0
        cross += theta_coefficient(tscat.star(tau1(M), tau1(N), 3)) != 0
    assert casson == 50
    assert cross >= 40


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_star_agrees_with_composition(seed):
    rng = samples.rng_for(seed)
    g = rng.randint(1, 2)
    M = samples.random_cylinder(rng, g, 2, terms=2)
    N = samples.random_cylinder(rng, g, 2, terms=2)
    assert tscat.compose(M.to_element(), N.to_element()) == cyl_compose(M, N).to_element()
    assert tau1(cyl_compose(M, N)) == tau1(M) + tau1(N)
    assert tau1(M).tree_reduce() == tau1(M)
