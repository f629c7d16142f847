import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, QQ

from lmocalc import diagrams, samples
from lmocalc.diagrams import (H, Y, bubble, canonicalize, expand, free, minus, plus,
                              sector_basis, shapes, strut, theta)
from lmocalc.errors import DiagramError, EnumerationLimitError
from lmocalc.series import Series

a, b, c, d = free('a'), free('b'), free('c'), free('d')


def test_color_order_and_text():
    assert minus(2) < plus(1) < diagrams.star(1) < free('x')
    assert str(minus(3)) == '3-'
    assert str(plus(1)) == '1+'
    assert str(diagrams.star(2)) == '2*'
    assert str(free('x')) == 'x'


@pytest.mark.parametrize('bad', ['', 'theta', 'strut', '1a'])
def test_bad_free_color(bad):
    with pytest.raises(DiagramError):
        free(bad)


def test_bad_index():
    with pytest.raises(DiagramError):
        minus(0)


def test_build_rejects_malformed():
    with pytest.raises(DiagramError):
        diagrams.Diagram.build(0, (a, b), [(0, 0)])
    with pytest.raises(DiagramError):
        diagrams.Diagram.build(0, (a, b, c, d), [(0, 1)])
    with pytest.raises(DiagramError):
        # two struts: not connected
        diagrams.Diagram.build(0, (a, b, c, d), [(0, 1), (2, 3)])
    with pytest.raises(DiagramError):
        diagrams.Diagram.build(0, (), [])


def test_gradings():
    y = Y(a, b, c)
    assert (y.ideg, y.edeg, y.deg, y.betti) == (1, 3, 2, 0)
    h = H(a, b, c, d)
    assert (h.ideg, h.edeg, h.deg, h.betti) == (2, 4, 3, 0)
    assert bubble(a, b).betti == 1
    t = theta()
    assert t.is_closed and t.betti == 2
    assert strut(a, b).is_strut


def test_antisymmetry():
    _, s1 = canonicalize(Y(a, b, c))
    canon2, s2 = canonicalize(Y(b, c, a))
    canon3, s3 = canonicalize(Y(a, c, b))
    assert canon2 == canon3
    assert s1 == s2 == -s3


def test_repeated_leg_on_a_vertex_vanishes():
    assert canonicalize(Y(a, a, b)) is None
    assert expand(Y(plus(1), plus(1), plus(2))) == {}


def test_h_antisymmetry():
    x = Series.from_diagram(2, H(a, b, c, d))
    y = Series.from_diagram(2, H(b, a, c, d))
    assert x == -y


def test_tadpole_vanishes():
    shape = shapes(1, 1)[0]
    assert expand(shape._replace(legs=(a,))) == {}


def test_graph_constructor_matches_y():
    g = diagrams.graph([('x', 'y', 'z')], [('x', 'p'), ('y', 'q'), ('z', 'r')],
                       [('p', a), ('q', b), ('r', c)])
    assert canonicalize(g) == canonicalize(Y(a, b, c))


def test_graph_constructor_errors():
    with pytest.raises(DiagramError):
        diagrams.graph([('x', 'y')], [], [])
    with pytest.raises(DiagramError):
        diagrams.graph([('x', 'y', 'z')], [('x', 'nope')], [])


def test_ihx_instances_reduce_to_zero():
    for relation in diagrams.ihx_relations(H(a, b, c, d)):
        assert not Series.from_terms(2, [(1, (x,)) for x in relation])


def test_short_descriptions():
    assert diagrams.theta().describe()[0] == 'theta'
    text, sign = Y(a, b, c).describe()
    assert text.startswith('Y(')
    assert str(strut(a, b)) == 'strut(a,b)'


@pytest.mark.parametrize('ideg,colors,dim', [
    (1, (a, b, c), 1),
    (2, (a, b, c, d), 2),
    (2, (a, b), 1),
    (2, (), 1),
    (1, (a,), 0),
])
def test_sector_dimensions(ideg, colors, dim):
    assert sector_basis(ideg, colors).dim == dim


@pytest.mark.parametrize('ideg,colors', [
    (2, (a, b, c, d)),
    (2, (a, a, b, b)),
    (2, (a, b)),
    (3, (a, b, c)),
])
def test_sector_dimension_matches_rank(ideg, colors):
    sector = sector_basis(ideg, colors)
    cands = sector.candidates()
    rows = [[QQ.to_sympy(r.get(x, QQ(0))) for x in cands] for r in sector.relations]
    rank = Matrix(rows).rank() if rows else 0
    assert sector.dim == len(cands) - rank


def test_expand_basis_element_is_itself():
    sector = sector_basis(2, (a, b, c, d))
    for x in sector.basis:
        assert expand(x) == {x: 1}


def test_enumeration_limit():
    old = diagrams.enumeration_limit()
    diagrams.set_enumeration_limit(1)
    try:
        with pytest.raises(EnumerationLimitError):
            sector_basis(2, (a, b))
    finally:
        diagrams.set_enumeration_limit(old)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_random_ihx_relations_vanish(seed):
    rng = samples.rng_for(seed)
    colors = (minus(1), minus(2), plus(1))
    x = samples.random_diagram(rng, colors, rng.randint(1, 3))
    for relation in diagrams.ihx_relations(x):
        assert not Series.from_terms(x.n, [(1, (t,)) for t in relation])
