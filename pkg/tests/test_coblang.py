import pytest

from lmocalc import coblang
from lmocalc.coblang import compile_expr, evaluate, format_expr, lk_only, parse, typecheck
from lmocalc.cylinders import casson_lambda
from lmocalc.diagrams import minus, theta
from lmocalc.errors import EvaluationError, NotationError, ParseError, TypecheckError
from lmocalc.generators import C_EXPRESSION, builtin_degree2
from lmocalc.tscat import identity
from lmocalc.words import all_words, left_comb, parse_word

CORPUS = [
    'eps',
    'id[.]',
    'mu o (id[.] x eta)',
    'mu o (mu x id[.]) o P[.,.,.]',
    '(delta x id[.]) o delta',
    'psi o psi_inv',
    's o s_inv',
    'c',
    'Y o (c x id[.])',
    'Y o (v+ x v+ x v+)',
    '(v- x v-)',
    C_EXPRESSION,
]


def test_words():
    assert str(left_comb(3)) == '((..).)'
    assert len(all_words(3)) == 2
    assert len(all_words(4)) == 5
    assert parse_word('').describe() == '∅'
    with pytest.raises(NotationError):
        parse_word('(.)')


def test_precedence():
    expr = parse('mu o id[.] x id[.]')
    assert format_expr(expr) == '(mu o (id[.] x id[.]))'
    expr = parse('eps x eps o delta')
    assert format_expr(expr) == '((eps x eps) o delta)'


def test_parse_errors_point_at_the_problem():
    with pytest.raises(ParseError) as e:
        parse('mu o')
    assert e.value.pos == 4
    with pytest.raises(ParseError) as e:
        parse('mu o frob')
    assert e.value.pos == 5
    with pytest.raises(ParseError):
        parse('P[.,.]')
    with pytest.raises(ParseError):
        parse('(mu')


def test_typecheck_words():
    expr = compile_expr('mu o (mu x id[.])')
    assert str(expr.top) == '((..).)'
    assert str(expr.bottom) == '.'
    with pytest.raises(TypecheckError) as e:
        compile_expr('mu o mu')
    assert str(e.value.expected) == '(..)'
    assert str(e.value.found) == '.'


def test_lenient_rebracketing():
    text = 'mu o (mu x id[.]) o (id[.] x delta) o delta'
    with pytest.raises(TypecheckError):
        compile_expr(text)
    expr = compile_expr(text, strict=False)
    value = evaluate(expr)
    assert (value.g, value.f) == (1, 1)
    with pytest.raises(EvaluationError):
        coblang._Evaluator(builtin_degree2(), 3).visit(expr)


def test_eps_value():
    assert str(evaluate(compile_expr('eps'))) == 'W = []; Y = 1*∅'


def test_identity_words():
    for n in range(5):
        for w in all_words(n):
            value = evaluate(compile_expr('id[{0}]'.format(w)))
            assert value == identity(n)


def test_associator_is_identity_at_degree_2():
    a = evaluate(compile_expr('mu o (mu x id[.])'))
    b = evaluate(compile_expr('mu o (mu x id[.]) o P[.,.,.] o Pinv[.,.,.]'))
    assert a == b


def test_c_lk():
    W = lk_only(compile_expr('c'))
    assert W.entry(minus(1), minus(2)) == -1


@pytest.mark.parametrize('text', CORPUS)
def test_lk_only_agrees_with_evaluate(text):
    expr = compile_expr(text)
    assert lk_only(expr) == evaluate(expr).W


def test_poincare_casson():
    value = evaluate(compile_expr('Y o (v+ x v+ x v+)'))
    assert (value.g, value.f) == (0, 0)
    assert value.y.coefficient(theta()) * 2 == 1
    assert casson_lambda(value) == 1


def test_degree_above_table():
    with pytest.raises(EvaluationError):
        evaluate(compile_expr('eps'), builtin_degree2(), 3)


def test_spans_cover_the_source():
    text = 'mu o (id[.] x eta)'
    expr = typecheck(parse(text))
    spans = list(coblang.spans(expr))
    assert spans[0][1] == (0, len(text))
    assert [text[s:e] for _, (s, e) in spans][1] == 'mu'
