import json

import pytest

from lmocalc import cli
from lmocalc.args import GenericArgs
from lmocalc.coblang import compile_expr, evaluate
from lmocalc.config import DEFAULTS, get_config, setting
from lmocalc.generators import GeneratorTable, builtin_degree2, dump_table
from lmocalc.notation import parse_element


@pytest.fixture(autouse=True)
def home(tmp_path, monkeypatch):
    monkeypatch.setenv('HOME', str(tmp_path))
    return tmp_path


def run(capsys, *argv):
    rc = cli.run(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out.strip(), captured.err


def test_eval_eps(capsys):
    assert run(capsys, 'eval', 'eps')[:2] == (0, 'W = []; Y = 1*∅')


def test_eval_identity(capsys):
    rc, out, _ = run(capsys, 'eval', 'id[.]')
    assert rc == 0
    assert out == 'W = [color=1-,1+; 0 1; 1 0]; Y = 1*∅'


def test_eval_machine_output_parses_back(capsys):
    rc, out, _ = run(capsys, 'eval', '--format', 'machine', 'mu')
    assert rc == 0
    data = json.loads(out)
    value = parse_element('W = {0}; Y = {1}'.format(data['W'], data['Y']),
                          data['g'], data['f'], data['max_ideg'])
    assert value == evaluate(compile_expr('mu'))


def test_options_before_the_command(capsys):
    rc, out, _ = run(capsys, '-d', '1', 'eval', 'Y o (v+ x v+ x v+)')
    assert rc == 0
    assert 'theta' not in out


def test_eval_degree_2_poincare(capsys):
    rc, out, _ = run(capsys, 'eval', '-d', '2', 'Y o (v+ x v+ x v+)')
    assert rc == 0
    assert '1/2*theta' in out


def test_parse_error_exit_code(capsys):
    rc, _, err = run(capsys, 'eval', 'mu o')
    assert rc == 1
    assert '^' in err


def test_type_error_exit_code(capsys):
    assert run(capsys, 'eval', 'mu o mu')[0] == 2


def test_strict_flag(capsys):
    text = 'mu o (mu x id[.]) o (id[.] x delta) o delta'
    assert run(capsys, 'eval', text)[0] == 0
    assert run(capsys, 'eval', '--strict', text)[0] == 2


def test_usage_error(capsys):
    assert run(capsys, 'frobnicate')[0] == 1
    assert run(capsys)[0] == 1


def test_lk_of_c(capsys):
    rc, out, _ = run(capsys, 'lk', 'c')
    assert rc == 0
    assert out == '[color=1-,2-; 0 -1; -1 0]'


def test_lk_of_identity(capsys):
    assert run(capsys, 'lk', 'id[(..)]')[1] == \
        '[color=1-,2-,1+,2+; 0 0 1 0; 0 0 0 1; 1 0 0 0; 0 1 0 0]'


def test_casson(capsys):
    assert run(capsys, 'casson', 'Y o (v+ x v+ x v+)')[:2] == (0, '1')
    assert run(capsys, 'casson', '(Y o (v+ x v+ x v+)) x (Y o (v+ x v+ x v+))')[1] == '2'
    assert run(capsys, 'casson', 'id[.]')[1] == '0'
    assert run(capsys, 'casson', 'eta')[0] == 2


@pytest.mark.parametrize('suite', ['hopf', 'table', 'invert-t1', 'ihx'])
def test_check_suites(capsys, suite):
    rc, out, _ = run(capsys, 'check', suite, '--trials', '3')
    assert rc == 0, out
    assert '0 failed' in out


def test_check_morita(capsys):
    rc, out, _ = run(capsys, 'check', 'morita', '--trials', '3', '--seed', '11')
    assert rc == 0, out


def test_check_compose(capsys):
    rc, out, _ = run(capsys, 'check', 'compose', '--trials', '2')
    assert rc == 0, out


def test_failed_check_exit_code(capsys, tmp_path):
    table = builtin_degree2()
    entries = dict(table.entries)
    y = entries['Y']
    entries['Y'] = type(y)(y.g, y.f, y.W, (-y.log_y()).exp())
    path = tmp_path / 'broken.txt'
    path.write_text(dump_table(GeneratorTable(2, entries)))
    rc, out, _ = run(capsys, '--table', str(path), 'check', 'table')
    assert rc == 3
    assert 'failed' in out


def test_dump_table_loads_back(capsys, tmp_path):
    rc, text, _ = run(capsys, 'dump-table')
    assert rc == 0
    assert text.startswith('maxideg=2')
    path = tmp_path / 'table.txt'
    path.write_text(text)
    assert run(capsys, '--table', str(path), 'eval', 'eps')[:2] == (0, 'W = []; Y = 1*∅')


def test_missing_table_file(capsys, tmp_path):
    assert run(capsys, '--table', str(tmp_path / 'nope'), 'eval', 'eps')[0] == 1


def test_zero_denominator_in_table_file(capsys, tmp_path):
    path = tmp_path / 'bad.txt'
    path.write_text('maxideg=2\ngen eta : 0 -> 1\nW { 1-|1- = 1/0 }\nlogY = 0\n')
    rc, _, err = run(capsys, '--table', str(path), 'eval', 'eps')
    assert rc == 1
    assert 'zero denominator' in err


def test_config_file(capsys, home):
    (home / '.lmocalc.json').write_text(json.dumps({'max_ideg': 1}))
    rc, out, _ = run(capsys, 'eval', 'Y o (v+ x v+ x v+)')
    assert rc == 0
    assert 'theta' not in out
    rc, out, _ = run(capsys, 'eval', '-d', '2', 'Y o (v+ x v+ x v+)')
    assert 'theta' in out


def test_explicit_config_must_exist(capsys, tmp_path):
    assert run(capsys, '--config', str(tmp_path / 'missing.json'), 'eval', 'eps')[0] == 1


def test_get_config_defaults(tmp_path):
    assert get_config() == {}
    ns = GenericArgs(max_ideg=None)
    assert setting(ns, {}, 'max_ideg') == DEFAULTS['max_ideg']
    assert setting(ns, {'max_ideg': 3}, 'max_ideg') == 3
    ns.max_ideg = 1
    assert setting(ns, {'max_ideg': 3}, 'max_ideg') == 1
