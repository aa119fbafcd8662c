import pytest

from ..cdgafile import emit, example_names, example_text, load, parse_file
from ..errors import (DegreeError, LeibnizError, ParseError, TruncationError, UnknownBuiltinError,
                      UnknownGeneratorError)
from .utils import *

M_NORMAL_FORM = '''generator x degree=1
generator y degree=1
generator z degree=1
generator t degree=2 truncation=3
d z = x*y
twist = x*t
'''


def test_example_names():
    assert example_names() == ['cp2', 'cp3', 'heisenberg', 'm-heisenberg-cp2', 'tower2', 'tower3', 'tower3-cp3']


def test_parse_with_comments():
    text = '# two generators\n\ngenerator x degree=1  # odd\ngenerator y degree=1\nd y = 0*x\n'
    loaded = parse_file(text, name='pair')
    assert loaded.presentation.names == ('x', 'y')
    assert loaded.twist is None
    assert loaded.name == 'pair'


def test_m_file(m_file):
    p = m_file.presentation
    assert p.names == ('x', 'y', 'z', 't')
    assert p.total_dim == 24
    assert p.format(m_file.twist) == 'x*t'


def test_degree_error_carries_line():
    with pytest.raises(DegreeError) as excinfo:
        parse_file('generator x degree=1\ngenerator y degree=1\nd y = x\n')
    assert excinfo.value.line == 3
    assert excinfo.value.detail.startswith('line 3: ')
    assert excinfo.value.detail == 'line 3: d y = x is not homogeneous of degree 2'


def test_missing_truncation():
    with pytest.raises(TruncationError) as excinfo:
        parse_file('generator t degree=2\n')
    assert excinfo.value.detail == "line 1: even generator 't' needs truncation=<int>"


def test_odd_generator_with_truncation():
    with pytest.raises(TruncationError) as excinfo:
        parse_file('# comment\ngenerator x degree=1 truncation=2\n')
    assert excinfo.value.line == 2


def test_leibniz_error_carries_line():
    text = '\n'.join([
        '# d(d w) is x*y*u',
        'generator x degree=1',
        'generator y degree=1',
        'generator u degree=1',
        'generator z degree=1',
        'generator w degree=1',
        'd z = x*y',
        'd w = z*u',
    ])
    with pytest.raises(LeibnizError) as excinfo:
        parse_file(text)
    assert excinfo.value.line == 8
    assert excinfo.value.detail.startswith('line 8: d(d w) = ')


def test_unknown_generators():
    with pytest.raises(UnknownGeneratorError) as excinfo:
        parse_file('generator x degree=1\nd q = x\n')
    assert excinfo.value.detail == "line 2: d assigned to unknown generator 'q'"
    with pytest.raises(UnknownGeneratorError) as excinfo:
        parse_file('generator x degree=1\ngenerator y degree=1\nd y = x*q\n')
    assert excinfo.value.detail == "line 3: unknown generator 'q'"
    with pytest.raises(UnknownGeneratorError) as excinfo:
        parse_file('generator x degree=1\ntwist = w\n')
    assert excinfo.value.line == 2


def test_syntax_errors():
    with pytest.raises(ParseError) as excinfo:
        parse_file('generatr x degree=1\n')
    assert excinfo.value.detail == "line 1: cannot read 'generatr x degree=1'"
    with pytest.raises(ParseError) as excinfo:
        parse_file('generator x degree=1 weight=2\n')
    assert excinfo.value.line == 1
    with pytest.raises(ParseError) as excinfo:
        parse_file('generator x\n')
    assert excinfo.value.detail == "line 1: generator 'x' needs degree=<int>"


def test_duplicates():
    with pytest.raises(ParseError) as excinfo:
        parse_file('generator x degree=1\ngenerator x degree=1\n')
    assert excinfo.value.detail == "line 2: generator 'x' declared twice"
    with pytest.raises(ParseError) as excinfo:
        parse_file('generator x degree=1\ntwist = x\ntwist = x\n')
    assert excinfo.value.line == 3


def test_emit_normal_form(m_file):
    assert emit(m_file) == M_NORMAL_FORM


def test_emit_is_idempotent():
    for name in example_names():
        once = emit(load(name))
        assert emit(parse_file(once)) == once


def test_emit_drops_comments():
    loaded = load('heisenberg')
    assert emit(loaded) == 'generator x degree=1\ngenerator y degree=1\ngenerator z degree=1\nd z = x*y\n'
    assert example_text('heisenberg').startswith('# ')


def test_load_from_path(tmp_path):
    path = tmp_path / 'circle.cdga'
    path.write_text('generator e degree=1\n', encoding='utf-8')
    loaded = load(str(path))
    assert loaded.name == 'circle'
    assert loaded.path == path
    assert loaded.presentation.total_dim == 2


def test_load_builtin():
    loaded = load('tower4')
    assert loaded.presentation.names == ('x', 'e1', 'e2', 'e3', 'e4')
    assert loaded.twist is None
    assert loaded.text is None


def test_load_unknown():
    with pytest.raises(UnknownBuiltinError) as excinfo:
        load('klein-bottle')
    assert excinfo.value.detail == "'klein-bottle' is neither a file, an example nor a built-in algebra"
    with pytest.raises(UnknownBuiltinError):
        example_text('klein-bottle')
