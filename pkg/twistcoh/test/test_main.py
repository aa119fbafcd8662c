import json

from ..cdgafile import example_names, example_text
from .utils import *


def _json(*args, **kwargs):
    result = invoke('--format', 'json', *args, **kwargs)
    assert result.exit_code == 0, result.output
    return json.loads(result.output)


### Reports ###

def test_cohomology_table():
    result = invoke('cohomology', 'heisenberg')
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == 'betti'
    assert lines[1] == 'degree  dim  representatives'
    assert 'note: total dimension 6' in lines


def test_spectral_sequence_csv():
    result = invoke('--format', 'csv', 'ss', 'm-heisenberg-cp2', '--max-page', 7)
    assert result.exit_code == 0
    assert result.output == 'page,total,stable\n1,24,no\n2,18,no\n3,18,no\n4,14,no\n5,14,no\n6,10,yes\n7,10,yes\n'


def test_spectral_sequence_json():
    data = _json('ss', 'm-heisenberg-cp2')
    assert data['command'] == 'ss'
    assert data['data']['limit_total'] == 10
    assert data['data']['stable_from'] == 6


def test_massey_json():
    data = _json('massey', 'heisenberg', 'x', 'x', 'y')
    assert data['data'] == {
        'degree': 2,
        'representative': 'x*z',
        'cocycle': 'x*z',
        'indeterminacy_dim': 0,
        'nonzero': True,
    }


def test_twisted_json():
    data = _json('twisted', 'm-heisenberg-cp2')
    assert data['data']['total'] == 10
    assert data['data']['twist'] == 'x*t'


def test_twist_option_overrides_file():
    data = _json('twisted', 'heisenberg', '--twist', '0*x + x*y*z')
    assert data['data']['twist'] == 'x*y*z'


def test_massey_eta_with_differential():
    data = _json('massey-eta', 'm-heisenberg-cp2', 'y', '--order', 2, '--differential')
    assert data['data']['degree'] == 6
    assert data['data']['representative'] == 'x*z*t^2'
    assert data['data']['nonzero']
    assert data['data']['differential'] == {'page': 5, 'nonzero': True, 'agree': True}


def test_jring():
    data = _json('jring', '--max-weight', 8)
    assert data['data']['dims'] == [1, 1, 1, 1, 2, 2, 4, 4, 7]
    assert data['data']['series_agree']
    assert data['data']['surjective']


def test_lift():
    data = _json('lift', 'x1')
    assert data['data']['series'] == ' + '.join(f'x{n}' for n in range(1, 13))
    assert data['data']['scale'] == '1'
    assert data['data']['closed']


def test_psi_wang_and_tensor_action():
    data = _json('psi', '2,-1', '--max-weight', 4)
    assert data['data']['lowest'] == '-2*x1^2'
    assert data['data']['sum_is_one']
    assert _json('wang')['data']['annihilated']
    result = invoke('tensor-action', '--n', 4)
    assert result.exit_code == 0
    assert 'note: all identities hold' in result.output


def test_hankel():
    data = _json('hankel', '--p', 1, '--q', 1, '--verify', '--reparam')
    assert data['data']['hankel'] == 'c1'
    assert data['data']['identities']
    assert data['data']['invariant']
    assert data['data']['injective_ranks'] == {'1': 1, '2': 2, '3': 3, '4': 4}
    assert [t['name'] for t in data['tables']] == ['hankel', 'identities', 'injectivity', 'reparametrization']


def test_hankel_table_stops_at_the_weight_cap():
    data = _json('hankel', '--p', 1, '--q', 6, '--verify', env={'TWISTCOH_MAX_WEIGHT': '6'})
    assert list(data['data']['injective_ranks']) == ['1', '2', '3', '4', '5', '6']
    assert 'injectivity checked through weight 6 only (TWISTCOH_MAX_WEIGHT)' in data['notes']


def test_tower_spectral_sequence_csv():
    result = invoke('--format', 'csv', 'ss', 'tower3-cp3')
    assert result.exit_code == 0
    assert result.output == ('page,total,stable\n1,64,no\n2,32,no\n3,32,no\n4,20,no\n5,20,no\n6,20,no\n7,20,no\n'
                             '8,16,yes\n9,16,yes\n10,16,yes\n11,16,yes\n')


def test_missing_twist_defaults_to_zero():
    data = _json('twisted', 'heisenberg')
    assert data['data'] == {'twist': '0', 'even': 3, 'odd': 3, 'total': 6}
    assert 'no twist given, using 0 (D = d)' in data['notes']
    data = _json('ss', 'heisenberg')
    assert data['data']['totals'] == {'1': 8, '2': 6, '3': 6, '4': 6}
    assert data['data']['stable_from'] == 2


def test_reports_are_deterministic():
    first = invoke('--format', 'json', 'ss', 'm-heisenberg-cp2')
    second = invoke('--format', 'json', 'ss', 'm-heisenberg-cp2')
    assert first.output == second.output


def test_example():
    result = invoke('example', 'heisenberg')
    assert result.exit_code == 0
    assert result.output == example_text('heisenberg')
    result = invoke('example')
    assert result.output.splitlines() == example_names()


### Exit codes ###

def test_unknown_command_is_a_usage_error():
    assert invoke('frobnicate').exit_code == 1
    assert invoke('--format', 'xml', 'cohomology', 'heisenberg').exit_code == 1


def test_wrong_number_of_massey_elements():
    result = invoke('massey', 'heisenberg', 'x', 'y')
    assert result.exit_code == 1
    assert 'massey takes three cocycles, got 2' in result.output


def test_unknown_source():
    result = invoke('cohomology', 'klein-bottle')
    assert result.exit_code == 2
    assert "error: 'klein-bottle' is neither a file, an example nor a built-in algebra" in result.output


def test_builtin_needs_its_parameter():
    for name in ('tower', 'cp'):
        result = invoke('cohomology', name)
        assert result.exit_code == 2
        assert f"error: '{name}' needs a parameter, e.g. {name}3" in result.output


def test_file_not_utf8(tmp_path):
    path = tmp_path / 'latin.cdga'
    path.write_bytes(b'generator x degree=1\n# \xff\xfe\n')
    result = invoke('cohomology', path)
    assert result.exit_code == 2
    assert f'error: line 2: {path} is not valid UTF-8' in result.output


def test_invalid_file(tmp_path):
    path = tmp_path / 'bad.cdga'
    path.write_text('generator x degree=1\ngenerator y degree=1\nd y = x\n', encoding='utf-8')
    result = invoke('cohomology', path)
    assert result.exit_code == 2
    assert 'error: line 3: ' in result.output


def test_failed_preconditions():
    assert invoke('massey', 'torus2', 'x1', 'x2', 'x1').exit_code == 3
    result = invoke('twisted', 'heisenberg', '--twist', 'z')
    assert result.exit_code == 3
    assert 'warning: twist z has degree 1, not 3' in result.output


def test_hankel_bound():
    assert invoke('hankel', '--p', 3, '--q', 3).exit_code == 2
    assert invoke('hankel', '--p', 1, '--q', 2, '--bound', 1).exit_code == 2


def test_environment_settings():
    assert invoke('cohomology', 'heisenberg', env={'TWISTCOH_MAX_DIM': '4'}).exit_code == 2
    result = invoke('cohomology', 'heisenberg', env={'TWISTCOH_MAX_DIM': 'zero'})
    assert result.exit_code == 2
    assert 'error: invalid environment setting: TWISTCOH_MAX_DIM' in result.output
