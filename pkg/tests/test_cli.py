import io
import json
import os

import pytest

from lattice_cli import main

E_GRAM = '[[3,"pi"],["-pi",0]]'
B2_GRAM = '[[2,[2,1]],[[2,-1],2]]'


def run_cli(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr().out
    return status, json.loads(out)


def test_signature(capsys):
    status = main(['signature', '--ring', '-3', '--gram', E_GRAM])
    assert status == 0
    assert capsys.readouterr().out == '{"p":1,"q":1}\n'


def test_pretty_output(capsys):
    assert main(['--pretty', 'signature', '--ring', '-3', '--gram', E_GRAM]) == 0
    assert capsys.readouterr().out == '{\n  "p": 1,\n  "q": 1\n}\n'


def test_ring_info(capsys):
    status, data = run_cli(capsys, 'ring-info', '--ring', '-4')
    assert status == 0
    assert data['unit_count'] == 4
    assert len(data['units']) == 4
    assert data['ramified_primes'] == [{'p': 2, 'pi': [2, 1]}]


def test_unsupported_ring_exits_with_input_error(capsys):
    status, data = run_cli(capsys, 'ring-info', '--ring', '-5')
    assert status == 2
    assert data['error'] == 'UnsupportedDiscriminant'


def test_malformed_json_reports_the_field(capsys):
    status, data = run_cli(capsys, 'dual', '--ring', '-3', '--gram', '[[1,')
    assert status == 2
    assert data['error'] == 'InputFormatError'
    assert data['field'] == 'gram'


def test_bad_entry_reports_its_path(capsys):
    status, data = run_cli(capsys, 'signature', '--ring', '-3', '--gram', '[[1,true],[0,1]]')
    assert status == 2
    assert data['field'] == 'lattice.gram[0][1]'


def test_gram_needs_ring(capsys):
    status, data = run_cli(capsys, 'signature', '--gram', '[[1]]')
    assert status == 2
    assert data['field'] == 'ring'


def test_disc_group_from_file(capsys, tmp_path):
    path = tmp_path / 'e.json'
    path.write_text(json.dumps({'ring': -3, 'gram': [[3, 'pi'], ['-pi', 0]]}))
    status, data = run_cli(capsys, '--in', str(path), 'disc-group')
    assert status == 0
    assert data['shape'] == [3, 3]
    assert data['order'] == 9


def test_disc_group_of_a_pair(capsys, monkeypatch):
    doc = {'sub': {'ring': -3, 'gram': [[1]], 'basis': [[2]]}, 'sup': {'ring': -3, 'gram': [[1]]}}
    monkeypatch.setattr('sys.stdin', io.StringIO(json.dumps(doc)))
    status, data = run_cli(capsys, 'disc-group')
    assert status == 0
    assert data['shape'] == [2, 2]


def test_missing_input(capsys, monkeypatch):
    monkeypatch.setattr('sys.stdin', io.StringIO(''))
    status, data = run_cli(capsys, 'dual')
    assert status == 2
    assert data['field'] == 'input'


def test_snf(capsys):
    status, data = run_cli(capsys, 'snf', '--matrix', '[[2,4,4],[-6,6,12],[10,-4,-16]]')
    assert status == 0
    assert data['divisors'] == [2, 6, 12]


def test_snf_rejects_fractions(capsys):
    status, data = run_cli(capsys, 'snf', '--matrix', '[["1/2"]]')
    assert status == 2
    assert data['error'] == 'NonIntegralEntries'
    assert data['field'] == 'matrix.entries'


def test_chain_success_and_failure(capsys):
    status, data = run_cli(capsys, 'chain', '--ring', '-3', '--gram', E_GRAM)
    assert status == 0
    assert data['holds'] is True
    assert data['quotient_1']['shape'] == [3, 3]
    status, data = run_cli(capsys, 'chain', '--ring', '-3', '--gram', '[[9]]')
    assert status == 1
    assert data['holds'] is False


def test_chain_with_unramified_pi(capsys):
    status, data = run_cli(capsys, 'chain', '--ring', '-3', '--gram', E_GRAM, '--pi', '2')
    assert status == 2
    assert data['error'] == 'NotRamifiedElement'


def test_reduce_mod_pi(capsys):
    status, data = run_cli(capsys, 'reduce-mod-pi', '--ring', '-3', '--gram', E_GRAM)
    assert status == 0
    assert data['radical_dimension'] == 2


def test_enumerate(capsys):
    status, data = run_cli(capsys, '--threads', '2', 'enumerate', '--ring', '-4', '--gram', B2_GRAM,
                           '--t', '2')
    assert status == 0
    assert data['count'] == 24
    assert len(data['vectors']) == 24
    status, data = run_cli(capsys, 'enumerate', '--ring', '-4', '--gram', B2_GRAM, '--t-max', '2')
    assert data['counts']['2'] == 24
    status, data = run_cli(capsys, 'enumerate', '--ring', '-3', '--gram', E_GRAM, '--t', '1')
    assert status == 2
    assert data['error'] == 'NotDefinite'


def test_perp_and_dx(capsys):
    gram = '[[1,0,0],[0,1,0],[0,0,-1]]'
    status, data = run_cli(capsys, 'perp', '--ring', '-3', '--gram', gram, '--x', '[1,0,0]')
    assert status == 0
    assert data['signature'] == [1, 1]
    status, data = run_cli(capsys, 'dx-nonempty', '--ring', '-3', '--gram', gram, '--x', '[0,0,1]')
    assert status == 0
    assert data['nonempty'] is False
    status, data = run_cli(capsys, 'dx-nonempty', '--ring', '-3', '--gram', gram, '--x', '[1,0,1]')
    assert status == 2
    assert data['error'] == 'IsotropicVector'


def test_convert_round_trip(capsys, tmp_path):
    status, zform = run_cli(capsys, 'convert', '--kind', 'herm-to-sym-gaussian',
                            '--ring', '-4', '--gram', B2_GRAM)
    assert status == 0
    assert zform['zrank'] == 4
    path = tmp_path / 'zform.json'
    path.write_text(json.dumps(zform))
    status, data = run_cli(capsys, '--in', str(path), 'convert', '--kind', 'sym-to-herm-gaussian')
    assert status == 0
    assert data['gram']['entries'] == [[[4, 0], [2, 1]], [[2, -1], [4, 0]]]


def test_convert_wrong_discriminant(capsys):
    status, data = run_cli(capsys, 'convert', '--kind', 'herm-to-sym-scaled', '--ring', '-4',
                           '--gram', B2_GRAM)
    assert status == 2
    assert data['error'] == 'WrongDiscriminant'


def test_trace_form(capsys):
    status, data = run_cli(capsys, 'trace-form', '--kind', 'alternating', '--ring', '-3', '--gram', '[[1]]')
    assert status == 0
    assert data['S']['entries'] == [[0, -1], [1, 0]]


def test_case_commands(capsys):
    status, data = run_cli(capsys, 'case-profile', 'cubic-threefolds')
    assert data['pol_degree'] == 3 ** 10
    status, data = run_cli(capsys, 'case-build', 'genus3')
    assert data['lattice']['ring'] == -4
    status, data = run_cli(capsys, 'case-verify', 'genus3', '--build')
    assert status == 0
    assert data['pass'] is True


def test_case_verify_failure(capsys):
    status, data = run_cli(capsys, 'case-verify', 'cubic-surfaces', '--ring', '-3', '--gram', '[[1,0],[0,-1]]')
    assert status == 1
    assert data['pass'] is False


def test_verify_all(capsys):
    status, data = run_cli(capsys, 'verify-all')
    assert status == 0
    assert data['pass'] is True
    assert len(data['cases']) == 4


def test_star_degree(capsys):
    status, data = run_cli(capsys, 'star-degree', '--d', '3', '--n', '11', '--p', '3')
    assert status == 0
    assert data == {'d': 3, 'n': 11, 'degree': 3 ** 10, 'p': 3, 't': 10}
    status, data = run_cli(capsys, 'star-degree', '--d', '4', '--n', '3')
    assert status == 2
    assert data['error'] == 'BadD'


def test_usage_errors_exit_through_argparse():
    with pytest.raises(SystemExit) as info:
        main(['no-such-verb'])
    assert info.value.code == 2


SAMPLES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'sample_inputs')


@pytest.mark.parametrize('name,verb,key,expected', [
    ('e_block.json', 'disc-group', 'order', 9),
    ('b2_block.json', 'disc-group', 'shape', [2, 2]),
    ('hyperbolic_5.json', 'signature', 'q', 1),
    ('sub_in_sup.json', 'disc-group', 'order', 9),
])
def test_sample_inputs(capsys, name, verb, key, expected):
    status, data = run_cli(capsys, '--in', os.path.join(SAMPLES, name), verb)
    assert status == 0
    assert data[key] == expected


def test_sample_alternating_form(capsys):
    status, data = run_cli(capsys, '--in', os.path.join(SAMPLES, 'unary_alternating.json'),
                           'convert', '--kind', 'alt-to-herm')
    assert status == 0
    assert data['gram']['entries'] == [[[2, 0]]]
