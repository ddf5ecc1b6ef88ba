#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
命令行测试: 退出码与 stdout JSON 报告
"""

import json
from pathlib import Path

import pytest

from omni_cli import EXIT_BAD_INPUT, EXIT_FAIL, EXIT_OK, run_cli

PATTERNS = Path(__file__).parent.parent / 'catalog_utils' / 'patterns'


@pytest.fixture
def cli(tmp_path, capsys):
    """以内置默认配置运行, 返回 (退出码, 报告)"""
    def invoke(*argv):
        capsys.readouterr()
        code = run_cli(list(argv), config_path=tmp_path / 'absent.yaml')
        out = capsys.readouterr().out
        return code, (json.loads(out) if out.strip().startswith('{') else None)
    return invoke


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding='utf-8')
    return str(path)


def test_analyze_pulsar(cli):
    code, report = cli('analyze', str(PATTERNS / 'p03-pulsar.rle'))
    assert code == EXIT_OK
    assert report['command'] == 'analyze'
    assert report['status'] == 'ok'
    assert (report['kind'], report['period']) == ('oscillator', 3)
    assert report['volatility']['rotor_cell_count'] == 64


def test_analyze_glider(cli, tmp_path):
    code, report = cli('analyze', write(tmp_path, 'g.rle', 'x = 3, y = 3\nbo$2bo$3o!\n'))
    assert code == EXIT_OK
    assert report['kind'] == 'spaceship'
    assert report['displacement'] == [1, 1]
    assert 'volatility' not in report


def test_analyze_unresolved(cli, tmp_path):
    code, report = cli('analyze', write(tmp_path, 'r.rle', 'x = 3, y = 3\nb2o$2o$bo!\n'), '--max-gens', '50')
    assert code == EXIT_FAIL
    assert report['status'] == 'unresolved'


def test_analyze_garbage(cli, tmp_path):
    code, report = cli('analyze', write(tmp_path, 'bad.rle', 'x = 3, y = 3\nbo$2z!\n'))
    assert code == EXIT_BAD_INPUT
    assert report['status'] == 'fail'
    assert report['error']


def test_analyze_missing_file(cli, tmp_path):
    code, _ = cli('analyze', str(tmp_path / 'nope.rle'))
    assert code == EXIT_BAD_INPUT


def test_resolve_then_analyze(cli, tmp_path):
    out = str(tmp_path / 'p43.rle')
    code, report = cli('resolve', '--period', '43', '-o', out)
    assert code == EXIT_OK
    assert report['provenance'] == 'snark-loop'
    assert report['output'] == out
    code, report = cli('analyze', out)
    assert (code, report['period']) == (EXIT_OK, 43)


def test_resolve_small_period_inline(cli):
    code, report = cli('resolve', '--period', '15')
    assert code == EXIT_OK
    assert report['provenance'] == 'catalog'
    assert report['rle'].startswith('x = ')


def test_synth_rejects_small_period(cli):
    code, report = cli('synth', '--period', '42')
    assert code == EXIT_BAD_INPUT
    assert report['status'] == 'fail'


def test_synth_writes_loop(cli, tmp_path):
    out = str(tmp_path / 'p50.rle')
    code, report = cli('synth', '--period', '50', '-o', out)
    assert code == EXIT_OK
    assert report['spec']['traversal_time'] == 400
    assert Path(out).read_text(encoding='utf-8').startswith('x = ')


def test_compose_jam_and_mold(cli):
    code, report = cli('compose', str(PATTERNS / 'x-jam.rle'), str(PATTERNS / 'x-mold.rle'))
    assert code == EXIT_OK
    assert report['period'] == 12
    assert report['periods'] == [3, 4]


def test_compose_rejects_spaceship(cli, tmp_path):
    glider = write(tmp_path, 'g.rle', 'x = 3, y = 3\nbo$2bo$3o!\n')
    code, _ = cli('compose', glider, str(PATTERNS / 'x-jam.rle'))
    assert code == EXIT_BAD_INPUT


def test_census(cli):
    code, report = cli('census', '--soups', '3', '--seed', '1', '--soup-size', '8x8', '--torus', '32x32')
    assert code == EXIT_OK
    assert report['soups'] == 3
    assert report['config']['density'] == 0.375
    assert report['config']['torus'] == [32, 32]


@pytest.mark.parametrize('extra', [
    ['--soup-size', '40x40', '--torus', '32x32'],
    ['--soup-size', '8x8', '--torus', '32x32', '--density', 'abc'],
    ['--soup-size', 'eight', '--torus', '32x32'],
])
def test_census_bad_input(cli, extra):
    code, _ = cli('census', '--soups', '1', '--seed', '1', *extra)
    assert code == EXIT_BAD_INPUT


def test_census_fractional_density(cli):
    code, report = cli('census', '--soups', '1', '--seed', '5', '--soup-size', '8x8', '--torus', '16x16',
                       '--density', '1/2')
    assert code == EXIT_OK
    assert report['config']['density'] == 0.5


def test_catsearch_missing_config(cli, tmp_path):
    code, report = cli('catsearch', '--config', str(tmp_path / 'missing.json'))
    assert code == EXIT_BAD_INPUT
    assert report['status'] == 'fail'


def test_catsearch_writes_solutions(cli, tmp_path):
    config = write(tmp_path, 'blinker.json', json.dumps({
        'active_region': '3o!',
        'catalysts': [{'name': 'block', 'rle': '2o$2o!'}],
        'max_catalysts': 1,
        'placement_box': [-2, -2, 5, 5],
        'max_gens': 16,
        'require_period': 2,
    }))
    out_dir = tmp_path / 'solutions'
    code, report = cli('catsearch', '--config', config, '--out-dir', str(out_dir))
    assert code == EXIT_OK
    assert report['count'] == len(report['solutions']) > 0
    assert report['incomplete'] is False
    assert (out_dir / 'index.json').exists()
    assert (out_dir / 'solution_001.rle').exists()


def test_catsearch_without_solutions_fails(cli, tmp_path):
    config = write(tmp_path, 'none.json', json.dumps({
        'active_region': '3o!', 'catalysts': [], 'placement_box': [0, 0, 0, 0], 'require_period': 5,
    }))
    code, report = cli('catsearch', '--config', config)
    assert code == EXIT_FAIL
    assert report['count'] == 0


def test_unknown_subcommand(cli):
    assert cli('frobnicate')[0] == EXIT_BAD_INPUT


def test_missing_required_option(cli):
    assert cli('synth')[0] == EXIT_BAD_INPUT


def test_config_file_overrides_defaults(tmp_path, capsys):
    config = tmp_path / 'config.yaml'
    config.write_text('analysis:\n  max_gens: 5\nquiet: true\n', encoding='utf-8')
    pattern = write(tmp_path, 'p.rle', 'x = 3, y = 1\n3o!\n')
    assert run_cli(['analyze', pattern], config_path=config) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report['period'] == 2
    rpent = write(tmp_path, 'r.rle', 'x = 3, y = 3\nb2o$2o$bo!\n')
    assert run_cli(['analyze', rpent], config_path=config) == EXIT_FAIL
    assert json.loads(capsys.readouterr().out)['generations_examined'] == 5
