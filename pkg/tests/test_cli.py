import json

import pytest
from click.testing import CliRunner

import snaplab.campaign as campaign
import snaplab.evaluator as evaluator
from snaplab import __version__
from snaplab.campaign import Implication
from snaplab.cli import (
    EXIT_COUNTEREXAMPLE,
    EXIT_INTERNAL,
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    cli,
    run,
)
from snaplab.loader import RunManifest, manifest_path, read_snapshot, write_snapshot, write_trace
from snaplab.model import Snapshot


@pytest.fixture
def trace(tmp_path, canonical):
    return str(write_trace(canonical, tmp_path / 'canonical.jsonl'))


def test_pipeline(tmp_path, capsys):
    trace = str(tmp_path / 'trace.jsonl')
    snap = str(tmp_path / 'snap.jsonl')
    assert run(['simulate', '--regions', '3', '--events', '12', '--seed', '4', '-o', trace]) == 0
    assert run(['acquire', '--trace', trace, '--strategy', 'frozen', '--at', '0',
                '-o', snap]) == 0
    capsys.readouterr()
    assert run(['evaluate', '--trace', trace, '--snapshot', snap, '--tau', '0']) == 0
    record = json.loads(capsys.readouterr().out)
    assert record['record'] == 'verdict'
    for name in ('correct', 'instantaneous', 'quasi_instantaneous', 'causal',
                 'restrictive_integrity', 'permissive_integrity'):
        assert record['verdict'][name] is True
    assert record['clocks']['consistent'] is True
    assert record['timing'] == {'span': 0.0, 'mean_latency': 0.0}


def test_acquire_canonical_scan(trace, tmp_path):
    snap = tmp_path / 'snap.jsonl'
    assert run(['acquire', '--trace', trace, '--strategy', 'sequential', '--start', '0',
                '--order', '1,0', '-o', str(snap)]) == 0
    assert read_snapshot(snap).copies == ((1, 2), (0, 1))


def test_manifest_replays_byte_identical(tmp_path):
    out = tmp_path / 'trace.jsonl'
    assert run(['simulate', '--events', '20', '--seed', '9', '--regime', 'mixed',
                '--read-fraction', '0.3', '-o', str(out)]) == 0
    first = out.read_bytes()
    manifest = RunManifest.read(manifest_path(out))
    assert manifest.subcommand == 'simulate'
    assert manifest.seed == 9
    assert manifest.outputs == [str(out)]
    assert manifest.version == __version__

    out.unlink()
    assert run(manifest.argv()) == 0
    assert out.read_bytes() == first


def test_no_manifest_for_stdout(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert run(['simulate', '--events', '3']) == 0
    assert capsys.readouterr().out.startswith('{"format_version":1')
    assert not list(tmp_path.iterdir())


def test_seed_from_environment(monkeypatch, capsys):
    assert run(['simulate', '--events', '8', '--seed', '5']) == 0
    explicit = capsys.readouterr().out
    monkeypatch.setenv('SNAPLAB_SEED', '5')
    assert run(['simulate', '--events', '8']) == 0
    assert capsys.readouterr().out == explicit


def test_lattice(trace, capsys):
    assert run(['lattice', '--trace', trace]) == 0
    dot = capsys.readouterr().out
    assert dot.startswith('digraph lattice {')
    assert dot.count('->') == 5


def test_lattice_too_large(trace):
    assert run(['lattice', '--trace', trace, '--bound', '2']) == EXIT_USAGE


def test_diagram_dot(trace, tmp_path, capsys):
    snap = write_snapshot(Snapshot.from_pairs([(0, 0), (2, 3)]), tmp_path / 's.jsonl')
    assert run(['diagram', '--trace', trace, '--snapshot', str(snap)]) == 0
    assert 'pos="3.5,-1!"' in capsys.readouterr().out


def test_diagram_png(trace, tmp_path):
    out = tmp_path / 'd.png'
    assert run(['diagram', '--trace', trace, '--cut', '1,2', '--format', 'png',
                '-o', str(out)]) == 0
    assert out.stat().st_size > 0
    assert manifest_path(out).exists()


def test_png_needs_out(trace):
    assert run(['diagram', '--trace', trace, '--format', 'png']) == EXIT_USAGE


@pytest.mark.parametrize('argv', [
    ['simulate', '--teleport'],
    ['simulate', '--regime', 'sometimes'],
    ['simulate', '--regions', '0'],
    ['frobnicate'],
])
def test_usage_errors(argv):
    assert run(argv) == EXIT_USAGE


def test_bad_order(trace):
    assert run(['acquire', '--trace', trace, '--strategy', 'sequential',
                '--order', 'a,b']) == EXIT_USAGE
    assert run(['acquire', '--trace', trace, '--strategy', 'sequential',
                '--order', '0,0']) == EXIT_USAGE


def test_bad_delay(trace):
    assert run(['acquire', '--trace', trace, '--strategy', 'cow', '--delay', '0']) == EXIT_USAGE


def test_missing_file(tmp_path):
    assert run(['lattice', '--trace', str(tmp_path / 'nope.jsonl')]) == EXIT_IO


def test_malformed_file(tmp_path):
    bad = tmp_path / 'bad.jsonl'
    bad.write_text('{"format_version": 9, "record": "trace"}\n')
    assert run(['lattice', '--trace', str(bad)]) == EXIT_IO


@pytest.mark.parametrize('pairs', [[(0, 0), (0, 1), (0, 2)], [(0, 0)]])
@pytest.mark.parametrize('command', ['evaluate', 'diagram'])
def test_snapshot_region_mismatch(trace, tmp_path, capsys, command, pairs):
    snap = write_snapshot(Snapshot.from_pairs(pairs), tmp_path / 's.jsonl')
    assert run([command, '--trace', trace, '--snapshot', str(snap)]) == EXIT_USAGE
    assert 'trace has 2' in capsys.readouterr().err


def test_internal_error(trace, tmp_path, monkeypatch):
    snap = tmp_path / 'snap.jsonl'
    assert run(['acquire', '--trace', trace, '--at', '0', '-o', str(snap)]) == 0
    monkeypatch.setattr(evaluator, 'check_permissive_integrity', lambda s, gt, tau: False)
    assert run(['evaluate', '--trace', trace, '--snapshot', str(snap)]) == EXIT_INTERNAL


def test_verify(tmp_path, capsys):
    out = tmp_path / 'report.json'
    csv = tmp_path / 'cases.csv'
    assert run(['verify', '--cases', '200', '--seed', '1', '-o', str(out),
                '--csv', str(csv)]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert any(line.startswith('ok') for line in lines)
    assert not any(line.startswith('FAIL') for line in lines)
    assert json.loads(out.read_text())['clean'] is True
    assert csv.exists()
    assert RunManifest.read(manifest_path(out)).outputs == [str(out), str(csv)]


def test_verify_counterexample(monkeypatch, capsys):
    never = Implication('anything => nothing', lambda c: True, lambda c: False)
    monkeypatch.setattr(campaign, 'IMPLICATIONS', [never])
    assert run(['verify', '--cases', '5']) == EXIT_COUNTEREXAMPLE
    captured = capsys.readouterr()
    assert 'FAIL anything => nothing' in captured.out
    assert 'anything => nothing' in captured.err


def test_verify_bad_strategy():
    assert run(['verify', '--cases', '5', '--strategy', 'hibernate']) == EXIT_USAGE


def test_scan(tmp_path, capsys):
    out = tmp_path / 'scan.csv'
    assert run(['scan', '--seeds', '10', '-o', str(out)]) == 0
    assert 'causal' in capsys.readouterr().out
    assert out.exists()


def test_version_and_help():
    assert run(['--version']) == 0
    assert run(['--help']) == 0


def test_click_runner(trace):
    result = CliRunner().invoke(cli, ['lattice', '--trace', trace])
    assert result.exit_code == 0
    assert '"c4"' in result.output
