"""
Command line runs through click's test runner.
"""
import json

import pytest
from click.testing import CliRunner

from merolab.cli import cli
from merolab.registry import names


@pytest.fixture
def runner():
    return CliRunner()


def run(runner, *args):
    return runner.invoke(cli, list(args), catch_exceptions=False)


def test_examples_lists_the_registry(runner, tmp_path):
    out = tmp_path / "examples.json"
    result = run(runner, 'examples', '--out', str(out))

    assert result.exit_code == 0
    for name in names():
        assert name in result.output
    document = json.loads(out.read_text())
    assert document['schema_version'] == "1.0"
    assert [e['name'] for e in document['results']['examples']] == names()


def test_iterate_prints_closed_form(runner, tmp_path):
    out = tmp_path / "iterate.json"
    result = run(runner, 'iterate', 'deg2', '--k', '3', '--out', str(out))

    assert result.exit_code == 0
    assert "z0^8*z1^7" in result.output
    assert "z1^15" in result.output
    assert json.loads(out.read_text())['results']['degree'] == 15


def test_degree_of_deg2(runner, tmp_path):
    result = run(runner, 'degree', 'deg2', '--out', str(tmp_path / "degree.json"))

    assert result.exit_code == 0
    assert "algebraic degree: 3" in result.output
    assert "topological degree: 2" in result.output


def test_unknown_example_is_a_usage_error(runner, tmp_path):
    result = run(runner, 'degree', 'no-such-map', '--out', str(tmp_path / "x.json"))

    assert result.exit_code == 2
    assert "known examples" in result.output


def test_iterate_rejects_families(runner, tmp_path):
    result = run(runner, 'iterate', 'exp', '--out', str(tmp_path / "x.json"))
    assert result.exit_code == 2


def test_reruns_are_byte_identical(runner, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    run(runner, 'reduce', 'exp-b', '--k', '4', '--out', str(first))
    run(runner, 'reduce', 'exp-b', '--k', '4', '--out', str(second))

    assert first.read_bytes() == second.read_bytes()


def test_classify_shifted_family(runner, tmp_path):
    out = tmp_path / "classify.json"
    result = run(runner, 'classify', 'exp-b', '--kmax', '50', '--out', str(out))

    assert result.exit_code == 0
    assert "Gamma" in result.output
    assert json.loads(out.read_text())['results']['level'] == "Gamma"


def test_csv_reports(runner, tmp_path):
    out = tmp_path / "scan.csv"
    result = run(runner, 'fatou-scan', 'deg2', '--grid', '4', '--format', 'csv', '--out', str(out))

    assert result.exit_code == 0
    header = out.read_text().splitlines()[0]
    assert header == "row,col,u1_re,u1_im,u2_re,u2_im,label,margin"


def test_map_files_are_accepted(runner, tmp_path):
    path = tmp_path / "f.map"
    path.write_text("variables: z0 z1 z2\ncomponent: 1 [0,1,1]\ncomponent: 1 [1,0,1]\ncomponent: 1 [1,1,0]\n")

    result = run(runner, 'degree', str(path), '--out', str(tmp_path / "degree.json"))

    assert result.exit_code == 0
    assert "algebraic degree: 2" in result.output
