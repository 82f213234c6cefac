import json

import pytest

import graphs
from netmedian.cli import main
from netmedian.graph import export_edge_list


@pytest.fixture
def data_dir(tmp_path, monkeypatch):
    (tmp_path / "star.txt").write_text(export_edge_list(graphs.star(4)), encoding="utf-8")
    (tmp_path / "rnd.txt").write_text(
        export_edge_list(graphs.random_connected(12, 16, seed=1)), encoding="utf-8"
    )
    monkeypatch.setenv("NETMEDIAN_DATA", str(tmp_path))
    monkeypatch.delenv("NETMEDIAN_URL", raising=False)
    return tmp_path


def test_rank_command(data_dir, capsys):
    assert main(["rank", "star.txt", "--method", "degree", "--k", "2"]) == 0
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    assert lines[0].startswith("# star: top 2 by degree")
    assert lines[2].split("\t")[1] == "0"  # hub first


def test_rank_json_output(data_dir, capsys):
    assert main(["--json", "rank", "star.txt", "--method", "prank", "--k", "1"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["vertices"] == [0]
    assert payload["scores"][0] == pytest.approx(2.3784, abs=1e-4)


def test_eval_command(data_dir, capsys):
    assert main(["eval", "star.txt", "--vertices", "0"]) == 0
    assert "farness=4" in capsys.readouterr().out


def test_eval_rejects_unknown_vertex(data_dir, capsys):
    assert main(["eval", "star.txt", "--vertices", "42"]) == 1
    assert "error" in capsys.readouterr().err


def test_exact_command(data_dir, capsys):
    assert main(["exact", "star.txt", "--k", "1"]) == 0
    out = capsys.readouterr().out
    assert "optimal_value=1" in out
    assert "{0}" in out


def test_exact_budget_error(data_dir, capsys):
    assert main(["exact", "rnd.txt", "--k", "3", "--budget", "5"]) == 1
    assert "budget" in capsys.readouterr().err


def test_sample_command(data_dir, capsys):
    assert main(["sample", "rnd.txt", "--k", "2", "--n", "25", "--seed", "3"]) == 0
    assert "E(k=2)" in capsys.readouterr().out


def test_hist_command_writes_plot_data(data_dir, tmp_path, capsys):
    out_file = tmp_path / "hist.dat"
    assert main(["hist", "star.txt", "--k", "1", "-o", str(out_file)]) == 0
    rows = [line.split() for line in out_file.read_text().strip().splitlines()]
    assert [(float(a), int(b)) for a, b in rows] == [(1.0, 1), (1.75, 4)]


def test_export_command(data_dir, capsys):
    assert main(["export", "star.txt"]) == 0
    assert capsys.readouterr().out == "0 1\n0 2\n0 3\n0 4\n"


def test_registry_command(data_dir, capsys):
    assert main(["registry"]) == 0
    assert "ca-netscience" in capsys.readouterr().out


def test_bench_command(data_dir, tmp_path, capsys):
    outdir = tmp_path / "bench"
    spec = tmp_path / "run.spec"
    spec.write_text(
        "dataset = star.txt\nmethods = degree, random\n"
        f"k_max = 2\nn = 5\nseed = 0\noutdir = {outdir}\n",
        encoding="utf-8",
    )
    assert main(["bench", "--spec", str(spec)]) == 0
    out = capsys.readouterr().out
    assert "4 records" in out
    assert (outdir / "records.csv").exists()


def test_bench_missing_spec_file(data_dir, capsys):
    assert main(["bench", "--spec", "no-such.spec"]) == 1
    assert "error" in capsys.readouterr().err
