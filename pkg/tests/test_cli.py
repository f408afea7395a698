import pytest

from rwlab.cli import main
from rwlab.network import WeightedNetwork
from rwlab.tables import Table, read_table, write_csv, write_json


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


# -- table format -------------------------------------------------------------------


def test_csv_round_trip():
    t = Table("demo", ["a", "b", "flag"], meta={"seed": "7"})
    t.add(1, 0.1, True)
    t.add(2, 1 / 3, False)
    back = read_table(write_csv(t))
    assert back.name == "demo" and back.meta["seed"] == "7"
    assert back.columns == t.columns
    assert back.rows == t.rows  # 17-digit reals survive exactly


def test_json_round_trip():
    t = Table("demo", ["a", "b"], meta={"x": "1"})
    t.add(3, 0.25)
    back = read_table(write_json(t))
    assert back.rows == t.rows and back.name == "demo"


def test_table_rejects_ragged_rows():
    t = Table("demo", ["a", "b"])
    with pytest.raises(ValueError):
        t.add(1)


# -- CLI behavior --------------------------------------------------------------------


def test_missing_required_flag_exits_1_without_output(tmp_path, capsys):
    out = tmp_path / "never.csv"
    code, _, err = run(["loads", "--out", str(out)], capsys)
    assert code == 1 and "error" in err
    assert not out.exists()


def test_unknown_subcommand_exits_1(capsys):
    code, _, err = run(["frobnicate"], capsys)
    assert code == 1


def test_walk_halfmass_passes(capsys):
    code, out, _ = run(["walk", "--mode", "halfmass", "--n", "4", "--radius", "3000"], capsys)
    assert code == 0
    table = read_table(out)
    assert table.rows[0][3] is True


def test_walk_convolve_contract(capsys):
    code, out, _ = run(["walk", "--mode", "convolve", "--n", "6", "--radius", "3000"], capsys)
    assert code == 0
    table = read_table(out)
    assert table.rows[0][2] >= 0.5 and table.rows[0][3] == 0


def test_byte_identical_reruns(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["domination", "--networks", "3", "--vertices", "6", "--max-edges", "7",
            "--seed", "5"]
    assert run(args + ["--out", str(a)], capsys)[0] == 0
    assert run(args + ["--out", str(b)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_output_round_trips_through_parser(tmp_path, capsys):
    out = tmp_path / "t.csv"
    code, _, _ = run(["loads", "--k", "1", "--out", str(out)], capsys)
    assert code == 0
    table = read_table(out.read_text())
    assert table.name == "edge-loads"
    assert all(row[5] is True for row in table.rows)
    # and the json variant
    code, text, _ = run(["loads", "--k", "1", "--format", "json"], capsys)
    assert code == 0
    assert read_table(text).rows == table.rows


def test_env_seed_default(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("RWLAB_SEED", "123")
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert run(["domination", "--networks", "2", "--vertices", "5", "--max-edges", "6",
                "--out", str(a)], capsys)[0] == 0
    monkeypatch.delenv("RWLAB_SEED")
    assert run(["domination", "--networks", "2", "--vertices", "5", "--max-edges", "6",
                "--seed", "123", "--out", str(b)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_config_file_defaults_and_override(tmp_path, capsys):
    cfg = tmp_path / "cfg"
    cfg.write_text("n=4\nradius=3000\n")
    code, out, _ = run(["walk", "--mode", "halfmass", "--config", str(cfg)], capsys)
    assert code == 0 and read_table(out).rows[0][0] == 4
    code, out, _ = run(["walk", "--mode", "halfmass", "--config", str(cfg), "--n", "6"],
                       capsys)
    assert code == 0 and read_table(out).rows[0][0] == 6


def test_config_file_rejects_unknown_keys(tmp_path, capsys):
    cfg = tmp_path / "cfg"
    cfg.write_text("frob=1\n")
    code, _, err = run(["walk", "--config", str(cfg)], capsys)
    assert code == 1 and "unknown config keys" in err


def test_conductance_on_serialized_network(tmp_path, capsys):
    net = WeightedNetwork.from_edges([((0, 0), (1, 0), 1.0), ((1, 0), (2, 0), 1.0)])
    path = tmp_path / "net.txt"
    path.write_text(net.to_text())
    code, out, _ = run(["conductance", "--network", str(path),
                        "--source", "0,0", "--sink", "2,0"], capsys)
    assert code == 0
    assert read_table(out).rows[0][0] == pytest.approx(0.5)


def test_flow_subcommand(capsys):
    code, out, _ = run(["flow", "--kmax", "8"], capsys)
    assert code == 0
    table = read_table(out)
    assert table.meta["unit_flow_ok"] == "True"
    assert [r[0] for r in table.rows] == list(range(2, 8))


def test_rcm_sample_emits_reloadable_format(tmp_path, capsys):
    from rwlab.rcm import RcmSample

    out = tmp_path / "sample.txt"
    code, _, _ = run(["rcm", "--task", "sample", "--L", "6", "--seed", "3",
                      "--out", str(out)], capsys)
    assert code == 0
    s = RcmSample.from_text(out.read_text())
    assert s.L == 6.0 and s.seed == 3
    # and the sample feeds the discretize task
    code, text, _ = run(["rcm", "--task", "discretize", "--sample-file", str(out)], capsys)
    assert code == 0
    assert read_table(text).rows[0][0] > 0


def test_rcm_tail_expectations(capsys):
    code, _, _ = run(["rcm", "--task", "tail", "--kernel", "min", "--gamma", "0.4",
                      "--delta", "2.0", "--rmax", "64", "--expect", "bounded"], capsys)
    assert code == 0
    code, _, err = run(["rcm", "--task", "tail", "--kernel", "min", "--gamma", "0.0",
                        "--delta", "1.5", "--rmax", "64", "--expect", "bounded"], capsys)
    assert code == 2 and "violation" in err


def test_rewire_tail_and_field(capsys):
    code, out, _ = run(["rewire", "--task", "tail", "--kmax", "2", "--samples", "2000",
                        "--seed", "1"], capsys)
    assert code == 0
    assert len(read_table(out).rows) == 7
    code, out, _ = run(["rewire", "--task", "field", "--kmax", "1", "--radius", "3",
                        "--seed", "1"], capsys)
    assert code == 0
    table = read_table(out)
    assert "shifts" in table.meta and len(table.rows) > 0


def test_plotting_writes_figures(tmp_path, capsys):
    from rwlab.plotting import main as plot_main

    out = tmp_path / "loads.csv"
    assert run(["loads", "--k", "1", "--out", str(out)], capsys)[0] == 0
    assert plot_main([str(out)]) == 0
    assert (tmp_path / "loads.png").exists()
