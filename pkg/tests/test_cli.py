import json

import pytest

from prefixpoly import cli, posets


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_volume_text(capsys):
    code, out, _ = run_cli(capsys, "volume", "--n", "3")
    assert code == 0
    assert out.strip() == "1/6 x1^3 + 1/2 x1^2 x2 + 1/2 x1^2 x3 + 1/2 x1 x2^2 + x1 x2 x3"


def test_volume_eval(capsys):
    code, out, _ = run_cli(capsys, "volume", "--n", "3", "--eval", "1,1,1")
    assert code == 0 and out.strip() == "8/3"
    code, out, _ = run_cli(capsys, "volume", "--n", "2", "--eval", "1/2,1/2")
    assert code == 0 and out.strip() == "3/8"


def test_volume_json(capsys):
    code, out, _ = run_cli(capsys, "volume", "--n", "2", "--json")
    data = json.loads(out)
    assert data["nvars"] == 2
    assert {"coeff": "1/2", "exps": [2, 0]} in data["terms"]


def test_lattice(capsys):
    code, out, _ = run_cli(capsys, "lattice", "--x", "1,1,1")
    assert code == 0 and out.strip() == "14"
    code, out, _ = run_cli(capsys, "lattice", "--x", "3,1", "--z", "1,1")
    assert code == 0 and out.strip() == "8"


def test_ehrhart(capsys):
    code, out, _ = run_cli(capsys, "ehrhart", "--n", "2", "--a", "1", "--b", "1")
    assert code == 0 and out.strip() == "3/2 r^2 + 5/2 r + 1"
    code, out, _ = run_cli(capsys, "ehrhart", "--n", "3", "--a", "1", "--b", "1", "--r", "1")
    assert out.strip() == "14"


def test_parking(capsys):
    code, out, _ = run_cli(capsys, "parking", "--x", "2,1")
    assert code == 0 and out.strip() == "8"


def test_poset_section(capsys, tmp_path):
    poset = posets.FinitePoset(6, [(1, 3), (2, 4), (3, 4), (3, 5), (4, 6), (5, 6)])
    path = tmp_path / "poset.json"
    path.write_text(json.dumps(poset.to_json_dict()))
    code, out, _ = run_cli(
        capsys, "poset-section", "--poset", str(path), "--chain", "1,3,6", "--x", "1,1,1"
    )
    assert code == 0
    assert int(out.strip()) == posets.section_count(
        poset, posets.MarkedChain(poset, (1, 3, 6)), [1, 1, 1]
    )
    code, out, _ = run_cli(
        capsys, "poset-section", "--poset", str(path), "--chain", "1,3,6", "--volume"
    )
    assert code == 0 and "x3" in out


def test_tree_commands(capsys):
    code, out, _ = run_cli(capsys, "tree", "enumerate", "--n", "3")
    assert code == 0 and len(out.strip().splitlines()) == 5
    code, out, _ = run_cli(capsys, "tree", "of-k", "--k", "2,1,0,1")
    parens = out.strip()
    code, out, _ = run_cli(capsys, "tree", "k-of", "--tree", parens)
    assert out.strip() == "2,1,0,1"
    code, out, _ = run_cli(capsys, "tree", "locate", "--n", "4", "--point=-1,2,1")
    assert code == 0 and out.strip()
    code, out, _ = run_cli(capsys, "tree", "locate", "--n", "3", "--point", "0,0")
    assert out.strip() == "boundary"
    code, out, _ = run_cli(capsys, "tree", "triangulate", "--k", "1,1")
    data = json.loads(out)
    assert data["n_gon"] == 4 and len(data["diagonals"]) == 1


def test_subdivide_outputs(capsys, tmp_path):
    svg = tmp_path / "out.svg"
    code, out, _ = run_cli(capsys, "subdivide", "--x", "1,2", "--svg", str(svg))
    assert code == 0 and svg.exists()
    body = svg.read_text()
    assert body.startswith("<?xml") and body.count("<polygon") == 2

    obj = tmp_path / "out.obj"
    code, out, _ = run_cli(capsys, "subdivide", "--x", "1,2,3", "--obj", str(obj))
    assert code == 0 and obj.exists()
    body = obj.read_text()
    assert body.count("g chamber_k_") == 5

    code, out, _ = run_cli(capsys, "subdivide", "--x", "1,1")
    data = json.loads(out)
    assert len(data["chambers"]) == 2
    total = sum(json.loads(json.dumps(c))["k"][0] for c in data["chambers"])
    assert total == 3  # k vectors (1,1) and (2,0)


def test_prob_commands(capsys):
    code, out, _ = run_cli(capsys, "prob", "band", "--s", "1/2,1")
    assert code == 0 and out.strip() == "3/4"
    code, out, _ = run_cli(capsys, "prob", "band", "--r", "0,1/3,1/2")
    assert out.strip() == "17/24"
    code, out, _ = run_cli(capsys, "prob", "band", "--r", "1/4", "--s", "3/4")
    assert out.strip() == "1/2"
    code, out, _ = run_cli(capsys, "prob", "daniels", "--n", "5", "--p", "3/10")
    assert out.strip() == "7/10"
    code, out, _ = run_cli(capsys, "prob", "pyke", "--n", "3", "--b", "1/3", "--x", "1/2")
    assert "/" in out
    code, out, _ = run_cli(
        capsys, "prob", "mc", "--s", "1/2,1", "--trials", "2000", "--seed", "3"
    )
    data = json.loads(out)
    assert set(data) == {"estimate", "std_error", "trials", "seed"}
    assert data["trials"] == 2000 and data["seed"] == 3


def test_verify_suite(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "ballot", "--seed", "42")
    assert code == 0
    assert "criterion 02" in out and "PASS" in out and "all criteria passed" in out


def test_verify_determinism(capsys):
    _, out1, _ = run_cli(capsys, "verify", "--suite", "parking", "--seed", "7")
    _, out2, _ = run_cli(capsys, "verify", "--suite", "parking", "--seed", "7")
    assert out1 == out2


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as err:
        cli.main(["volume"])  # missing --n
    assert err.value.code == 2
    code, out, errtext = run_cli(capsys, "lattice", "--x", "1,-2")
    assert code == cli.EXIT_USAGE and "error" in errtext


def test_resource_exit_code(capsys):
    code, out, errtext = run_cli(capsys, "parking", "--x", "9,9")
    assert code == cli.EXIT_RESOURCE
    assert "resource guard" in errtext


def test_config_file(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "prefixpoly.cfg"
    cfg.write_text("# settings\nverify_seed = 7\nmc_trials = 1000\n")
    monkeypatch.setenv("PREFIXPOLY_CONFIG", str(cfg))
    code, out, _ = run_cli(capsys, "prob", "mc", "--s", "1,1")
    data = json.loads(out)
    assert data["trials"] == 1000
    bad = tmp_path / "bad.cfg"
    bad.write_text("unknown_key = 1\n")
    monkeypatch.setenv("PREFIXPOLY_CONFIG", str(bad))
    code, out, errtext = run_cli(capsys, "verify", "--suite", "ballot")
    assert code == cli.EXIT_USAGE
