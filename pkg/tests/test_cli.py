import json

import pytest

from pathreconf.cli import main
from pathreconf.graph import Model, save_instance
from pathreconf.reduction.rmc import cyclic_rmc

from .support import corridor, four_cycle, four_cycle_pendant, ladder


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


@pytest.fixture
def write(tmp_path):
    def _write(inst, name="inst.json"):
        path = tmp_path / name
        save_instance(inst, path)
        return path

    return _write


def test_solve_four_cycle_jump(capsys, write):
    code, out, _ = run(capsys, "solve", write(four_cycle(Model.TJ)), "--seed", 7)
    assert code == 0
    assert out["result"]["length"] == 1 and out["seed"] == 7


def test_solve_four_cycle_slide_is_no(capsys, write):
    code, out, _ = run(capsys, "solve", write(four_cycle(Model.TS)))
    assert code == 1 and out["result"]["reachable"] == "no"


def test_model_override_and_bfs(capsys, write):
    code, out, _ = run(capsys, "solve", write(four_cycle(Model.TJ)), "--model", "TS", "--method", "bfs")
    assert code == 1


def test_state_cap_gives_unknown(capsys, write):
    code, out, _ = run(capsys, "solve", write(corridor(10)), "--state-cap", 1)
    assert code == 2 and out["result"]["reachable"] == "unknown"


def test_oracle_and_stats(capsys, write):
    path = write(four_cycle_pendant())
    code, out, _ = run(capsys, "oracle", path)
    assert code == 0 and out["result"]["length"] == 1
    code, out, _ = run(capsys, "stats", path)
    assert code == 0
    assert out["layer_sizes"] == [1, 2, 1] and out["off_path_vertices"] == 1
    assert out["shortest_paths"] == 2


def test_bad_input(capsys, tmp_path):
    code, _, err = run(capsys, "solve", tmp_path / "missing.json")
    assert code == 3 and "error" in err
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 3, "edges": [[0, 1]], "s": 0, "t": 2, "P": [0, 1, 2], "Q": [0, 1, 2], "model": "TJ"}))
    code, _, _ = run(capsys, "solve", bad)
    assert code == 3
    assert main(["solve"]) == 3


def test_generate_and_verify(capsys, tmp_path):
    prefix = tmp_path / "gen"
    code, out, _ = run(capsys, "generate", "--kappa", 2, "--n", 2, "--r", 1, "--plant", "--seed", 5, "--out", prefix)
    assert code == 0 and out["witness_length"] == 240 and out["seed"] == 5
    files = out["files"]
    code, res, _ = run(capsys, "verify", files["instance"], files["witness"])
    assert code == 0 and res["valid"] and res["moves"] == 240

    moves = json.loads(open(files["witness"]).read())["moves"]
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps(moves[:3] + moves[4:]))
    code, res, err = run(capsys, "verify", files["instance"], broken)
    assert code == 1 and not res["valid"]
    assert res["violation"]["index"] >= 3 and "invalid" in err

    code, res, _ = run(capsys, "solve", files["instance"], "--layout", files["layout"])
    assert code == 0 and res["result"]["length"] == 240


def test_generate_is_deterministic(capsys, tmp_path):
    texts = []
    for name in ("a", "b"):
        code, _, _ = run(capsys, "generate", "--kappa", 2, "--n", 3, "--r", 2, "--plant", "--seed", 11, "--out", tmp_path / name)
        assert code == 0
        texts.append([(tmp_path / f"{name}.{kind}.json").read_text() for kind in ("instance", "layout", "witness")])
    assert texts[0] == texts[1]


def test_generate_degenerate_variant(capsys, tmp_path):
    code, out, _ = run(capsys, "generate", "--kappa", 2, "--n", 2, "--plant", "--variant", "tj-degenerate", "--out", tmp_path / "d")
    assert code == 0 and out["degeneracy"] <= 4 and out["witness_length"] == 570


def test_generate_from_rmc_file(capsys, tmp_path):
    rmc = tmp_path / "rmc.json"
    rmc.write_text(json.dumps(cyclic_rmc(3, 2, {(0, 1): [0], (0, 2): [0], (1, 2): [1]}).to_json()))
    code, out, _ = run(capsys, "generate", "--rmc", rmc, "--out", tmp_path / "tf")
    assert code == 0 and out["witness_length"] is None and out["clique"] is None
    files = out["files"]
    code, res, _ = run(capsys, "solve", files["instance"], "--layout", files["layout"])
    assert code == 1


def test_generate_rejects_bad_parameters(capsys, tmp_path):
    code, _, err = run(capsys, "generate", "--kappa", 2, "--n", 2, "--r", 9, "--out", tmp_path / "x")
    assert code == 3
    code, _, _ = run(capsys, "generate", "--out", tmp_path / "x")
    assert code == 3


def test_verify_on_wrong_instance(capsys, tmp_path, write):
    prefix = tmp_path / "gen"
    run(capsys, "generate", "--kappa", 2, "--n", 2, "--plant", "--out", prefix)
    code, _, _ = run(capsys, "verify", write(four_cycle()), f"{prefix}.witness.json")
    assert code in (1, 3)


def test_kernelize_prune(capsys, tmp_path, write):
    out_file = tmp_path / "red.json"
    log = tmp_path / "log.json"
    code, out, _ = run(capsys, "kernelize", write(four_cycle_pendant()), "--passes", "prune", "--out", out_file, "--log", log)
    assert code == 0 and out["reduced"]["n"] == 4
    assert json.loads(log.read_text())[0]["pass"] == "prune"
    code, res, _ = run(capsys, "solve", out_file)
    assert code == 0 and res["result"]["length"] == 1


def test_kernelize_window(capsys, write):
    path = write(ladder(6))
    code, out, _ = run(capsys, "kernelize", path, "--passes", "window")
    assert code == 3
    code, out, _ = run(capsys, "kernelize", path, "--passes", "window", "--budget", 2)
    assert code == 1 and out["stopped_by"] == "window"


def test_kernelize_fvs_and_solve_with_passes(capsys, write):
    path = write(corridor(10))
    code, out, _ = run(capsys, "kernelize", path, "--passes", "prune,fvs", "--fvs", "5,6,7")
    assert code == 0 and out["reduced"]["k"] < 10
    code, out, _ = run(capsys, "solve", path, "--passes", "prune,fvs")
    assert code == 0 and out["result"]["length"] == 2
    assert [r["pass"] for r in out["reductions"]] == ["prune", "fvs"]


def test_unknown_pass(capsys, write):
    code, _, err = run(capsys, "kernelize", write(four_cycle()), "--passes", "prune,bogus")
    assert code == 3 and "bogus" in err


def test_treedepth_file(capsys, tmp_path, write):
    td = tmp_path / "td.json"
    td.write_text(json.dumps({"parent": [None, 3, 3, 0]}))
    code, out, _ = run(capsys, "solve", write(four_cycle()), "--passes", "treedepth", "--treedepth", td)
    assert code == 0 and out["result"]["length"] == 1
