import json
from pathlib import Path

import pytest

from curvecx.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["farey", "distance", "0/1", "5/13"], {"distance": 3}),
        (["farey", "distance", "-1/2", "1/2"], {"distance": 2}),
        (["curve", "intersect", "--sig", "1,1", "1/2", "2/1"], {"intersection": 3}),
        (["cover", "scaling", "--degree", "2", "1/0", "0/1", "1/1"], {"length_ratio": 2, "intersection_ratio": 2}),
        (["qm", "eval", "--w", "0/1,1/2,2/5,5/13", "--W", "2", "--g", "[[1,5],[0,1]]", "--x0", "1/0"], {"h": 0}),
    ],
)
def test_examples(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert json.loads(out) == expected


def test_compact_sorted_output(capsys):
    _, out, _ = run(capsys, "cover", "scaling", "--degree", "2", "1/0", "0/1", "1/1")
    assert out == '{"intersection_ratio":2,"length_ratio":2}\n'


def test_classify(capsys):
    _, out, _ = run(capsys, "surface", "classify", "--sig", "1,1")
    assert json.loads(out)["class"] == "FareyModel"


def test_farey_path(capsys):
    _, out, _ = run(capsys, "farey", "path", "0/1", "5/13")
    assert "2/5" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["farey", "distance", "0/1"],
        ["farey", "distance", "0/1", "2/4"],
        ["farey", "nonsense"],
        ["curve", "intersect", "--sig", "0,2", "1,0,1", "0,1,1"],
        ["qm", "eval", "--w", "0/1,1/2,2/5", "--W", "2", "--g", "[[1,1],[0,1]]", "--x0", "0/1"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_invariant_error_exit(capsys):
    # a disjoint pair does not fill, so its midpoint is undefined
    code, out, err = run(capsys, "coarse", "mid", "--sig", "0,5", "0,0,0,1,0,1,1,1,1", "1,0,1,0,0,0,1,1,1")
    assert code == 1
    assert out == ""
    assert "error" in json.loads(err)


@pytest.mark.parametrize(
    "argv, golden",
    [
        (["qm", "defect", "--axis", "[[2,1],[1,1]]", "--samples", "20", "--max-len", "5", "--seed", "3"],
         "qm_defect_seed3.json"),
        (["coarse", "calibrate-r", "--sig", "0,5", "--samples", "5", "--seed", "3", "--weight-cap", "2"],
         "calibrate_seed3.json"),
    ],
)
def test_byte_identical_golden(capsys, argv, golden):
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second == (GOLDEN / golden).read_text()


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 3, "samples": 5, "sig": "0,5", "weight_cap": 2}))
    _, out, _ = run(capsys, "coarse", "calibrate-r", "--config", str(cfg))
    assert out == (GOLDEN / "calibrate_seed3.json").read_text()
    _, out, _ = run(capsys, "coarse", "calibrate-r", "--config", str(cfg), "--seed", "4")
    assert json.loads(out)["config"]["seed"] == 4


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"colour": "blue"}))
    code, _, _ = run(capsys, "farey", "distance", "0/1", "1/2", "--config", str(cfg))
    assert code == 2


def test_out_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "farey", "distance", "0/1", "5/13", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text()) == {"distance": 3}
