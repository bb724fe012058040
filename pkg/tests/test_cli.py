import json
from fractions import Fraction as F

import pytest

from ltumatch.cli import run
from ltumatch.games import game_from_json

FIG = "data/uneven2x2.json"
BLACK = "data/uneven2x2_black.json"
WHITE = "data/uneven2x2_white.json"
MIXED = "data/uneven2x2_mixed.json"
ZERO = "data/uneven2x2_zero.json"
ROOM = "data/roommates.json"
TAX = "data/tax_example.json"


@pytest.fixture(autouse=True)
def _run_from_repo_root(monkeypatch, data_dir):
    monkeypatch.chdir(data_dir.parent)


def _capture(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_solve_human(capsys):
    code, out, err = _capture(capsys, ["solve", FIG])
    assert code == 0
    assert err == ""
    assert "matching:" in out
    assert "hider loss: 1/4" in out
    assert "seeker payoff: 3/10" in out


def test_solve_json(capsys):
    code, out, _ = _capture(capsys, ["solve", FIG, "--json"])
    assert code == 0
    data = json.loads(out)
    assert data["label"] == 0
    assert data["hider_loss"] == "1/4"
    assert data["seeker_payoff"] == "3/10"
    assert data["outcome"]["v"] == ["1", "1"]
    assert data["profile"]["p"] == ["0", "2/5", "3/5", "0"]


def test_solve_decimal(capsys):
    code, out, _ = _capture(capsys, ["solve", FIG, "--json", "--decimal", "4"])
    assert code == 0
    data = json.loads(out)
    assert data["hider_loss"] == "0.2500"
    assert data["seeker_payoff"] == "0.3000"
    assert data["profile"]["p"] == ["0.0000", "0.4000", "0.6000", "0.0000"]


def test_solve_is_deterministic(capsys):
    _, first, _ = _capture(capsys, ["solve", FIG, "--json"])
    _, second, _ = _capture(capsys, ["solve", FIG, "--json"])
    assert first == second


def test_solve_all_labels(capsys):
    code, out, _ = _capture(capsys, ["solve", FIG, "--all-labels", "--json"])
    assert code == 0
    data = json.loads(out)
    labels = [l for group in data["outcomes"] for l in group["labels"]]
    assert sorted(labels) == list(range(8))


def test_solve_label_out_of_range(capsys):
    code, out, err = _capture(capsys, ["solve", FIG, "--label", "99"])
    assert code == 2
    assert "label" in err


def test_verify_stable_outcome(capsys):
    code, out, _ = _capture(capsys, ["verify", FIG, BLACK])
    assert code == 0
    assert out.strip() == "stable"


def test_verify_unstable_outcome(capsys):
    code, out, _ = _capture(capsys, ["verify", FIG, MIXED])
    assert code == 1
    assert "condition 4 (binding) at (w1,j2): 2/3 == 1/3 fails" in out


def test_verify_blocking_pairs_order(capsys):
    code, out, _ = _capture(capsys, ["verify", FIG, ZERO])
    assert code == 1
    lines = [l.strip() for l in out.splitlines()]
    start = lines.index("blocking pairs, worst deficit first:")
    assert lines[start + 1 : start + 5] == [
        "(w2,j1): 1/2",
        "(w2,j2): 1/2",
        "(w1,j1): 1/3",
        "(w1,j2): 1/3",
    ]


def test_verify_json(capsys):
    code, out, _ = _capture(capsys, ["verify", FIG, ZERO, "--json"])
    assert code == 1
    data = json.loads(out)
    assert data["stable"] is False
    assert len(data["violations"]) == 4
    assert data["blocking_pairs"][0] == {"x": "w2", "y": "j1", "deficit": "1/2"}


def test_to_game_round_trips(capsys):
    code, out, _ = _capture(capsys, ["to-game", FIG])
    assert code == 0
    game = game_from_json(out)
    assert game.shape == (4, 4)
    assert game.loss[0][0] == F(1, 2)


def test_from_eq_good_profile(capsys, tmp_path):
    profile = tmp_path / "profile.json"
    profile.write_text(
        json.dumps({"p": ["2/5", "0", "0", "3/5"], "q": ["1/2", "1/2", "0", "0"]})
    )
    code, out, _ = _capture(capsys, ["from-eq", FIG, str(profile)])
    assert code == 0
    assert "w1 -> j1: 1" in out


def test_from_eq_rejects_non_equilibrium(capsys, tmp_path):
    profile = tmp_path / "profile.json"
    profile.write_text(
        json.dumps({"p": ["1", "0", "0", "0"], "q": ["1", "0", "0", "0"]})
    )
    code, out, _ = _capture(capsys, ["from-eq", FIG, str(profile), "--json"])
    assert code == 1
    data = json.loads(out)
    assert data["equilibrium"] is False
    assert data["deviation"]["side"] == "hider"
    assert data["deviation"]["label"] == "w2,j1"


def test_check_tu_exit_codes(capsys):
    code, out, _ = _capture(capsys, ["check-tu", FIG])
    assert code == 1
    assert "rho(w1,w2;j1,j2) = 1/4" in out
    code, out, _ = _capture(capsys, ["check-tu", TAX, "--json"])
    assert code == 0
    data = json.loads(out)
    assert data["factorizes"] is True


def test_rescale_tu(capsys):
    code, out, _ = _capture(capsys, ["rescale-tu", TAX, "--json"])
    assert code == 0
    data = json.loads(out)
    assert all(pair["lambda"] == "1/2" for pair in data["problem"]["pairs"])
    assert data["problem"]["pairs"][0]["phi"] == "3/2"

    code, out, _ = _capture(capsys, ["rescale-tu", FIG])
    assert code == 1
    assert "factorize" in out


def test_exchange(capsys):
    code, out, _ = _capture(capsys, ["exchange", FIG, BLACK, WHITE])
    assert code == 1
    assert "unstable" in out
    code, out, _ = _capture(capsys, ["exchange", FIG, BLACK, BLACK])
    assert code == 0
    code, out, err = _capture(capsys, ["exchange", FIG, ZERO, WHITE])
    assert code == 2
    assert "not stable" in err


def test_counterexample(capsys):
    code, out, _ = _capture(capsys, ["counterexample", FIG, "--json"])
    assert code == 0
    data = json.loads(out)
    assert data["rho"] == "4"
    assert data["black"]["u"] == ["2", "3"]
    assert data["white"]["v"] == ["3", "2"]
    assert data["white_matching_black_split"]
    assert data["black_matching_white_split"]

    code, out, _ = _capture(capsys, ["counterexample", TAX])
    assert code == 1
    assert "factorizes" in out


def test_oracle(capsys):
    code, out, _ = _capture(capsys, ["oracle", FIG, "--json"])
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 5
    assert {"mu": [["1", "0"], ["0", "1"]], "u": ["1", "1"], "v": ["0", "0"]} in data[
        "outcomes"
    ]


def test_solve_m2o(capsys):
    code, out, _ = _capture(capsys, ["solve-m2o", ROOM, "--json"])
    assert code == 0
    data = json.loads(out)
    assert data["shift"] == "1/2"
    assert data["outcome"] == {"mu": ["0", "1"], "u": ["2"]}

    code, out, _ = _capture(capsys, ["solve-m2o", ROOM])
    assert code == 0
    assert "arrangement (1,1): 1" in out
    assert "worker utilities: 1=2" in out


def test_verify_m2o(capsys, tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"mu": ["0", "1"], "u": ["2"]}))
    code, out, _ = _capture(capsys, ["verify-m2o", ROOM, str(good)])
    assert code == 0
    assert out.strip() == "stable"

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"mu": ["2", "0"], "u": ["1/2"]}))
    code, out, _ = _capture(capsys, ["verify-m2o", ROOM, str(bad)])
    assert code == 1
    assert "condition 1 (blocking)" in out


def test_fuzz_subcommand(capsys):
    code, out, _ = _capture(capsys, ["fuzz", "--count", "10"])
    assert code == 0
    assert "every check passed" in out


def test_input_errors_exit_2(capsys, tmp_path):
    code, _, err = _capture(capsys, ["solve", str(tmp_path / "missing.json")])
    assert code == 2
    assert "error:" in err

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = _capture(capsys, ["solve", str(bad)])
    assert code == 2

    empty = tmp_path / "empty.json"
    empty.write_text("{}")
    code, _, err = _capture(capsys, ["solve", str(empty)])
    assert code == 2


def test_unknown_command_exits_2():
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate"])
    assert exc.value.code == 2
