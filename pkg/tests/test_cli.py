import csv
import json
import math

import pytest

from qudit_tradeoff.cli import main, parse_angle, parse_sweep
from qudit_tradeoff.fidelity import FidelityPoint, bound_check


def run(tmp_path, argv, name="out.csv"):
    out = tmp_path / name
    code = main(argv + ["--out", str(out)])
    return code, out


def read_rows(path):
    with open(path) as fh:
        return list(csv.DictReader(fh))


def test_parse_angles():
    assert parse_angle("pi/2") == math.pi / 2
    assert parse_angle("4*pi/9") == pytest.approx(4 * math.pi / 9)
    assert parse_sweep("0:pi/2:3") == [0.0, math.pi / 4, math.pi / 2]
    assert parse_sweep("0.1,0.2") == [0.1, 0.2]
    for bad in ("__import__('os')", "2", "0:1", "pi/2:0:0", "x"):
        with pytest.raises(ValueError):
            parse_sweep(bad)


def test_tradeoff_three_points(tmp_path):
    code, out = run(tmp_path, ["tradeoff", "--dim", "2", "--theta", "0:pi/2:3"])
    assert code == 0
    rows = read_rows(out)
    assert list(rows[0]) == ["theta", "G", "F", "bound_slack"]
    assert [float(r["theta"]) for r in rows] == pytest.approx([0, math.pi / 4, math.pi / 2])
    assert float(rows[0]["G"]) == pytest.approx(2 / 3) and float(rows[0]["F"]) == pytest.approx(2 / 3)
    assert float(rows[2]["G"]) == pytest.approx(1 / 2) and float(rows[2]["F"]) == pytest.approx(1)
    assert all(abs(float(r["bound_slack"])) <= 1e-9 for r in rows)


def test_outputs_deterministic(tmp_path):
    for argv in (["tradeoff", "--dim", "3"], ["two-user", "--theta-b", "0:pi/2:7"], ["simulate", "--samples", "300", "--seed", "4"]):
        _, a = run(tmp_path, argv, "a.txt")
        _, b = run(tmp_path, argv, "b.txt")
        assert a.read_bytes() == b.read_bytes()


def test_sequential_reduces_to_tradeoff(tmp_path):
    _, t = run(tmp_path, ["tradeoff", "--dim", "3"], "t.csv")
    _, s = run(tmp_path, ["sequential", "--dim", "3", "--users", "1"], "s.csv")
    for a, b in zip(read_rows(t), read_rows(s)):
        assert (a["theta"], a["G"], a["F"]) == (b["theta"], b["G"], b["F_N"])


def test_sequential_qutrit_value(tmp_path):
    code, out = run(tmp_path, ["sequential", "--dim", "3", "--users", "2", "--theta", "pi/3"])
    assert code == 0
    assert float(read_rows(out)[0]["F_N"]) == pytest.approx((1 + math.sin(math.pi / 3) ** 4) / 2, abs=1e-12)
    assert float(read_rows(out)[0]["F_N"]) == pytest.approx(0.78125, abs=1e-12)


def test_sequential_more_users_lower(tmp_path):
    _, two = run(tmp_path, ["sequential", "--dim", "2", "--users", "2"], "two.csv")
    _, ten = run(tmp_path, ["sequential", "--dim", "2", "--users", "10"], "ten.csv")
    for a, b in zip(read_rows(two), read_rows(ten)):
        assert a["G"] == b["G"]
        assert float(b["F_N"]) <= float(a["F_N"]) + 1e-14


def test_sequential_large_homogeneous_uses_closed_form(tmp_path):
    code, out = run(tmp_path, ["sequential", "--dim", "4", "--users", "12", "--theta", "1.0", "--budget", "10"])
    assert code == 0 and len(read_rows(out)) == 1


def test_sequential_heterogeneous_chain(tmp_path):
    code, out = run(tmp_path, ["sequential", "--dim", "2", "--chain", "0.3,1.1"])
    assert code == 0
    row = read_rows(out)[0]
    assert float(row["F_N"]) == pytest.approx((2 + math.sin(0.3) ** 2 * math.sin(1.1) ** 2) / 3, abs=1e-12)
    code, _ = run(tmp_path, ["sequential", "--dim", "3", "--chain", "0.1:1.0:8", "--budget", "100"])
    assert code == 2


def test_two_user_slices(tmp_path):
    _, out = run(tmp_path, ["two-user", "--theta-a", "pi/2,pi/3", "--theta-b", "0:pi/2:11"])
    rows = read_rows(out)
    assert list(rows[0]) == ["theta_a", "theta_b", "G", "F"]
    for r in rows:
        p = FidelityPoint(G=float(r["G"]), F=float(r["F"]))
        slack = bound_check(p, 2).slack
        assert slack >= -1e-9
        if float(r["theta_a"]) == math.pi / 2:
            assert abs(slack) <= 1e-9
        if float(r["theta_b"]) == math.pi / 2:
            ta = float(r["theta_a"])
            assert p.F == pytest.approx((5 - math.cos(2 * ta)) / 6, abs=1e-12)


def test_two_user_diagonal_matches_sequential(tmp_path):
    _, seq = run(tmp_path, ["sequential", "--dim", "2", "--users", "2", "--theta", "0:pi/2:9"], "s.csv")
    for r in read_rows(seq):
        _, tu = run(tmp_path, ["two-user", "--theta-a", r["theta"], "--theta-b", r["theta"]], "t.csv")
        row = read_rows(tu)[0]
        assert float(row["F"]) == pytest.approx(float(r["F_N"]), abs=1e-12)
        assert row["G"] == r["G"]


def test_json_format(tmp_path):
    code, out = run(tmp_path, ["tradeoff", "--theta", "0.5", "--format", "json"], "o.json")
    assert code == 0
    data = json.loads(out.read_text())
    assert set(data[0]) == {"theta", "G", "F", "bound_slack"}
    code, out = run(tmp_path, ["simulate", "--samples", "200", "--format", "json"], "s.json")
    rec = json.loads(out.read_text())
    assert rec["n_signals"] == 200 and len(rec["outcome_counts"]) == 1


def test_config_file_and_precedence(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"dim": 3, "theta": "pi/3", "users": 2}))
    code, out = run(tmp_path, ["sequential", "--config", str(cfg)])
    assert float(read_rows(out)[0]["F_N"]) == pytest.approx(0.78125, abs=1e-12)
    code, out = run(tmp_path, ["sequential", "--config", str(cfg), "--dim", "2"])
    assert float(read_rows(out)[0]["F_N"]) == pytest.approx((2 + 9 / 16) / 3, abs=1e-12)
    cfg.write_text(json.dumps({"dim": 3, "colour": "red"}))
    assert main(["tradeoff", "--config", str(cfg)]) == 1


def test_validation_errors(tmp_path, capsys):
    assert main(["tradeoff", "--theta", "2.0"]) == 1
    assert main(["tradeoff", "--dim", "1"]) == 1
    assert main(["simulate", "--samples", "0"]) == 1
    assert main(["tradeoff", "--out", str(tmp_path / "missing" / "x.csv")]) == 1
    assert "missing" in capsys.readouterr().err


def test_simulate_csv(tmp_path):
    code, out = run(tmp_path, ["simulate", "--dim", "3", "--users", "3", "--theta", "0.6", "--samples", "500"])
    assert code == 0
    text = out.read_text()
    assert text.startswith("n_signals,F,stderr_F,G,stderr_G\n500,")
    assert "user,count_0,count_1,count_2" in text


def test_verify_passes_and_fault_injection(capsys):
    assert main(["verify", "--quick"]) == 0
    report = capsys.readouterr().out
    assert "bound saturation max|slack|" in report and "FAIL" not in report
    assert main(["verify", "--quick", "--tolerance", "0"]) == 3
    assert "FAIL" in capsys.readouterr().out
