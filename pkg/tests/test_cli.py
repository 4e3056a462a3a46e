import json

import pytest

from pptmc.cli import main


def test_estimate_writes_report_and_trace(tmp_path, capsys):
    out = tmp_path / "report.json"
    trace = tmp_path / "trace.csv"
    rc = main([
        "estimate", "--dims", "2x2", "--rank", "4", "--field", "complex",
        "--trials", "1e4", "--seed", "7", "--batch-size", "2500",
        "--out", str(out), "--trace", str(trace),
    ])
    assert rc == 0
    report = json.loads(out.read_text())
    assert report["shape"] == {"m": 2, "n": 2, "N": 4, "rank": 4, "field": "complex"}
    assert report["trials"] == 10_000
    assert 0.18 < report["p_hat"] < 0.31
    lines = trace.read_text().strip().splitlines()
    assert lines[0] == "trials,successes,p_hat,wilson_lo,wilson_hi"
    assert len(lines) == 5
    assert lines[-1].startswith("10000,")
    # stdout carries the same JSON
    assert json.loads(capsys.readouterr().out)["trials"] == 10_000


def test_estimate_zero_trials_is_config_error(capsys):
    assert main(["estimate", "--dims", "2x2", "--rank", "4", "--trials", "0"]) == 2
    assert "error" in capsys.readouterr().err


def test_estimate_invalid_rank_is_config_error(capsys):
    assert main(["estimate", "--dims", "2x2", "--rank", "9", "--trials", "10"]) == 2


def test_estimate_resume_requires_checkpoint(capsys):
    rc = main(["estimate", "--dims", "2x2", "--rank", "4", "--trials", "10", "--resume"])
    assert rc == 2
    assert "checkpoint" in capsys.readouterr().err


def test_estimate_bad_dims_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["estimate", "--dims", "six", "--rank", "1", "--trials", "10"])
    assert exc.value.code == 2


def test_estimate_seed_env_override(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("PPTMC_SEED", "7")
    rc = main(["estimate", "--dims", "2x2", "--rank", "4", "--trials", "1e3"])
    assert rc == 0
    via_env = json.loads(capsys.readouterr().out)
    rc = main(["estimate", "--dims", "2x2", "--rank", "4", "--trials", "1e3", "--seed", "7"])
    assert rc == 0
    via_flag = json.loads(capsys.readouterr().out)
    assert via_env == via_flag


def test_conjecture_top_candidate(capsys):
    rc = main([
        "conjecture", "--phat", "0.00774006", "--trials", "8e8",
        "--primes", "2,3,5", "--max-den", "1e5",
    ])
    assert rc == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "387/50000 = 3^2*43 / 2^4*5^5"


def test_conjecture_exact_interval(capsys):
    rc = main(["conjecture", "--phat", "0.3", "--interval", "0"])
    assert rc == 0
    assert "3/10" in capsys.readouterr().out


def test_conjecture_from_report_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    main(["estimate", "--dims", "2x2", "--rank", "4", "--trials", "2e4",
          "--seed", "3", "--out", str(out)])
    capsys.readouterr()
    rc = main(["conjecture", "--report", str(out), "--max-den", "100"])
    assert rc == 0
    payload = json.loads("\n".join(capsys.readouterr().out.splitlines()[1:]))
    assert payload  # 8/33 region has small-denominator candidates


def test_conjecture_empty_result_warns(tmp_path, capsys):
    out = tmp_path / "cands.json"
    rc = main(["conjecture", "--phat", "0.1234567", "--interval", "1e-9",
               "--primes", "2", "--max-den", "4", "--out", str(out)])
    assert rc == 0
    captured = capsys.readouterr()
    assert "no candidates" in captured.err
    assert json.loads(out.read_text()) == []


def test_verify_zero_rank_passes(capsys):
    rc = main(["verify", "--suite", "zero-rank", "--trials", "1e4", "--seed", "1"])
    assert rc == 0
    out = capsys.readouterr().out
    assert out.count("[PASS]") == 2  # both fields


def test_verify_unknown_suite_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "bogus"])
    assert exc.value.code == 2


def test_trace_from_checkpoint(tmp_path, capsys):
    ck = tmp_path / "ck.json"
    main(["estimate", "--dims", "2x2", "--rank", "4", "--trials", "1e4",
          "--seed", "2", "--batch-size", "2000", "--checkpoint", str(ck)])
    capsys.readouterr()
    out = tmp_path / "trace.csv"
    rc = main(["trace", "--checkpoint", str(ck), "--out", str(out)])
    assert rc == 0
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 6  # header + 5 batches


def test_estimate_resume_roundtrip(tmp_path, capsys):
    ck = tmp_path / "ck.json"
    base = ["estimate", "--dims", "2x3", "--rank", "4", "--field", "real",
            "--trials", "9e3", "--seed", "11", "--batch-size", "3000"]
    rc = main(base + ["--checkpoint", str(ck)])
    assert rc == 0
    full = json.loads(capsys.readouterr().out)
    # a fresh process resuming from the final checkpoint reproduces the report
    rc = main(base + ["--checkpoint", str(ck), "--resume"])
    assert rc == 0
    resumed = json.loads(capsys.readouterr().out)
    assert resumed == full
