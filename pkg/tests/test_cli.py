"""Command-line surface: exit codes, JSON output, report round-trips,
and the CSV/PNG artifact paths."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from rigidcheck.cli import (CLIError, MembershipReport, build_parser, main,
                            parse_point)
from rigidcheck.fields import QQ, PrimeField

FIXTURES = Path(__file__).parent / "fixtures"
GOOD = str(FIXTURES / "rank3_all_conditions.txt")
BAD_G = str(FIXTURES / "rank3_condition_g_fails.txt")
FERMAT_Q = str(FIXTURES / "fermat_quintic_q.txt")
FERMAT_F3 = str(FIXTURES / "fermat_quintic_f3.txt")


def test_parse_point_forms():
    F7 = PrimeField(7)
    o = parse_point("8:1:0:0:0:0", F7, 6)
    assert o.coords[0] == F7.of(1)
    o = parse_point("1,2,3,4,5,6", F7, 6)
    assert len(o.coords) == 6
    o = parse_point("1/2:1:0:0:0:0", F7, 6)
    assert o.coords == parse_point("4:1:0:0:0:0", F7, 6).coords  # 1/2 = 4 mod 7
    o = parse_point("1:-1/3:0:0:0:0", QQ, 6)
    assert str(o.coords[1]) == "-1/3"
    with pytest.raises(CLIError):
        parse_point("1:2:3", F7, 6)
    with pytest.raises(CLIError):
        parse_point("1:x:0:0:0:0", F7, 6)
    with pytest.raises(CLIError):
        parse_point("0:0:0:0:0:0", F7, 6)


def test_classify_point_json(capsys):
    code = main(["classify", GOOD, "--point", "1:0:0:0:0:0", "--json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    entry = out["points"][0]
    assert entry["kind"] == "QuadraticRank(3)"
    assert entry["condition_g"] is True
    assert entry["regularity"]["condition"] == "R3"
    assert entry["regularity"]["ok"] is True
    assert entry["problems"] == []


def test_classify_rejects_point_off_hypersurface(capsys):
    code = main(["classify", GOOD, "--point", "0:0:0:0:0:1"])
    assert code == 3
    assert "does not lie" in capsys.readouterr().err


def test_classify_all_fp_points_fermat_f3(capsys):
    code = main(["classify", FERMAT_F3, "--all-Fp-points", "--json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    # over F_3 fifth powers reduce to first powers, so the Fermat quintic
    # counts like the hyperplane sum(x_i) = 0: 121 points, all nonsingular
    assert out["summary"] == {"points_on_hypersurface": 121,
                              "singular": 0, "nonsingular": 121}
    assert out["points"] == []


def test_classify_budget_exhausted_is_exit_2(capsys):
    code = main(["classify", GOOD, "--point", "1:0:0:0:0:0",
                 "--budget-groebner", "1"])
    assert code == 2
    assert "inconclusive" in capsys.readouterr().err


def test_check_membership_good_fixture(capsys):
    code = main(["check-membership", GOOD, "--json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["verdict"] == "ConditionsVerified"
    assert out["sing_locus_dim"] == 0
    assert out["witness"] is None
    kinds = [e["kind"] for e in out["points"]]
    assert kinds == ["QuadraticRank(3)"]
    assert any("19608 points" in n for n in out["notes"])


def test_check_membership_condition_g_violation(capsys):
    code = main(["check-membership", BAD_G, "--json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 1
    assert out["verdict"] == "ConditionViolated"
    assert out["witness"]["point"] == ["1", "0", "0", "0", "0", "0"]
    assert out["witness"]["condition"].startswith("condition (G) fails")


def test_check_membership_over_q_checks_supplied_points(capsys):
    code = main(["check-membership", FERMAT_Q, "--point", "1:-1:0:0:0:0",
                 "--json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["verdict"] == "ConditionsVerified"
    assert out["sing_locus_dim"] == -1
    assert out["points"][0]["kind"] == "Nonsingular"
    assert out["points"][0]["regularity"]["condition"] == "VacuousM5"
    assert any("user-supplied" in n for n in out["notes"])


def test_check_membership_budget_is_inconclusive(capsys):
    code = main(["check-membership", BAD_G, "--budget-groebner", "1",
                 "--json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 2
    assert out["verdict"] == "Inconclusive"
    assert any("budget" in n or "not computed" in n for n in out["notes"])


def test_membership_report_round_trip(capsys):
    main(["check-membership", FERMAT_Q, "--point", "1:-1:0:0:0:0", "--json"])
    data = json.loads(capsys.readouterr().out)
    rep = MembershipReport.from_dict(data)
    assert rep.to_dict() == data
    text = rep.render()
    assert "verdict: ConditionsVerified" in text
    assert "VacuousM5" in text


def test_codim_tables_json(capsys):
    code = main(["codim-tables", "--M", "7", "--json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out[0]["gamma"] == 15
    assert out[0]["verdict"] is True
    assert out[0]["h_analysis"]["true_min"] == 40


def test_codim_tables_text_and_artifacts(tmp_path, capsys):
    code = main(["codim-tables", "--M", "5", "--M-max", "7",
                 "--outdir", str(tmp_path)])
    captured = capsys.readouterr()
    assert code == 0
    assert "gamma" in captured.out or "target" in captured.out
    csv_path = tmp_path / "codim_M5-7.csv"
    png_path = tmp_path / "codim_M5-7.png"
    assert csv_path.exists() and png_path.exists()
    header = csv_path.read_text().splitlines()[0]
    assert header == "M,check,bound,comparison,required,ok"
    assert png_path.stat().st_size > 0


def test_codim_tables_usage_errors(capsys):
    assert main(["codim-tables", "--M", "4"]) == 3
    assert main(["codim-tables", "--M", "7", "--M-max", "6"]) == 3
    capsys.readouterr()


def test_census_cli_deterministic(tmp_path, capsys):
    argv = ["census", "--M", "5", "--p", "3", "--samples", "8",
            "--seed", "cli", "--json"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    second = capsys.readouterr().out
    assert first == second
    rep = json.loads(first)
    assert rep["config"]["M"] == 5 and rep["config"]["p"] == 3
    assert rep["counts"]["samples"] == 8

    code = main(["census", "--M", "5", "--p", "3", "--samples", "8",
                 "--seed", "cli", "--outdir", str(tmp_path)])
    assert code == 0
    assert (tmp_path / "census_M5_p3_n8_cli.csv").exists()
    assert (tmp_path / "census_M5_p3_n8_cli.png").exists()
    capsys.readouterr()


def test_census_cli_checks_flag(capsys):
    code = main(["census", "--M", "5", "--p", "3", "--samples", "3",
                 "--seed", "c", "--checks", "classify,condition_g", "--json"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["config"]["checks"] == ["classify", "condition_g"]
    assert "g_checked" in out["counts"]


def test_census_cli_bad_config(capsys):
    assert main(["census", "--M", "5", "--p", "4", "--samples", "3"]) == 3
    assert main(["census", "--M", "4", "--p", "5", "--samples", "3"]) == 3
    assert main(["census", "--M", "5", "--p", "5", "--samples", "3",
                 "--checks", "bogus"]) == 3
    capsys.readouterr()


def test_file_errors_are_exit_3(tmp_path, capsys):
    assert main(["classify", str(tmp_path / "missing.txt")]) == 3
    bad = tmp_path / "bad.txt"
    bad.write_text("M=5 field=Fp:7\nx0^4\n")  # degree 4 but M = 5
    assert main(["classify", str(bad)]) == 3
    membership_low = tmp_path / "low.txt"
    membership_low.write_text("M=4 field=Fp:7\nx0^4 + x1^4 + x2^4 + x3^4 + x4^4\n")
    assert main(["check-membership", str(membership_low)]) == 3
    capsys.readouterr()


def test_argparse_usage_error_is_exit_3():
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 3
    with pytest.raises(SystemExit) as exc:
        main(["codim-tables"])  # missing required --M
    assert exc.value.code == 3


def test_scan_flags_require_m5_fp(capsys):
    code = main(["check-membership", FERMAT_Q, "--check-planes"])
    assert code == 3
    assert "M = 5 over a prime field" in capsys.readouterr().err


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rigidcheck.cli",
                           "codim-tables", "--M", "5", "--json"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)[0]["M"] == 5


def test_parser_help_lists_subcommands():
    parser = build_parser()
    help_text = parser.format_help()
    for name in ("classify", "check-membership", "codim-tables", "census"):
        assert name in help_text