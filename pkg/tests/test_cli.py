import csv
import io
import json
from fractions import Fraction

import pytest

from fsig import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def json_records(out):
    return [json.loads(line) for line in out.splitlines()]


def test_veronese_both(capsys):
    code, out, _ = run(capsys, "veronese", "2", "3", "--method", "both", "--json")
    assert code == 0
    recs = json_records(out)
    assert [r["value"] for r in recs] == ["2/3", "2/3"]
    assert {r["method"] for r in recs} == {"closed_form", "brute_force"}
    for r in recs:
        assert set(r) == {"family", "params", "quantity", "value", "method", "witness", "certificates"}


def test_veronese_plain(capsys):
    code, out, _ = run(capsys, "veronese", "1", "5")
    assert code == 0 and " 1  closed_form" in out
    code, out, _ = run(capsys, "veronese", "3", "4", "--json")
    assert json_records(out)[0]["value"] == "1/2"


def test_veronese_cap_exit(capsys):
    code, _, err = run(capsys, "veronese", "3", "4", "--method", "brute", "--cap", "5")
    assert code == cli.EXIT_CAP and "cap" in err


def test_cap_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("FSIG_CAP", "5")
    code, _, _ = run(capsys, "veronese", "3", "4", "--method", "brute")
    assert code == cli.EXIT_CAP
    code, _, _ = run(capsys, "veronese", "3", "4", "--method", "brute", "--cap", "20")
    assert code == 0


def test_segre_records(capsys):
    code, out, _ = run(capsys, "segre", "1", "2", "--json")
    assert code == 0
    recs = json_records(out)
    duals = [r for r in recs if r["quantity"] == "dual_f_signature"]
    assert {r["value"] for r in duals} == {"11/16"}
    assert any("equality" in c for r in duals for c in r["certificates"])
    assert [r["value"] for r in recs if r["quantity"] == "f_signature"] == ["11/24"]


def test_segre_table_rows(capsys):
    _, out, _ = run(capsys, "segre", "1", "2", "2", "2", "--json")
    recs = json_records(out)
    assert {r["value"] for r in recs if r["quantity"] == "dual_f_signature"} == {"1137/4480"}
    assert [r["value"] for r in recs if r["quantity"] == "f_signature"] == ["379/2240"]
    _, out, _ = run(capsys, "segre", "1", "1", "--json")
    assert {r["value"] for r in json_records(out)} == {"2/3"}


def test_segre_without_equality_reports_bound(capsys):
    code, out, _ = run(capsys, "segre", "1", "3", "5", "--method", "bound", "--json")
    assert code == 0
    recs = json_records(out)
    assert recs[0]["quantity"] == "upper_bound" and recs[0]["method"] == "upper_bound"


def test_segre_usage_errors(capsys):
    assert run(capsys, "segre", "2", "1")[0] == cli.EXIT_USAGE
    assert run(capsys, "segre", "1")[0] == cli.EXIT_USAGE
    assert run(capsys, "segre", "x", "1")[0] == cli.EXIT_USAGE
    assert run(capsys, "bogus")[0] == cli.EXIT_USAGE


def test_segre_brute_cap(capsys):
    code, _, err = run(capsys, "segre", "1", "3", "5", "--method", "brute")
    assert code == cli.EXIT_CAP


def test_probe_conjecture(capsys):
    code, out, _ = run(capsys, "segre", "1", "2", "3", "--probe-conjecture", "--json")
    assert code == 0
    probe = [r for r in json_records(out) if r["quantity"] == "conjecture_gap"][0]
    assert probe["value"] == "0" and probe["certificates"] == ["bound attained"]


def test_mismatch_exit_code(capsys, monkeypatch):
    from fsig.signatures import SignatureReport

    monkeypatch.setattr(cli, "veronese_dual", lambda n, d: SignatureReport(Fraction(1, 7), "closed_form"))
    code, _, err = run(capsys, "veronese", "2", "3", "--method", "both")
    assert code == cli.EXIT_MISMATCH and "disagrees" in err


def test_segre_mismatch_exit_code(capsys, monkeypatch):
    from fsig.signatures import SignatureReport

    monkeypatch.setattr(cli, "segre_upper_bound", lambda p: SignatureReport(Fraction(1, 2), "closed_form", None, ("x",)))
    code, _, _ = run(capsys, "segre", "1", "2")
    assert code == cli.EXIT_MISMATCH


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--threads", "2")
    assert code == 0
    assert "14/14 rows match" in out
    assert "151/270" in out and "129/320" in out


def test_table_mismatch(capsys, monkeypatch):
    rows = cli.load_paper_table()
    rows[0] = (rows[0][0], Fraction(1, 2), rows[0][2])
    monkeypatch.setattr(cli, "load_paper_table", lambda: rows)
    code, out, err = run(capsys, "table")
    assert code == cli.EXIT_MISMATCH and "mismatch (1, 1)" in err


def test_formats_agree(capsys):
    _, plain, _ = run(capsys, "segre", "1", "1", "2")
    _, js, _ = run(capsys, "segre", "1", "1", "2", "--json")
    _, cs, _ = run(capsys, "segre", "1", "1", "2", "--csv", "--approx")
    json_values = [r["value"] for r in json_records(js)]
    csv_rows = list(csv.DictReader(io.StringIO(cs)))
    assert [r["value"] for r in csv_rows] == json_values
    plain_values = [line.split()[3] for line in plain.splitlines()]
    assert plain_values == json_values
    for v in json_values:
        assert str(Fraction(v)) == v
    assert all("approx" in r for r in csv_rows)


def test_table_machine_output(capsys):
    _, out, _ = run(capsys, "table", "--json")
    recs = json_records(out)
    assert len(recs) == 28
    for r in recs:
        Fraction(r["value"])


def test_osequence_commands(capsys):
    code, out, _ = run(capsys, "osequence", "check", "1,2,5", "--json")
    rec = json_records(out)[0]
    assert code == 0 and rec["value"] == "0" and rec["certificates"] == ["invalid at index 2"]
    _, out, _ = run(capsys, "osequence", "shift", "5", "2", "--json")
    assert [r["value"] for r in json_records(out)] == ["7", "2"]
    _, out, _ = run(capsys, "osequence", "keylemma", "1,3,6,10", "2", "--json")
    rec = json_records(out)[0]
    assert rec["value"] == "1" and rec["certificates"] == ["holds with equality at every index"]


def test_osequence_malformed(capsys):
    assert run(capsys, "osequence", "check", "1,a")[0] == cli.EXIT_USAGE
    assert run(capsys, "osequence", "keylemma", "1,2,5", "2")[0] == cli.EXIT_USAGE
    assert run(capsys, "osequence", "shift", "0", "2")[0] == cli.EXIT_USAGE


def test_golden_file_has_fourteen_rows():
    rows = cli.load_paper_table()
    assert len(rows) == 14
    assert rows[4] == ((2, 3), Fraction(151, 270), Fraction(151, 360))
