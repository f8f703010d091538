import json

import pytest

from kconn.cli import main
from kconn.abelian import parse_group

try:
    import jsonschema
except ImportError:  # pragma: no cover
    jsonschema = None

from importlib import resources


def run_cli(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse error path
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def load_schema():
    text = resources.files("kconn.data").joinpath("output.schema.json").read_text("utf-8")
    return json.loads(text)


# --- spec'd examples ----------------------------------------------------------

def test_lu_csv_example(capsys):
    code, out, _ = run_cli(capsys, "lu", "--p", "2", "--max", "9", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "degree,group,rank,invariants"
    assert lines[1:] == [
        "1,Z/2,0,2",
        "3,Z/4,0,4",
        "5,Z/8,0,8",
        "7,Z/16,0,16",
        "9,Z/32,0,32",
    ]


def test_x_count_text(capsys):
    code, out, _ = run_cli(capsys, "x-count", "--n", "10")
    assert code == 0
    assert out == "5\n"


def test_audit_smash_exit_3_with_errata(capsys):
    code, out, _ = run_cli(capsys, "audit", "--space", "smash", "--max", "24")
    assert code == 3
    assert "8n+3" in out and "8n+7" in out
    assert "errata" in out


def test_audit_rp_exit_0(capsys):
    code, out, _ = run_cli(capsys, "audit", "--space", "rp", "--max", "24")
    assert code == 0
    assert "errata: none" in out


def test_verify_all_reports_every_criterion(capsys):
    code, out, _ = run_cli(capsys, "verify-all")
    lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
    assert len(lines) == 10
    # criterion 5 carries the documented degree-4 exactness defect of the
    # published sequence claim; everything else passes
    assert sum(1 for l in lines if l.startswith("PASS")) == 9
    assert any(l.startswith("FAIL criterion 5") for l in lines)
    assert code == 2


# --- malformed input ---------------------------------------------------------------

def test_unknown_verb_exits_1(capsys):
    code, _, err = run_cli(capsys, "frobnicate")
    assert code == 1
    assert "usage" in err


def test_nonprime_p_exits_1(capsys):
    code, _, err = run_cli(capsys, "lu", "--p", "6", "--max", "9")
    assert code == 1
    assert "prime" in err


def test_negative_bound_exits_1(capsys):
    code, _, err = run_cli(capsys, "bu", "--max", "-3")
    assert code == 1


# --- formats ----------------------------------------------------------------------

def test_output_deterministic(capsys):
    first = run_cli(capsys, "bo-smash", "--max", "20", "--format", "json")
    second = run_cli(capsys, "bo-smash", "--max", "20", "--format", "json")
    assert first == second
    third = run_cli(capsys, "smash-bu", "--p", "3", "--max", "12", "--format", "csv")
    fourth = run_cli(capsys, "smash-bu", "--p", "3", "--max", "12", "--format", "csv")
    assert third == fourth


@pytest.mark.skipif(jsonschema is None, reason="jsonschema not installed")
@pytest.mark.parametrize(
    "argv",
    [
        ("lu", "--p", "3", "--max", "12"),
        ("bu", "--p", "2", "--max", "12"),
        ("smash-bu", "--p", "2", "--max", "10"),
        ("tor", "--p", "3", "--max", "16"),
        ("hom-dim", "--max", "12"),
        ("x-count", "--n", "7"),
        ("bo-tables", "--max", "10"),
        ("bo-smash", "--max", "10"),
        ("audit", "--space", "smash", "--max", "16"),
        ("verify-all",),
    ],
)
def test_json_validates_against_schema(capsys, argv):
    code, out, _ = run_cli(capsys, *argv, "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, load_schema())
    assert doc["command"] == argv[0]


def test_group_renderings_roundtrip(capsys):
    for argv in (
        ("bu", "--p", "3", "--max", "14"),
        ("bo-smash", "--max", "18"),
        ("bo-tables", "--max", "12"),
    ):
        _, out, _ = run_cli(capsys, *argv, "--format", "json")
        for rec in json.loads(out)["records"]:
            g = parse_group(rec["group"])
            assert g.to_json_dict() == rec["canonical"]


def test_tor_table_values(capsys):
    code, out, _ = run_cli(capsys, "tor", "--p", "2", "--max", "8", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "summand,degree,group,rank,invariants"
    assert "1,2,Z/2,0,2" in lines
    assert "1,4,Z/4,0,4" in lines
    assert "1,8,Z/16,0,16" in lines


def test_bo_tables_carry_provenance(capsys):
    _, out, _ = run_cli(capsys, "bo-tables", "--max", "8", "--format", "json")
    for rec in json.loads(out)["records"]:
        assert rec["source"]


def test_fixture_override_flag(tmp_path, capsys):
    # a deliberately wrong fixture file is actually used
    override = tmp_path / "tables.txt"
    packaged = resources.files("kconn.data").joinpath("tables.txt").read_text("utf-8")
    override.write_text(
        packaged.replace("bo_rp | 3 | 8 | Z/2^(4n+3)", "bo_rp | 3 | 8 | Z/2^(4n+1)"),
        encoding="utf-8",
    )
    _, out, _ = run_cli(
        capsys, "bo-tables", "--max", "3", "--fixtures", str(override), "--format", "json"
    )
    recs = {(r["theory"], r["degree"]): r["group"] for r in json.loads(out)["records"]}
    assert recs[("bo", 3)] == "Z/2"  # 4n+1 at n=0 instead of 4n+3
