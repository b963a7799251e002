"""End-to-end command line tests via the real entry point."""

import pytest

from garside.cli import EXIT_BUDGET, EXIT_ERROR, EXIT_OK, main, parse_element
from garside.errors import StructureError


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_element_grammar(b3):
    t = b3.table
    assert parse_element(t, "1").is_identity
    assert parse_element(t, "D^-1").delta_power == -1
    assert parse_element(t, "b.a^-1") == parse_element(t, "b.a^-1")
    assert parse_element(t, "a^3") == parse_element(t, "a.a.a")
    assert parse_element(t, "ab") .body == (b3.ab,)
    with pytest.raises(StructureError):
        parse_element(t, "q")
    with pytest.raises(StructureError):
        parse_element(t, "a^x")
    with pytest.raises(StructureError):
        parse_element(t, "")


def test_growth_output(capsys):
    code, out, _ = run(
        capsys, "--structure", "braid:3", "--parabolic", "a", "growth", "--max-n", "1"
    )
    assert code == EXIT_OK
    assert out == "0,1\n1,4\n"


def test_growth_csv_file(capsys, tmp_path):
    target = tmp_path / "e.csv"
    code, out, _ = run(
        capsys,
        "--structure", "braid:3", "--parabolic", "a",
        "growth", "--max-n", "3", "--csv", str(target),
    )
    assert code == EXIT_OK
    assert target.read_text() == "0,1\n1,4\n2,10\n3,24\n"


def test_growth_output_is_byte_stable(capsys):
    outs = set()
    for _ in range(2):
        _, out, _ = run(
            capsys,
            "--structure", "braid:3", "--parabolic", "a", "growth", "--max-n", "6",
        )
        outs.add(out)
    assert len(outs) == 1


def test_nf_output(capsys):
    code, out, _ = run(capsys, "--structure", "braid:3", "nf", "D^-1")
    assert code == EXIT_OK
    assert "element: D^-1" in out
    assert "length: 1" in out
    code, out, _ = run(capsys, "--structure", "braid:3", "nf", "b.a^-1")
    assert "element: D^-1.a.ab" in out
    assert "left-orthogonal: b=ba a=ab" in out


def test_coset_commands(capsys):
    code, out, _ = run(
        capsys, "--structure", "braid:3", "--parabolic", "a", "coset-length", "b.a.b"
    )
    assert code == EXIT_OK
    assert out.strip() == "1"
    code, out, _ = run(
        capsys, "--structure", "braid:3", "--parabolic", "a", "coset-rep", "D"
    )
    assert out.strip() == "ba"


def test_series_output(capsys):
    code, out, _ = run(capsys, "--structure", "abelian:2", "--parabolic", "x", "series")
    assert code == EXIT_OK
    assert "numerator = 1 + 1*t" in out
    assert "denominator = 1 - 1*t" in out


def test_series_byte_stable(capsys):
    outs = {
        run(capsys, "--structure", "braid:3", "--parabolic", "a", "series")[1]
        for _ in range(2)
    }
    assert len(outs) == 1


def test_project_command(capsys):
    code, out, _ = run(
        capsys, "--structure", "braid:3", "--parabolic", "a", "project", "ba"
    )
    assert code == EXIT_OK
    assert "distance: 1" in out
    assert "members: D^-1.ab 1" in out
    assert "diameter: 1" in out


def test_automaton_files(capsys, tmp_path):
    dot = tmp_path / "a.dot"
    table = tmp_path / "a.txt"
    code, out, _ = run(
        capsys,
        "--structure", "braid:3", "--parabolic", "a",
        "automaton", "--dot", str(dot), "--table", str(table),
    )
    assert code == EXIT_OK
    assert dot.read_text().startswith("digraph")
    assert "x0 b -> b" in table.read_text()


def test_validate_commands(capsys):
    code, out, _ = run(capsys, "--structure", "dihedral:4", "--parabolic", "s", "validate")
    assert code == EXIT_OK
    assert "table ok" in out and "parabolic ok" in out
    code, _, err = run(capsys, "--structure", "braid:3", "--parabolic", "ab", "validate")
    assert code == EXIT_ERROR
    assert "balanced" in err


def test_unknown_structure_exit_code(capsys):
    code, _, err = run(capsys, "--structure", "braid:99", "validate")
    assert code == EXIT_ERROR


def test_missing_parabolic_exit_code(capsys):
    code, _, err = run(capsys, "--structure", "braid:3", "coset-length", "b")
    assert code == EXIT_ERROR
    assert "--parabolic" in err


def test_audit_command(capsys, tmp_path):
    csv = tmp_path / "rows.csv"
    code, out, _ = run(
        capsys,
        "--structure", "braid:3", "--parabolic", "a",
        "audit-fellow", "--max-len", "1", "--csv", str(csv),
    )
    assert code == EXIT_OK
    assert "K_obs" in out and "PASS" in out
    lines = csv.read_text().splitlines()
    assert lines[0] == "alpha,u,beta,best_beta_prime,distance"
    assert len(lines) > 1


def test_audit_budget_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("GARSIDE_BUDGET", "40")
    code, out, _ = run(
        capsys,
        "--structure", "braid:3", "--parabolic", "a",
        "audit-fellow", "--max-len", "2",
    )
    assert code == EXIT_BUDGET


def test_unbounded_witness_command(capsys):
    code, out, _ = run(
        capsys,
        "--structure", "braid:3", "--parabolic", "a",
        "unbounded-witness", "--k", "2",
    )
    assert code == EXIT_OK
    assert "verified: yes" in out
    code, _, err = run(
        capsys,
        "--structure", "braid:3", "--parabolic", "D",
        "unbounded-witness", "--k", "2",
    )
    assert code == EXIT_ERROR


def test_verify_quick(capsys):
    code, out, _ = run(capsys, "verify", "--level", "quick")
    assert code == EXIT_OK
    assert "FAIL" not in out
    assert out.count("PASS") >= 8


def test_structure_file_flag(capsys, tmp_path, b3):
    from garside.structures import save_table

    path = tmp_path / "custom.garside"
    path.write_text(save_table(b3.table))
    code, out, _ = run(capsys, "--structure", f"file:{path}", "validate")
    assert code == EXIT_OK
