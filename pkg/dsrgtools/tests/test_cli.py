import json

import pytest

from dsrgtools.cli import EXIT_OK, EXIT_PARAMS, EXIT_USAGE, EXIT_VERIFY, main
from dsrgtools.utils import load_param


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, out, err

    return _run


@pytest.fixture
def square_file(tmp_path):
    path = tmp_path.joinpath("square.edges")
    path.write_text("# n=4\n0 1\n1 2\n2 3\n3 0\n")
    return path


def test_construct_and_verify(run, tmp_path):
    path = tmp_path.joinpath("smallest.json")
    code, out, _ = run("construct", "semidirect", "--p", 3, "--n", 2, "--H", 1, "--out", path)
    assert code == EXIT_OK
    assert out.strip() == "VERIFIED (6,2,1,0,1)"
    assert json.loads(path.read_text())["tuple"] == [6, 2, 1, 0, 1]

    code, out, _ = run("verify", path)
    assert code == EXIT_OK
    assert out.strip() == "(6,2,1,0,1) DSRG"


def test_construct_to_stdout(run):
    code, out, err = run("construct", "dihedral", "--n", 4, "--complement", "--format", "edges")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "# n=8"
    assert len(out.splitlines()) == 1 + 8 * 4
    assert "VERIFIED (8,4,3,1,3)" in err


def test_construct_with_operations(run):
    code, _, err = run("construct", "semidirect", "--p", 3, "--n", 2, "--H", 1, "--expand-mu", 2)
    assert code == EXIT_OK
    assert "VERIFIED (12,4,2,0,2)" in err
    code, _, err = run("construct", "half-dihedral", "--n", 3, "--product")
    assert code == EXIT_OK
    assert "VERIFIED (36,16,8,6,8)" in err


def test_verify_reports_failure(run, square_file):
    code, out, _ = run("verify", square_file)
    assert code == EXIT_OK, "a graph that is not a DSRG is a result, not an error"
    assert out.startswith("NotDSRG")


def test_spectral(run):
    code, out, _ = run("spectral", "--n", 3, "--m", 2, "--k", 2, "--H", 1)
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "S = [2, -1, -1]"
    assert lines[1] == "spectrum: 2^1, 0^3, -1^2"
    assert "uniform: YES value=-1 count=2 -> (6,2,1,0,1)" in lines
    assert any(line.startswith("split: YES") for line in lines)


def test_spectral_starred(run):
    code, out, _ = run("spectral", "--n", 3, "--m", 2, "--k", 2, "--H", 1, "--starred")
    assert code == EXIT_OK
    assert "starred: YES" in out
    assert "(6,3,2,1,2)" in out


def test_quotient(run, tmp_path):
    path = tmp_path.joinpath("quotient.edges")
    code, out, _ = run("quotient", "semidirect", "--p", 5, "--n", 4, "--H", 1, 4, "--out", path)
    assert code == EXIT_OK
    assert "|G_S| = 2, |G_S^-1| = 4" in out
    assert "out-quotient VERIFIED (10,4,2,1,2)" in out
    assert path.read_text().startswith("# n=10")

    code, out, _ = run("quotient", "semidirect", "--p", 5, "--n", 4, "--H", 1, 4, "--direction", "in")
    assert code == EXIT_OK
    assert "in-cosets do not collapse" in out


def test_quotient_of_file(run, tmp_path, square_file):
    path = tmp_path.joinpath("smallest.edges")
    assert run("construct", "semidirect", "--p", 3, "--n", 2, "--H", 1, "--out", path)[0] == EXIT_OK
    code, out, _ = run("quotient", "--file", path)
    assert code == EXIT_OK
    assert "out-classes: 3 of sizes [2]" in out
    assert run("quotient", "--file", square_file)[0] == EXIT_PARAMS
    assert run("quotient")[0] == EXIT_USAGE


def test_catalog(run, tmp_path):
    catalog = tmp_path.joinpath("catalog.jsonl")
    code, out, _ = run("catalog", "add", "dihedral", "--n", 4, "--catalog", catalog)
    assert code == EXIT_OK and out.strip() == "added dihedral (8,3,1,1,2)"
    assert run("catalog", "add", "semidirect", "--p", 3, "--n", 2, "--H", 1, "--no-arcs", "--catalog", catalog)[0] == 0

    code, out, _ = run("catalog", "list", "--catalog", catalog)
    assert code == EXIT_OK
    assert "(8,3,1,1,2)" in out and "(6,2,1,0,1)" in out
    assert run("catalog", "check", "--catalog", catalog)[0] == EXIT_OK

    entry = json.loads(catalog.read_text().splitlines()[0])
    entry["tuple"] = [8, 3, 1, 2, 2]
    catalog.write_text(json.dumps(entry) + "\n")
    assert run("catalog", "check", "--catalog", catalog)[0] == EXIT_VERIFY

    entry["tuple"] = ["a", 2]
    catalog.write_text(json.dumps(entry) + "\n")
    assert run("catalog", "check", "--catalog", catalog)[0] == EXIT_VERIFY, "a corrupted line is a failed check"


def test_catalog_add_needs_family(run, tmp_path):
    assert run("catalog", "add", "--catalog", tmp_path.joinpath("c.jsonl"))[0] == EXIT_USAGE


def test_feasible(run, tmp_path):
    csv = tmp_path.joinpath("feasible.csv")
    code, out, _ = run("feasible", 8, "--csv", csv)
    assert code == EXIT_OK
    assert "DSRG" in out
    rows = csv.read_text().splitlines()
    assert rows[0] == "n,k,mu,lam,t,flag"
    assert "6,2,1,0,1,DSRG" in rows


def test_bad_parameters(run):
    assert run("construct", "dihedral", "--n", 5)[0] == EXIT_PARAMS
    assert run("construct", "semidirect", "--p", 4, "--n", 2, "--H", 1)[0] == EXIT_PARAMS
    assert run("construct", "dihedral", "--n", 4, "--expand-mu", 2)[0] == EXIT_PARAMS


def test_file_errors(run, tmp_path):
    bad = tmp_path.joinpath("bad.txt")
    bad.write_text("0 1\n1\n")
    assert run("verify", bad)[0] == EXIT_USAGE
    assert run("verify", tmp_path.joinpath("missing.edges"))[0] == EXIT_USAGE


def test_verify_rejects_bad_orders(run, tmp_path):
    huge = tmp_path.joinpath("huge.edges")
    huge.write_text("# n=3000000\n0 1\n")
    code, _, err = run("verify", huge)
    assert code == EXIT_USAGE, "an oversized header must be refused before allocation"
    assert "limit is 2000" in err

    empty = tmp_path.joinpath("empty.edges")
    empty.write_text("# n=0\n")
    assert run("verify", empty)[0] == EXIT_USAGE
    zero = tmp_path.joinpath("zero.json")
    zero.write_text('{"n": 0, "arcs": []}')
    assert run("verify", zero)[0] == EXIT_USAGE


def test_config(run, tmp_path):
    code, out, _ = run("config", tmp_path)
    assert code == EXIT_OK
    assert out.strip() == str(tmp_path.joinpath("Parameters.yml"))
    assert load_param(tmp_path).max_order == 2000

    small = tmp_path.joinpath("small.yml")
    small.write_text("max_order: 10\n")
    code, _, err = run("--config", small, "construct", "semidirect", "--p", 5, "--n", 4, "--H", 1, 4)
    assert code == EXIT_USAGE
    assert "max_order=10" in err

    unknown = tmp_path.joinpath("unknown.yml")
    unknown.write_text("colour: red\n")
    assert run("--config", unknown, "feasible", 6)[0] == EXIT_USAGE
