import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from rstirling import __version__
from rstirling.cli import main

GOLDEN = Path(__file__).parent / "golden"
DATA = Path(__file__).parent / "data"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def load_table():
    rows = []
    for line in (DATA / "example_4_3_2.txt").read_text().splitlines():
        if line.startswith("#") or not line.strip():
            continue
        sigma, code, mono = [x.strip() for x in line.split(";")]
        rows.append((sigma, tuple(int(c) for c in code.split(",")), mono.replace("_", "").replace(" ", "*")))
    return rows


# -- enumerate ---------------------------------------------------------------------


def test_enumerate_csv_golden_bytes():
    code, text = run("enumerate", "--n", "4", "--k", "3", "--r", "2", "--format", "csv")
    assert code == 0
    assert text == (GOLDEN / "enumerate_4_3_2.csv").read_text()


def test_enumerate_csv_matches_table():
    _, text = run("enumerate", "--n", "4", "--k", "3", "--r", "2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 30
    got = {(r["sigma"], tuple(int(c) for c in r["code"].strip("()").split(",")), r["monomial"]) for r in rows}
    assert got == set(load_table())
    codes = [tuple(int(c) for c in r["code"].strip("()").split(",")) for r in rows]
    assert codes == sorted(codes)
    for r in rows:
        assert int(r["inv"]) + int(r["coinv"]) == 5


def test_enumerate_permutations_text():
    code, text = run("enumerate", "--n", "3", "--k", "3", "--r", "3")
    assert code == 0
    assert len(text.splitlines()) == 6


def test_enumerate_json_records():
    code, text = run("enumerate", "--n", "5", "--k", "3", "--r", "0", "--format", "json")
    doc = json.loads(text)
    assert code == 0
    assert doc["schema_version"] == 1 and doc["version"] == __version__
    assert doc["config"]["parameters"] == {"n": 5, "k": 3, "r": 0}
    assert doc["count"] == 150 and len(doc["rows"]) == 150
    assert set(doc["rows"][0]) == {"sigma", "code", "inv", "coinv", "monomial"}


def test_enumerate_invalid_parameters(capsys):
    code, _ = run("enumerate", "--n", "3", "--k", "4")
    assert code == 2
    assert "r <= k <= n" in capsys.readouterr().err


def test_enumerate_missing_parameters(capsys):
    assert run("enumerate", "--n", "3")[0] == 2


# -- verify ----------------------------------------------------------------------------


def test_verify_hilbert_text():
    code, text = run("verify", "--suite", "hilbert", "--n", "4", "--k", "3", "--r", "2")
    assert code == 0
    assert "1 + 4q + 8q^2 + 9q^3 + 6q^4 + 2q^5" in text
    assert "pass" in text


def test_verify_standard_basis_range():
    code, text = run("verify", "--suite", "standard-basis", "--max-n", "5")
    assert code == 0
    assert text.splitlines()[-1].startswith("summary: 50/50 passed")


def test_verify_all_smallest_case():
    code, text = run("verify", "--suite", "all", "--n", "2", "--k", "2", "--r", "2")
    assert code == 0
    assert "conjecture-probe" in text and "info-" in text


def test_verify_json_deterministic():
    argv = ["verify", "--suite", "all", "--n", "3", "--format", "json"]
    first = run(*argv)[1]
    second = run(*argv)[1]
    assert first == second
    doc = json.loads(first)
    assert doc["schema_version"] == 1 and doc["verdict"] == "pass"
    assert "wall_seconds" not in doc
    assert all("seconds" not in r for r in doc["reports"])


def test_verify_jobs_do_not_change_output():
    argv = ["verify", "--suite", "hilbert", "--suite", "demazure", "--max-n", "4", "--format", "json"]
    assert run(*argv)[1] == run(*argv, "--jobs", "2")[1]


def test_verify_timings_flag():
    code, text = run("verify", "--suite", "hilbert", "--n", "3", "--format", "json", "--timings")
    doc = json.loads(text)
    assert "wall_seconds" in doc and "seconds" in doc["reports"][0]


def test_verify_csv():
    code, text = run("verify", "--suite", "cardinality", "--n", "3", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0 and len(rows) == 9
    assert rows[0]["check"] == "cardinality" and rows[0]["verdict"] == "pass"


def test_verify_budget_exit_code(capsys):
    code, _ = run("verify", "--suite", "standard-basis", "--max-n", "7")
    assert code == 3
    assert "budget" in capsys.readouterr().err


def test_verify_budget_override_needs_acknowledgement(capsys):
    code, _ = run("verify", "--suite", "hilbert", "--n", "3", "--budget", "9")
    assert code == 2
    code, _ = run("verify", "--suite", "hilbert", "--n", "3", "--budget", "9", "--allow-large")
    assert code == 0
    assert "warning" in capsys.readouterr().err


def test_verify_budget_from_environment(monkeypatch):
    monkeypatch.setenv("RSTIRLING_GROEBNER_BUDGET", "2")
    assert run("verify", "--suite", "hilbert", "--n", "3")[0] == 3


def test_verify_unknown_suite():
    assert run("verify", "--suite", "nonsense", "--n", "3")[0] == 2


def test_verify_failure_exit_code(monkeypatch):
    from rstirling import suites
    from rstirling.rings import Report

    broken = suites.Suite("hilbert", lambda p, **_: Report("hilbert", p, False), "groebner")
    monkeypatch.setitem(suites.SUITES, "hilbert", broken)
    code, text = run("verify", "--suite", "hilbert", "--n", "2")
    assert code == 1 and "fail" in text


def test_verify_sampled_chevalley_is_seeded():
    argv = ["verify", "--suite", "chevalley", "--n", "5", "--k", "3", "--r", "2", "--sample", "3", "--format", "json"]
    a = run(*argv, "--seed", "7")[1]
    b = run(*argv, "--seed", "7")[1]
    assert a == b
    assert json.loads(a)["reports"][0]["details"] == {"group_elements": 3, "sampled": True}


# -- poly, groebner, code, iota, pattern ----------------------------------------------------


def test_poly_schubert():
    assert run("poly", "schubert", "--perm", "321") == (0, "x1^2*x2\n")


def test_poly_word_schubert_is_e5():
    code, text = run("poly", "word-schubert", "--word", "1245555", "--n", "7", "--k", "5")
    expected = run("poly", "elementary", "--d", "5", "--m", "7")[1]
    assert code == 0 and text == expected
    assert text.count("+") == 20  # C(7,5) = 21 terms


def test_poly_demazure_constant():
    assert run("poly", "demazure", "--gamma", "0,0,0,0") == (0, "1\n")


def test_poly_homogeneous_json():
    code, text = run("poly", "homogeneous", "--d", "2", "--m", "2", "--format", "json")
    assert json.loads(text)["polynomial"] == "x2^2 + x1*x2 + x1^2"


def test_poly_usage_errors():
    assert run("poly", "schubert", "--perm", "122")[0] == 2
    assert run("poly", "schubert", "--perm", "1x2")[0] == 2
    assert run("poly", "schubert")[0] == 2
    assert run("poly", "word-schubert", "--word", "12", "--n", "3")[0] == 2
    assert run("poly", "bogus")[0] == 2


def test_groebner_command():
    code, text = run("groebner", "--n", "3", "--k", "2", "--r", "1")
    assert code == 0
    assert text.splitlines()[-1] == "hilbert: 1 + 3q + 2q^2"
    doc = json.loads(run("groebner", "--n", "3", "--k", "2", "--r", "1", "--format", "json")[1])
    assert doc["dimension"] == 6


def test_code_and_iota_commands():
    assert run("code", "--sigma", "25|1|34") == (0, "(1,1,0,2,0)\n")
    code, text = run("iota", "--n", "9", "--k", "4", "--r", "3", "--code", "2,0,1,1,1,0,2,1,3")
    assert (code, text) == (0, "345|18|67|29\n")
    code, text = run("iota", "--n", "4", "--k", "3", "--r", "2", "--code", "3000")
    assert code == 1 and "condition 2" in text
    assert run("code", "--sigma", "12|3", "--r", "2")[0] == 2


def test_pattern_command():
    code, text = run("pattern", "--word", "242141", "--k", "4")
    assert code == 0
    assert text == "0 0 0 1 0 1\n1 * 1 0 * *\n0 0 0 0 0 0\n0 1 0 0 1 *\n"
    doc = json.loads(run("pattern", "--word", "242141", "--format", "json")[1])
    assert doc["initial_indices"] == [1, 2, 4] and doc["stars"] == 4


def test_json_round_trip_all_commands():
    for argv in [
        ["enumerate", "--n", "2", "--k", "1"],
        ["poly", "schubert", "--perm", "21"],
        ["groebner", "--n", "2", "--k", "2"],
        ["code", "--sigma", "1|2"],
        ["iota", "--n", "2", "--k", "2", "--code", "10"],
        ["pattern", "--word", "121"],
        ["verify", "--suite", "bijection", "--n", "2"],
    ]:
        doc = json.loads(run(*argv, "--format", "json")[1])
        assert doc["schema_version"] == 1 and doc["command"] == argv[0]
        assert json.loads(json.dumps(doc)) == doc


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "rstirling", "code", "--sigma", "25|1|34"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "(1,1,0,2,0)\n"


def test_schubert_cache_flag():
    assert run("--schubert-cache", "10", "poly", "schubert", "--perm", "4321")[0] == 0
    assert run("--schubert-cache", "0", "poly", "schubert", "--perm", "21")[0] == 2
    from rstirling import polyalg

    polyalg.set_schubert_cache_size(polyalg.DEFAULT_SCHUBERT_CACHE)


@pytest.mark.parametrize("flag", ["--version", "--help"])
def test_informational_flags(flag, capsys):
    assert run(flag)[0] == 0
