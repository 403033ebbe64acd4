import json

import pytest

from hrdet.cli import EXIT_DATA, EXIT_FALSIFIED, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE, main
from hrdet.complex import fixture


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fixtures_lists_names(capsys):
    code, out, _ = run(capsys, "fixtures")
    assert code == EXIT_OK
    assert "sigma:3" in out and "rp2_suspension" in out


def test_analyze_reports_face_numbers(capsys):
    code, out, _ = run(capsys, "analyze", "--fixture", "sigma:2", "--json")
    data = json.loads(out)
    assert code == EXIT_OK and data["f_vector"] == [1, 4, 4] and data["h_vector"] == [1, 2, 1]


def test_degree_of_a_monomial(capsys):
    code, out, _ = run(capsys, "degree", "--fixture", "s0", "--monomial", "x1", "--json")
    assert code == EXIT_OK and json.loads(out)["value"] == "(-1)/(a_1_1)"


def test_gram_is_two_by_two_on_sigma3(capsys):
    code, out, _ = run(capsys, "gram", "--fixture", "sigma:3", "--q", "1", "--json")
    data = json.loads(out)
    assert code == EXIT_OK and len(data["matrix"]) == 2 and len(data["basis"]) == 2


def test_hilbert_with_punctured_system(capsys):
    code, out, _ = run(capsys, "hilbert", "--fixture", "sigma:2", "--lsop", "punctured:1,2", "--json")
    data = json.loads(out)
    assert code == EXIT_OK and data["Hbar"] == [1, 2, 1]


def test_hilbert_over_a_binary_field(capsys):
    code, out, _ = run(capsys, "hilbert", "--fixture", "rp2", "--char", "2^10", "--seed", "1", "--json")
    assert code == EXIT_OK and json.loads(out)["Hbar"] == [1, 3, 3, 1]


def test_fixture_from_json_file(capsys, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(fixture("cycle:5").to_json())
    code, out, _ = run(capsys, "analyze", "--fixture", str(path), "--json")
    assert code == EXIT_OK and json.loads(out)["h_vector"] == [1, 3, 1]


def test_corrupted_orientation_exits_falsified_with_witness(capsys):
    code, out, _ = run(capsys, "verify", "--fixture", "sigma:2", "--corrupt-orientation")
    assert code == EXIT_FALSIFIED
    assert "witness" in out and "subset" in out


def test_term_ceiling_exits_inconclusive(capsys):
    code, _, _ = run(capsys, "verify", "--fixture", "sigma:3", "--q", "1", "--max-terms", "200")
    assert code == EXIT_INCONCLUSIVE


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--bogus"])
    assert exc.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["gram", "--fixture", "sigma:2"])
    assert exc.value.code == EXIT_USAGE
    assert run(capsys, "verify", "--suite", "nope")[0] == EXIT_USAGE


def test_data_errors(capsys):
    assert run(capsys, "analyze", "--fixture", "klein")[0] == EXIT_DATA
    assert run(capsys, "verify", "--check", "middledegree", "--fixture", "octahedron")[0] == EXIT_DATA
    assert run(capsys, "degree", "--fixture", "s0", "--monomial", "x7")[0] == EXIT_DATA


def test_exit_codes_are_distinct():
    assert len({EXIT_OK, EXIT_FALSIFIED, EXIT_INCONCLUSIVE, EXIT_USAGE, EXIT_DATA}) == 5


def test_verify_report_writes_files(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--fixture", "sigma:2", "--json", "--report", str(tmp_path))
    assert code == EXIT_OK
    assert json.loads(out)["status"] == "verified"
    names = {p.name for p in tmp_path.iterdir()}
    assert {"verify.json", "verify.csv", "runtimes.png"} <= names
    assert (tmp_path / "runtimes.png").read_bytes()[:4] == b"\x89PNG"


def test_gram_and_hilbert_reports(capsys, tmp_path):
    assert run(capsys, "gram", "--fixture", "sigma:2", "--q", "1", "--ord-profile", "--report", str(tmp_path))[0] == 0
    assert run(capsys, "hilbert", "--fixture", "sigma:2", "--report", str(tmp_path))[0] == 0
    pngs = [p for p in tmp_path.iterdir() if p.suffix == ".png"]
    assert len(pngs) >= 2


def test_verify_json_is_deterministic(capsys):
    argv = ("verify", "--fixture", "octahedron", "--json")
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second
