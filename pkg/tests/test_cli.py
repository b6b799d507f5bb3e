"""Tests for wps/cli.py"""

import json
from pathlib import Path

import pytest

from wps.cli import EXIT_BUDGET, EXIT_INVARIANT, EXIT_OK, EXIT_PARSE, render, run
from wps.config import BUDGET_ENV

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(autouse=True)
def clean_env(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv(BUDGET_ENV, raising=False)


def run_json(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    assert code == EXIT_OK
    return json.loads(out)


def error_of(capsys):
    return json.loads(capsys.readouterr().err)


class TestInvariants:
    def test_degree_preset(self, capsys):
        assert run_json(capsys, "degree", "--ideal", "example211") == {"degree": "11/30"}

    def test_degree_from_file(self, capsys):
        path = str(FIXTURES / "example211.json")
        assert run_json(capsys, "degree", "--ideal", path)["degree"] == "11/30"

    def test_degree_inline(self, capsys):
        doc = json.dumps({"weights": [1, 1, 1], "generators": ["x0_1*x0_3 - x0_2^2"]})
        assert run_json(capsys, "degree", "--ideal", doc)["degree"] == "2"

    def test_hilbert_keep(self, capsys):
        data = run_json(capsys, "hilbert", "--ideal", "example211", "--keep", "5,3")
        assert data["hilbert_series"]
        assert data["reduced"]["P(1)"] == "11/2"
        assert data["reduced"]["degree"] == "11/30"

    def test_qp_and_cone(self, capsys):
        data = run_json(capsys, "qp", "--ideal", "hyperplane122", "--cone", "1")
        assert data["dim"] == 1
        assert data["degree"] == "1/2"
        assert data["cone_degree"] == "1/4"


class TestScrolls:
    def test_bound(self, capsys):
        assert run_json(capsys, "bound", "--weights", "1,1,2,2", "--dim", "1")["bound"] == "2"

    def test_minimal_profile(self, capsys):
        data = run_json(capsys, "minimal-profile", "--weights", "1^2,3^2,6^3", "--dim", "4")
        assert data["profile"]["r"] == [1, 2, 0]
        assert data["degree_display"] == "5/(3·6³)"

    def test_scrolls_tsv(self, capsys):
        assert run(["scrolls", "--weights", "1^2,3^2,6^3", "--format", "tsv"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].split("\t") == ["dim", "profile", "degree", "display", "kReg", "wReg", "minimal"]
        assert len(lines) == 16
        assert sum(1 for line in lines[1:] if line.endswith("\tyes")) == 4

    def test_scrolls_json_hides_tsv(self, capsys):
        data = run_json(capsys, "scrolls", "--weights", "1^2,3^2,6^3")
        assert "tsv" not in data
        assert len(data["rows"]) == 15

    def test_betti_profile(self, capsys):
        data = run_json(capsys, "betti", "--weights", "1^2,3^2,6^3", "--profile", "1,3,6,6,6")
        assert data["betti"]["totals"] == [1, 10, 20, 15, 4]
        assert data["wNp"]["all_p"] is True
        assert data["table"].splitlines()[1].startswith("total:")

    def test_betti_ideal(self, capsys):
        data = run_json(capsys, "betti", "--ideal", "c1")
        assert data["projective_dimension"] == 2
        assert data["wNp"]["wN0"] is True


class TestKW:
    def test_kw_build(self, capsys):
        data = run_json(capsys, "kw-build", "--spec", "intro_c2")
        assert data["profile"] == "(1,3,3,3)"
        assert data["structural"]["certified"] is True

    def test_kw_build_fixture(self, capsys):
        data = run_json(capsys, "kw-build", "--spec", str(FIXTURES / "example417_blockspec.json"))
        assert len(data["matrix"]["matrix"][0]) == 8

    def test_probe(self, capsys):
        data = run_json(capsys, "check-1generic", "--matrix", "example46", "--samples", "2")
        assert data["probe"]["verdict"] == "certified_no"
        assert data["probe"]["witness"] == ["1", "0", "0"]

    def test_param(self, capsys):
        data = run_json(capsys, "param", "--spec", "intro_c2")
        assert [sec["order"] for sec in data["series"]["sections"]] == [3, 3, 3]
        assert data["verification"]["passed"] is True


class TestThreefold:
    def test_conjecture(self, capsys):
        data = run_json(capsys, "threefold", "--m", "3", "--n", "4")
        assert data["candidate_degree"] == "3/2"
        assert data["gap_closed"] is False

    def test_matrix(self, capsys):
        data = run_json(capsys, "threefold", "--matrix", "final_remark")
        assert data["degree"] == "13/21"

    def test_search(self, capsys):
        data = run_json(capsys, "threefold", "--weights", "1,3,4,7", "--cap", "4/7")
        assert data["numeric_survivors"] == ["(1,3,5;2)", "(2,3,6;1)"]

    def test_missing_arguments(self, capsys):
        assert run(["threefold", "--m", "3"]) == EXIT_PARSE
        assert error_of(capsys)["error"] == "ParseError"


class TestExitCodes:
    def test_missing_file(self, capsys, tmp_path):
        assert run(["degree", "--ideal", str(tmp_path / "absent.json")]) == EXIT_PARSE
        err = error_of(capsys)
        assert err["error"] == "ParseError"
        assert "not found" in err["message"]

    def test_bad_inline_json(self, capsys):
        assert run(["degree", "--ideal", "{not json"]) == EXIT_PARSE

    def test_bad_integers(self, capsys):
        assert run(["betti", "--weights", "1,1,2,2", "--profile", "1,x"]) == EXIT_PARSE

    def test_budget(self, capsys, monkeypatch):
        monkeypatch.setenv(BUDGET_ENV, "0")
        assert run(["degree", "--ideal", "c1"]) == EXIT_BUDGET
        assert error_of(capsys)["error"] == "BudgetExceededError"

    def test_not_divisible(self, capsys):
        assert run(["bound", "--weights", "1,1,2,3", "--dim", "1"]) == EXIT_INVARIANT
        assert error_of(capsys)["error"] == "DomainError"

    def test_config_file(self, capsys, tmp_path):
        path = tmp_path / "tight.json"
        path.write_text(json.dumps({"budget": {"max_spairs": 0}}))
        assert run(["degree", "--ideal", "c1", "--config", str(path)]) == EXIT_BUDGET

    def test_unknown_verb(self):
        with pytest.raises(SystemExit):
            run(["frobnicate"])


def test_reproduce(capsys):
    data = run_json(capsys, "reproduce", "figure1")
    assert data["threshold_rows"] == [11, 16, 18, 20]


def test_render():
    assert render({"a": 1, "tsv": "x\n"}, "tsv") == "x\n"
    assert json.loads(render({"a": 1, "tsv": "x\n"}, "json")) == {"a": 1}
    assert json.loads(render({"a": 1}, "tsv")) == {"a": 1}
