"""Tests for wps/config.py"""

import json

import pytest

from wps.config import BUDGET_ENV, Budget, Config, SearchSettings, init_config, load_config


def test_default_config():
    c = Config()
    assert c.version == "1.0"
    assert c.budget.max_spairs == 100_000
    assert c.budget.max_terms == 4_000_000
    assert c.budget.max_bytes == 64 * 1024 * 1024
    assert c.budget.term_limit == 4_000_000
    assert c.search.qp_window == 2
    assert c.search.probe_samples == 8
    assert c.search.threefold_ceiling == 2


def test_config_roundtrip():
    c = Config(budget=Budget(max_spairs=50), search=SearchSettings(probe_samples=3))
    c2 = Config.from_dict(c.to_dict())
    assert c2.budget.max_spairs == 50
    assert c2.search.probe_samples == 3
    assert c2.search.series_window == c.search.series_window


def test_from_dict_missing_sections():
    c = Config.from_dict({"budget": {"max_terms": 10}})
    assert c.budget.max_terms == 10
    assert c.budget.max_spairs == 100_000
    assert c.search == SearchSettings()


def test_term_limit_takes_the_smaller_cap():
    assert Budget(max_bytes=1600).term_limit == 100
    assert Budget(max_terms=10).term_limit == 10
    assert Config.from_dict({"budget": {"max_bytes": 32}}).budget.term_limit == 2


def test_config_save_load(tmp_path):
    path = tmp_path / "wps.json"
    Config(budget=Budget(max_spairs=77)).save(path)

    data = json.loads(path.read_text())
    assert data["version"] == "1.0"
    assert data["budget"]["max_spairs"] == 77
    assert Config.load(path).budget.max_spairs == 77


def test_load_missing_file_gives_defaults(tmp_path):
    assert Config.load(tmp_path / "absent.json") == Config()


def test_init_config(tmp_path):
    c = init_config(str(tmp_path))
    assert (tmp_path / "wps.json").exists()
    assert c == Config()

    (tmp_path / "wps.json").write_text(json.dumps({"search": {"qp_window": 5}}))
    assert init_config(str(tmp_path)).search.qp_window == 5


class TestBudgetOverride:
    def test_env_overrides_spairs(self, tmp_path, monkeypatch):
        monkeypatch.setenv(BUDGET_ENV, "123")
        assert load_config(tmp_path / "none.json").budget.max_spairs == 123

    def test_env_must_be_integer(self, tmp_path, monkeypatch):
        monkeypatch.setenv(BUDGET_ENV, "lots")
        with pytest.raises(ValueError):
            load_config(tmp_path / "none.json")

    def test_no_env(self, tmp_path, monkeypatch):
        monkeypatch.delenv(BUDGET_ENV, raising=False)
        assert load_config(tmp_path / "none.json").budget.max_spairs == 100_000
