import pytest
from pydantic import ValidationError

from etf_forge.api.deps import get_settings
from etf_forge.core.config import Settings


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("ETF_FORGE_BUDGET", "123")
    monkeypatch.setenv("ETF_FORGE_JOBS", "4")
    configured = Settings()
    assert configured.budget == 123
    assert configured.jobs == 4


def test_unprefixed_and_unknown_variables_are_ignored(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    (tmp_path / ".env").write_text("ETF_FORGE_SEED=7\nETF_FORGE_COLOUR=blue\n")
    monkeypatch.setenv("BUDGET", "1")
    configured = Settings()
    assert configured.seed == 7
    assert configured.budget == 50_000_000


def test_malformed_value_is_rejected(monkeypatch):
    monkeypatch.setenv("ETF_FORGE_BUDGET", "lots")
    with pytest.raises(ValidationError):
        Settings()


def test_budget_query_parameter_copies_the_settings():
    assert get_settings(None).budget == Settings().budget
    override = get_settings(10)
    assert override.budget == 10
    assert get_settings(None).budget != 10
