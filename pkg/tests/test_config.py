import pytest

from spacetime_games.config import Config


def test_defaults(monkeypatch):
    for name in (
        "SPACETIME_LIGHT_SPEED",
        "SPACETIME_MAX_TENSOR_CELLS",
        "SPACETIME_LINEARIZATION_CAP",
        "SPACETIME_INTERPRET_BUDGET",
        "SPACETIME_ALLOW_SPACELIKE_AGENT",
        "SPACETIME_LOG_LEVEL",
    ):
        monkeypatch.delenv(name, raising=False)
    cfg = Config()
    assert cfg.light_speed == 1.0
    assert cfg.max_tensor_cells == 10_000_000
    assert cfg.linearization_cap == 50
    assert cfg.interpret_budget == 1000
    assert cfg.allow_spacelike_agent is False
    assert cfg.log_level == "WARNING"
    assert cfg.validate()


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("SPACETIME_LIGHT_SPEED", "3e8")
    monkeypatch.setenv("SPACETIME_LINEARIZATION_CAP", "7")
    monkeypatch.setenv("SPACETIME_ALLOW_SPACELIKE_AGENT", "yes")
    monkeypatch.setenv("SPACETIME_LOG_LEVEL", "debug")
    cfg = Config()
    assert cfg.light_speed == 3e8
    assert cfg.linearization_cap == 7
    assert cfg.allow_spacelike_agent is True
    assert cfg.log_level == "DEBUG"


@pytest.mark.parametrize(
    "name, value",
    [
        ("SPACETIME_LIGHT_SPEED", "0"),
        ("SPACETIME_MAX_TENSOR_CELLS", "0"),
        ("SPACETIME_LINEARIZATION_CAP", "-1"),
        ("SPACETIME_INTERPRET_BUDGET", "0"),
        ("SPACETIME_LOG_LEVEL", "LOUD"),
    ],
)
def test_validate_rejects(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ValueError, match=name):
        Config().validate()
