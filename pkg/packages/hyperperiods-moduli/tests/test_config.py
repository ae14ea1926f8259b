from fractions import Fraction

import pytest

from hyperperiods.moduli.config import Settings


def test_defaults(monkeypatch):
    for name in (
        "HYPERPERIODS_VERTEX_BUDGET_FACTOR",
        "HYPERPERIODS_WORD_CAP",
        "HYPERPERIODS_TRUNCATION",
        "HYPERPERIODS_THREADS",
        "HYPERPERIODS_SEED",
    ):
        monkeypatch.delenv(name, raising=False)
    assert Settings.from_env() == Settings()
    assert Settings().vertex_budget(2) == 36


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("HYPERPERIODS_TRUNCATION", "5/2")
    monkeypatch.setenv("HYPERPERIODS_THREADS", "4")
    monkeypatch.setenv("HYPERPERIODS_SEED", "")
    s = Settings.from_env()
    assert s.truncation == Fraction(5, 2)
    assert s.threads == 4
    assert s.seed == 0


@pytest.mark.parametrize(
    "name, value",
    [
        ("HYPERPERIODS_THREADS", "0"),
        ("HYPERPERIODS_WORD_CAP", "many"),
        ("HYPERPERIODS_TRUNCATION", "-1"),
        ("HYPERPERIODS_TRUNCATION", "1/0"),
    ],
)
def test_bad_environment(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ValueError, match=name):
        Settings.from_env()


def test_overrides_skip_none():
    s = Settings().with_overrides(threads=None, word_length_cap=3)
    assert s.threads == 1
    assert s.word_length_cap == 3
