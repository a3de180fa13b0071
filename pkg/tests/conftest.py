# tests/conftest.py
import json

import numpy as np
import pytest

from honeygame.models import GameParameters, IdsParameters, TrialConfig

# Canonical costs and benefits, including the attacker-side defaults.
CANONICAL_GAME = {
    "cost_honeypot": 2.0,
    "cost_attack_soph": 50.0,
    "cost_attack_naive": 30.0,
    "benefit_attacker_soph": 10.0,
    "benefit_attacker_naive": 10.0,
    "cost_detected_soph": 15.0,
    "cost_detected_naive": 5.0,
    "benefit_detect_soph": 10.0,
    "benefit_detect_naive": 8.0,
    "penalty_false_positive": 1.0,
    "prior_soph": 0.4,
}

CANONICAL_IDS = {"tpr_soph": 0.6, "tpr_naive": 0.9, "fpr": 0.05}

CANONICAL_TRIAL = {"attack_rate": 0.1, "p_soph": 0.4, "p_attack_soph": 0.5, "p_attack_naive": 0.9}


@pytest.fixture
def make_game():
    """Factory for GameParameters with the canonical values as defaults."""
    def _make(**overrides) -> GameParameters:
        return GameParameters(**{**CANONICAL_GAME, **overrides})
    return _make


@pytest.fixture
def params(make_game) -> GameParameters:
    return make_game()


@pytest.fixture
def ids_params() -> IdsParameters:
    return IdsParameters(**CANONICAL_IDS)


@pytest.fixture
def make_trial():
    def _make(**overrides) -> TrialConfig:
        return TrialConfig(**{**CANONICAL_TRIAL, "n_events": 2_000, "seed": 7, **overrides})
    return _make


@pytest.fixture
def trial_cfg(make_trial) -> TrialConfig:
    return make_trial()


@pytest.fixture
def random_game():
    """Draws GameParameters with every utility in [0, 20] and prior in (0, 1)."""
    def _draw(seed: int) -> GameParameters:
        rng = np.random.default_rng(seed)
        values = {key: float(rng.uniform(0.0, 20.0)) for key in CANONICAL_GAME if key != "prior_soph"}
        values["benefit_attacker_soph"] += 0.5
        values["benefit_attacker_naive"] += 0.5
        values["prior_soph"] = float(rng.uniform(0.05, 0.95))
        return GameParameters(**values)
    return _draw


@pytest.fixture
def config_file(tmp_path):
    """Writes a run config into tmp_path and returns its path."""
    def _write(**sections) -> str:
        document = {
            "game": dict(CANONICAL_GAME),
            "ids": dict(CANONICAL_IDS),
            "trial": {**CANONICAL_TRIAL, "n_events": 500},
            "out_dir": str(tmp_path / "out"),
            "seed": 11,
        }
        for key, value in sections.items():
            if isinstance(value, dict) and isinstance(document.get(key), dict):
                document[key] = {**document[key], **value}
            else:
                document[key] = value
        path = tmp_path / "config.json"
        path.write_text(json.dumps(document), encoding="utf-8")
        return str(path)
    return _write
