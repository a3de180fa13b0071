"""
Random streams.

Trial streams are derived from (base_seed, trial_index) with numpy's
SeedSequence, so a trial's draws do not depend on which worker runs it or in
what order trials finish.
"""
from typing import Protocol, Sequence

import numpy as np

# Uniforms consumed per event, in draw order.
DRAWS_PER_EVENT = 6
PRESENCE, TYPE, ATTACK, ALERT, DECISION, DETECTION = range(DRAWS_PER_EVENT)


class UniformSource(Protocol):
    """Anything that hands out U[0, 1) floats; numpy Generators qualify."""

    def random(self) -> float: ...


def trial_seed_sequence(base_seed: int, trial_index: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(entropy=base_seed, spawn_key=(trial_index,))


def trial_rng(base_seed: int, trial_index: int) -> np.random.Generator:
    """The generator owned by one trial."""
    return np.random.default_rng(trial_seed_sequence(base_seed, trial_index))


def draw_trial_uniforms(rng: np.random.Generator, n_events: int) -> np.ndarray:
    """(n_events, 6) matrix; column order is PRESENCE..DETECTION."""
    return rng.random((n_events, DRAWS_PER_EVENT))


class ReplayStream:
    """Hands out pre-drawn uniforms in order."""

    def __init__(self, values: Sequence[float]):
        self._values = [float(v) for v in values]
        self._position = 0

    def random(self) -> float:
        if self._position >= len(self._values):
            raise IndexError("replay stream exhausted")
        value = self._values[self._position]
        self._position += 1
        return value

    @property
    def consumed(self) -> int:
        return self._position
