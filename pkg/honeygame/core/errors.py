"""
Exceptions raised across honeygame.

Every error carries a human readable ``detail`` and a stable process exit code,
the same way an HTTPException carries a status code and a detail message.

    2 = config / usage, 3 = internal consistency, 4 = I/O
"""


class HoneygameError(Exception):
    """Base class for all errors surfaced to the CLI."""

    exit_code: int = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class ConfigError(HoneygameError, ValueError):
    """Invalid configuration, override or command line value."""

    exit_code = 2


class PolicySpecError(ConfigError):
    """A policy specification string does not match the grammar."""


class ExperimentSpecError(ConfigError):
    """Unknown experiment id, mismatched runner or empty sweep."""


class DegenerateParametersError(ConfigError):
    """Attacker payoffs leave the attacker indifferent at every beta."""


class UndefinedPosteriorError(HoneygameError, ValueError):
    """The observed signal has zero probability under both attacker types."""

    exit_code = 2


class ContinuumSelectionError(HoneygameError, ValueError):
    """A continuum equilibrium was used where a single profile is required."""

    exit_code = 2


class PreconditionError(HoneygameError, ValueError):
    """An operation was called with arguments violating its precondition."""

    # no CLI path raises it; a caller bug like SolverConsistencyError
    exit_code = 3


class SolverConsistencyError(HoneygameError):
    """The equilibrium solver produced an impossible result."""

    exit_code = 3


class ExportError(HoneygameError):
    """Writing an output file failed."""

    exit_code = 4

    def __init__(self, detail: str, path=None):
        super().__init__(detail if path is None else f"{path}: {detail}")
        self.path = path
