from .game import (
    AttackerAction,
    AttackerType,
    ContinuumRecord,
    DefenderAction,
    Equilibrium,
    EquilibriumKind,
    GameParameters,
    PayoffPair,
    ResponseSet,
    Signal,
    StrategyProfile,
    VerificationReport,
)
from .ids import ConfusionCounts, EventMix, IdsParameters, SignalModel
from .policy import DefenderObservation, DeploymentPolicy, PolicyKind, parse_policy
from .trial import Event, EventOutcome, GroundTruth, MonteCarloSummary, TrialConfig, TrialResult
from .experiment import (
    ExperimentId,
    ExperimentOverrides,
    ExperimentResult,
    ExperimentRow,
    ExperimentSpec,
    Provenance,
    Scenario,
)
