"""
IDS signal model and classification quality tracking.

Alerts are scored against whether an attack was launched. Abstaining
attackers look like legitimate traffic and alert at the false-positive rate.
"""
from typing import Optional

import numpy as np

from honeygame.core.rng import UniformSource
from honeygame.models.ids import ConfusionCounts, EventMix, IdsParameters
from honeygame.models.trial import GroundTruth


def alert_probability(ground_truth: GroundTruth, ids: IdsParameters) -> float:
    if ground_truth is GroundTruth.SOPH_ATTACK:
        return ids.tpr_soph
    if ground_truth is GroundTruth.NAIVE_ATTACK:
        return ids.tpr_naive
    return ids.fpr


def sample_alert(ground_truth: GroundTruth, ids: IdsParameters, rng: UniformSource) -> bool:
    """Consumes exactly one uniform from rng."""
    return rng.random() < alert_probability(ground_truth, ids)


def update_confusion(counts: ConfusionCounts, alert: bool, was_attack: bool) -> ConfusionCounts:
    if alert and was_attack:
        field = "true_positives"
    elif alert:
        field = "false_positives"
    elif was_attack:
        field = "false_negatives"
    else:
        field = "true_negatives"
    return counts.model_copy(update={field: getattr(counts, field) + 1})


def precision(counts: ConfusionCounts) -> float:
    flagged = counts.true_positives + counts.false_positives
    return counts.true_positives / flagged if flagged else 0.0


def recall(counts: ConfusionCounts) -> float:
    attacks = counts.true_positives + counts.false_negatives
    return counts.true_positives / attacks if attacks else 0.0


def _f1(tp: float, fp: float, fn: float) -> float:
    # 2PR/(P+R) simplified; zero whenever TP is zero, which covers every
    # zero-denominator case of precision, recall and their sum
    if tp <= 0:
        return 0.0
    return 2.0 * tp / (2.0 * tp + fp + fn)


def f1_score(counts: ConfusionCounts) -> float:
    return _f1(counts.true_positives, counts.false_positives, counts.false_negatives)


def expected_f1(ids: IdsParameters, mix: EventMix) -> float:
    """F1 the running estimate converges to for this event mix."""
    tp = mix.soph_attack * ids.tpr_soph + mix.naive_attack * ids.tpr_naive
    fn = mix.attack - tp
    fp = mix.benign * ids.fpr
    return _f1(tp, fp, max(fn, 0.0))


# ============================================================================
# Vectorised tracking for whole trials
# ============================================================================

def f1_from_counts(tp: np.ndarray, fp: np.ndarray, fn: np.ndarray) -> np.ndarray:
    tp = np.asarray(tp, dtype=float)
    denominator = 2.0 * tp + np.asarray(fp, dtype=float) + np.asarray(fn, dtype=float)
    out = np.zeros_like(tp)
    np.divide(2.0 * tp, denominator, out=out, where=tp > 0)
    return out


def running_f1(alerts: np.ndarray, attacked: np.ndarray, window: Optional[int] = None) -> np.ndarray:
    """
    F1 over the events before each event: entry i scores events 0..i-1
    (or only the last ``window`` of them). Has one extra trailing entry,
    the F1 after the final event.
    """
    alerts = np.asarray(alerts, dtype=bool)
    attacked = np.asarray(attacked, dtype=bool)
    zero = np.zeros(1, dtype=np.int64)
    tp = np.concatenate((zero, np.cumsum(alerts & attacked)))
    fp = np.concatenate((zero, np.cumsum(alerts & ~attacked)))
    fn = np.concatenate((zero, np.cumsum(~alerts & attacked)))

    if window is not None:
        lag = np.maximum(np.arange(tp.size) - window, 0)
        tp, fp, fn = tp - tp[lag], fp - fp[lag], fn - fn[lag]

    return f1_from_counts(tp, fp, fn)


def confusion_from_arrays(alerts: np.ndarray, attacked: np.ndarray) -> ConfusionCounts:
    alerts = np.asarray(alerts, dtype=bool)
    attacked = np.asarray(attacked, dtype=bool)
    return ConfusionCounts(
        true_positives=int(np.count_nonzero(alerts & attacked)),
        false_positives=int(np.count_nonzero(alerts & ~attacked)),
        true_negatives=int(np.count_nonzero(~alerts & ~attacked)),
        false_negatives=int(np.count_nonzero(~alerts & attacked)),
    )
