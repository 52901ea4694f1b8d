"""Binary classification metrics. The positive class is ransomware (label 1)."""

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

import numpy as np

from .errors import ConfigurationError


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self):
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class Summary:
    accuracy: float
    precision: float
    recall: float
    f1: float
    precision_undefined: bool = False


@dataclass(frozen=True)
class RocCurve:
    fpr: np.ndarray
    tpr: np.ndarray
    thresholds: np.ndarray
    auc: float

    @property
    def points(self):
        return list(zip(self.fpr.tolist(), self.tpr.tolist()))


def _labels(y, name):
    y = np.asarray(y)
    if y.ndim != 1:
        raise ConfigurationError(f"{name} must be one-dimensional")
    if not np.isin(y, (0, 1)).all():
        raise ConfigurationError(f"{name} must contain only 0 and 1")
    return y.astype(int)


def confusion(y_true, y_pred):
    t = _labels(y_true, "y_true")
    p = _labels(y_pred, "y_pred")
    if t.size != p.size:
        raise ConfigurationError("y_true and y_pred have different lengths")
    return ConfusionCounts(
        tp=int(np.sum((t == 1) & (p == 1))),
        fp=int(np.sum((t == 0) & (p == 1))),
        tn=int(np.sum((t == 0) & (p == 0))),
        fn=int(np.sum((t == 1) & (p == 0))),
    )


def summary(counts):
    """Accuracy, precision, recall, F1.

    Precision with no positive predictions is reported as 0 and flagged.
    """
    if counts.total <= 0:
        raise ConfigurationError("no samples were evaluated")
    accuracy = (counts.tp + counts.tn) / counts.total
    undefined = counts.tp + counts.fp == 0
    precision = 0.0 if undefined else counts.tp / (counts.tp + counts.fp)
    positives = counts.tp + counts.fn
    recall = counts.tp / positives if positives else 0.0
    f1 = 0.0 if precision + recall == 0 else 2 * precision * recall / (precision + recall)
    return Summary(accuracy, precision, recall, f1, undefined)


def roc_auc(y_true, scores, positive_direction="higher"):
    """ROC points over all distinct thresholds plus trapezoidal AUC.

    With ``positive_direction="lower"`` small scores indicate the positive
    class (used for VQC scores, where -1 means ransomware). Tied scores form
    a single threshold step, so the AUC equals the Mann-Whitney statistic
    with ties counted as one half.
    """
    y = _labels(y_true, "y_true")
    s = np.asarray(scores, dtype=float)
    if s.shape != y.shape:
        raise ConfigurationError("scores and labels have different lengths")
    if positive_direction not in ("higher", "lower"):
        raise ConfigurationError("positive_direction must be 'higher' or 'lower'")
    n_pos = int(y.sum())
    n_neg = y.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ConfigurationError("AUC is undefined with a single class")

    key = s if positive_direction == "higher" else -s
    order = np.argsort(-key, kind="mergesort")
    key, ys = key[order], y[order]
    # last index of each run of equal scores
    ends = np.r_[np.nonzero(np.diff(key))[0], y.size - 1]
    tps = np.cumsum(ys)[ends]
    fps = (ends + 1) - tps
    tpr = np.r_[0.0, tps / n_pos]
    fpr = np.r_[0.0, fps / n_neg]
    thresholds = np.r_[np.inf, s[order][ends]]
    auc = float(np.sum(np.diff(fpr) * (tpr[1:] + tpr[:-1]) / 2.0))
    return RocCurve(fpr, tpr, thresholds, auc)


def evaluate(y_true, y_pred, scores, positive_direction="higher"):
    """Summary metrics plus ROC for one model on one test set."""
    counts = confusion(y_true, y_pred)
    return counts, summary(counts), roc_auc(y_true, scores, positive_direction)


def as_percent(value, places=2):
    """Percentage rounded half away from zero to ``places`` decimals."""
    q = Decimal(1).scaleb(-places)
    # scale in decimal so 0.19135 becomes 19.135 rather than 19.134999...
    return float((Decimal(repr(float(value))) * 100).quantize(q, rounding=ROUND_HALF_UP))
