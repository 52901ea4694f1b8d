"""Experiment orchestration: data in, metric tables and curves out.

A run has two stages. The classical stage standardises the full feature set
and fits the logistic baseline. The hybrid stage, for every qubit count ``n``,
standardises, projects onto ``n`` principal components fitted on the
training rows, trains a VQC and scores it on the test rows.
"""

import csv
import json
import logging
import math
import os
import tempfile
import time
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from . import baseline, metrics, preprocess, vqc
from .errors import ConfigurationError, IngestionError, VqcBenchError
from .optim import OptimizerConfig
from .rng import ALGORITHM as RNG_ALGORITHM
from .rng import XorShift64Star

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
REFERENCE_SHAPE = (2157, 518, 1567)
METRIC_KEYS = ("accuracy", "precision", "recall", "f1", "auc")


@dataclass
class Dataset:
    X: np.ndarray
    y: np.ndarray
    split_tag: str
    feature_names: list = None
    rejected_rows: int = 0

    def __post_init__(self):
        self.X = np.asarray(self.X, dtype=float)
        self.y = np.asarray(self.y, dtype=int)
        if self.X.ndim != 2 or self.X.shape[0] != self.y.size:
            raise ConfigurationError("X must be N x D with one label per row")
        if self.split_tag not in ("train", "test"):
            raise ConfigurationError("split_tag must be 'train' or 'test'")

    @property
    def n_features(self):
        return self.X.shape[1]


# -- ingestion ---------------------------------------------------------------


def _read_csv(path, label_column, split_tag):
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise IngestionError(f"cannot open {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise IngestionError(f"{path} is empty") from None
        if label_column not in header:
            raise IngestionError(f"{path} has no label column {label_column!r}")
        li = header.index(label_column)
        names = header[:li] + header[li + 1 :]
        rows, labels, bad = [], [], []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                if len(row) != len(header):
                    raise ValueError(f"{len(row)} cells, expected {len(header)}")
                label = float(row[li])
                if label not in (0.0, 1.0):
                    raise ValueError(f"label {row[li]!r}")
                values = [float(c) for j, c in enumerate(row) if j != li]
                if not all(math.isfinite(v) for v in values):
                    raise ValueError("non-finite value")
            except ValueError as exc:
                bad.append((lineno, str(exc)))
                continue
            rows.append(values)
            labels.append(int(label))
    if bad:
        shown = "; ".join(f"line {n}: {msg}" for n, msg in bad[:5])
        log.warning("%s: rejected %d row(s) (%s)", path, len(bad), shown)
    if not rows:
        raise IngestionError(f"{path} has no usable rows")
    X = np.array(rows, dtype=float).reshape(len(rows), len(names))
    return Dataset(X, np.array(labels), split_tag, names, rejected_rows=len(bad))


def ingest_csv(train_path, test_path, label_column="label"):
    """Read a train/test CSV pair; the feature columns must match by name."""
    train = _read_csv(train_path, label_column, "train")
    test = _read_csv(test_path, label_column, "test")
    if train.feature_names != test.feature_names:
        missing = [c for c in train.feature_names if c not in test.feature_names]
        extra = [c for c in test.feature_names if c not in train.feature_names]
        detail = []
        if missing:
            detail.append(f"test lacks {missing[:10]}")
        if extra:
            detail.append(f"test has extra {extra[:10]}")
        if not detail:
            detail.append("column order differs")
        raise IngestionError(
            f"train has {train.n_features} features, test has {test.n_features}: "
            + ", ".join(detail)
        )
    return train, test


def write_csv(dataset, path, label_column="label"):
    names = dataset.feature_names or [f"f{j}" for j in range(dataset.n_features)]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(names + [label_column])
        for x, y in zip(dataset.X, dataset.y):
            writer.writerow([repr(float(v)) for v in x] + [int(y)])


def synth_dataset(n_samples=500, n_features=2, class_separation=6.0, seed=42):
    """Two unit-variance Gaussian blobs, class centres ``class_separation`` apart.

    The offset runs along the all-ones diagonal so that the separating
    direction is also the leading principal axis. The first 80% of rows
    form the training split.
    """
    if n_features < 2:
        raise ConfigurationError("n_features must be >= 2")
    if class_separation < 0:
        raise ConfigurationError("class_separation must be >= 0")
    if n_samples < 10:
        raise ConfigurationError("n_samples must be >= 10")
    rng = XorShift64Star(seed)
    y = (rng.uniform(size=n_samples) < 0.5).astype(int)
    # both classes in both splits
    y[0], y[1], y[-1], y[-2] = 0, 1, 0, 1
    X = rng.normal((n_samples, n_features))
    X[y == 1] += class_separation / np.sqrt(n_features)
    k = int(round(0.8 * n_samples))
    names = [f"f{j}" for j in range(n_features)]
    return (
        Dataset(X[:k], y[:k], "train", names),
        Dataset(X[k:], y[k:], "test", names),
    )


# -- configuration -----------------------------------------------------------


def default_budget(n_qubits):
    return 100 if n_qubits <= 4 else 80


@dataclass
class RunConfig:
    seed: int = 42
    qubit_counts: list = field(default_factory=lambda: [4, 8, 12])
    budgets: list = None
    feature_reps: int = 2
    ansatz_reps: int = 3
    phase_convention: str = "paper"
    input_scale: float = 1.0
    rho_begin: float = 1.0
    rho_end: float = 1e-4
    use_scaler: bool = True
    use_pca: bool = True
    l2_strength: float = None
    max_epochs: int = 500
    learning_rate: float = 0.1
    eval_shots: int = None
    train_path: str = None
    test_path: str = None
    label_column: str = "label"
    external_baselines: str = None
    output_dir: str = "results"
    dataset_label: str = None

    def __post_init__(self):
        self.qubit_counts = [int(n) for n in self.qubit_counts]
        if not self.qubit_counts:
            raise ConfigurationError("qubit_counts is empty")
        if any(n < 1 for n in self.qubit_counts):
            raise ConfigurationError("qubit counts must be positive")
        if self.budgets is None:
            self.budgets = [default_budget(n) for n in self.qubit_counts]
        self.budgets = [int(b) for b in self.budgets]
        if len(self.budgets) != len(self.qubit_counts):
            raise ConfigurationError("budgets must align with qubit_counts")
        if any(b < 1 for b in self.budgets):
            raise ConfigurationError("budgets must be >= 1")
        if self.eval_shots is not None and self.eval_shots < 1:
            raise ConfigurationError("eval_shots must be >= 1")

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigurationError(f"unknown config key(s): {', '.join(unknown)}")
        return cls(**data)

    @classmethod
    def from_file(cls, path):
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigurationError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigurationError("config file must hold a JSON object")
        return cls.from_dict(data)

    def replace(self, **overrides):
        data = asdict(self)
        if overrides.get("qubit_counts") is not None and overrides.get("budgets") is None:
            data["budgets"] = None
        data.update({k: v for k, v in overrides.items() if v is not None})
        return RunConfig.from_dict(data)

    def vqc_shape(self, n):
        return vqc.VqcShape.default(
            n, self.feature_reps, self.ansatz_reps, self.phase_convention, self.input_scale
        )

    def optimizer(self, budget):
        return OptimizerConfig(budget, self.rho_begin, self.rho_end, self.seed)


# -- stages ------------------------------------------------------------------


def _metric_row(model, y_true, y_pred, scores, direction, seed, n_qubits=None, evaluations=None):
    counts, summ, roc = metrics.evaluate(y_true, y_pred, scores, direction)
    row = {
        "model": model,
        "n_qubits": n_qubits,
        "status": "ok",
        "source": "computed",
        "seed": seed,
        "accuracy": summ.accuracy,
        "precision": summ.precision,
        "recall": summ.recall,
        "f1": summ.f1,
        "auc": roc.auc,
        "precision_undefined": summ.precision_undefined,
        "confusion": asdict(counts),
        "evaluations": evaluations,
    }
    curve = {
        "fpr": roc.fpr.tolist(),
        "tpr": roc.tpr.tolist(),
        "thresholds": [None if math.isinf(t) else float(t) for t in roc.thresholds],
    }
    return row, curve


def _scale(config, train, test):
    if not config.use_scaler:
        return None, train.X, test.X
    scaler = preprocess.fit_scaler(train.X)
    return scaler, preprocess.transform_scaler(scaler, train.X), preprocess.transform_scaler(scaler, test.X)


def load_external_rows(path):
    """Metric rows computed elsewhere (e.g. tree ensembles), as fractions in [0, 1]."""
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        for rec in csv.DictReader(fh):
            try:
                row = {"model": rec["model"].strip()}
                for key in METRIC_KEYS:
                    value = float(rec[key])
                    if not 0.0 <= value <= 1.0:
                        raise ValueError(f"{key}={value} is not a fraction")
                    row[key] = value
            except (KeyError, ValueError) as exc:
                raise IngestionError(f"{path}: bad baseline row {rec}: {exc}") from exc
            row.update(
                n_qubits=None,
                status="ok",
                source="external",
                seed=None,
                precision_undefined=False,
                confusion=None,
                evaluations=None,
            )
            rows.append(row)
    return rows


def run_classical_stage(config, train, test):
    t0 = time.perf_counter()
    scaler, Xtr, Xte = _scale(config, train, test)
    model = baseline.fit_logistic(
        Xtr, train.y, config.l2_strength, config.max_epochs, config.learning_rate, config.seed
    )
    proba = baseline.predict_proba(model, Xte)
    row, curve = _metric_row(
        "logistic_regression", test.y, (proba >= 0.5).astype(int), proba, "higher", config.seed
    )
    rows = [row]
    if config.external_baselines:
        if os.path.exists(config.external_baselines):
            rows.extend(load_external_rows(config.external_baselines))
        else:
            log.info("no external baseline file at %s", config.external_baselines)
    return {
        "rows": rows,
        "roc": {"logistic_regression": curve},
        "scaler": _scaler_summary(scaler),
        "model": model,
        "seconds": time.perf_counter() - t0,
    }


def _scaler_summary(scaler):
    if scaler is None:
        return None
    return {
        "means": scaler.means.tolist(),
        "stds": scaler.stds.tolist(),
        "zero_variance": int(scaler.zero_variance.sum()),
    }


def run_hybrid_for(config, n, budget, train, test, scaled=None):
    """One entry of the qubit sweep; independent of every other entry."""
    t0 = time.perf_counter()
    scaler, Xtr, Xte = scaled if scaled is not None else _scale(config, train, test)
    name = f"vqc_{n}q"
    out = {"n_qubits": n, "budget": budget, "model": name}
    if config.use_pca:
        if n > min(Xtr.shape):
            raise ConfigurationError(f"{n} components exceed min(D, N_train) = {min(Xtr.shape)}")
        pca = preprocess.fit_pca(Xtr, n)
        Ptr, Pte = preprocess.transform_pca(pca, Xtr), preprocess.transform_pca(pca, Xte)
        out["cumulative_variance_pct"] = preprocess.cumulative_variance_report(pca)[-1][1]
        out["explained_variance"] = pca.explained_variance.tolist()
    else:
        if Xtr.shape[1] != n:
            raise ConfigurationError(f"without PCA the data width must equal the qubit count {n}")
        Ptr, Pte = Xtr, Xte
        out["cumulative_variance_pct"] = None
    shape = config.vqc_shape(n)
    out["circuit"] = shape.to_dict()
    try:
        model, tlog = vqc.train(shape, Ptr, train.y, config.optimizer(budget), seed=config.seed)
    except VqcBenchError as exc:
        log.error("VQC training for %d qubits failed: %s", n, exc)
        out.update(status="failed", error=str(exc), seconds=time.perf_counter() - t0)
        return out
    if config.eval_shots:
        scores = vqc.decision_scores(model, Pte, shots=config.eval_shots, seed=config.seed)
    else:
        scores = vqc.decision_scores(model, Pte)
    row, curve = _metric_row(
        name, test.y, vqc.labels_from_scores(scores), scores, "lower", config.seed, n, tlog.evaluations
    )
    out.update(
        status="ok",
        row=row,
        roc=curve,
        theta=model.theta.tolist(),
        cost_history=[c for _, c in tlog.cost_history],
        wall_times=tlog.wall_times,
        termination=tlog.termination,
        seconds=time.perf_counter() - t0,
    )
    return out


def run_hybrid_stage(config, train, test):
    scaled = _scale(config, train, test)
    entries = [
        run_hybrid_for(config, n, b, train, test, scaled)
        for n, b in zip(config.qubit_counts, config.budgets)
    ]
    return {"entries": entries, "scaler": _scaler_summary(scaled[0])}


# -- report ------------------------------------------------------------------


def _provenance(config, train, test):
    if config.dataset_label:
        return config.dataset_label
    shape = (train.X.shape[0], test.X.shape[0], train.n_features)
    return "paper-dataset" if shape == REFERENCE_SHAPE else "csv"


def build_report(config, train, test, classical=None, hybrid=None):
    report = {
        "schema_version": SCHEMA_VERSION,
        "dataset": {
            "provenance": _provenance(config, train, test),
            "n_train": int(train.X.shape[0]),
            "n_test": int(test.X.shape[0]),
            "n_features": int(train.n_features),
            "rejected_rows": {"train": train.rejected_rows, "test": test.rejected_rows},
        },
        "config": asdict(config),
        "rng": RNG_ALGORITHM,
        "metrics": [],
        "roc": {},
        "pca_variance": [],
        "recall_vs_qubits": [],
        "cost_histories": {},
        "failures": [],
        "fitted": {},
        "timings": {},
    }
    if classical:
        report["metrics"].extend(classical["rows"])
        report["roc"].update(classical["roc"])
        report["fitted"]["classical_scaler"] = classical["scaler"]
        report["timings"]["classical_seconds"] = classical["seconds"]
    if hybrid:
        report["fitted"]["hybrid_scaler"] = hybrid["scaler"]
        for e in hybrid["entries"]:
            n = e["n_qubits"]
            report["timings"][f"vqc_{n}q_seconds"] = e["seconds"]
            if e.get("cumulative_variance_pct") is not None:
                report["pca_variance"].append(
                    {
                        "n_components": n,
                        "cumulative_variance_pct": e["cumulative_variance_pct"],
                        "explained_variance": e["explained_variance"],
                    }
                )
            if e["status"] != "ok":
                report["failures"].append({"n_qubits": n, "error": e["error"]})
                report["recall_vs_qubits"].append(
                    {"n_qubits": n, "recall": None, "cumulative_variance_pct": e.get("cumulative_variance_pct")}
                )
                continue
            report["metrics"].append(e["row"])
            report["roc"][e["model"]] = e["roc"]
            report["recall_vs_qubits"].append(
                {
                    "n_qubits": n,
                    "recall": e["row"]["recall"],
                    "cumulative_variance_pct": e.get("cumulative_variance_pct"),
                }
            )
            report["cost_histories"][str(n)] = {
                "budget": e["budget"],
                "cost": e["cost_history"],
                "wall_times": e["wall_times"],
                "termination": e["termination"],
                "theta": e["theta"],
                "circuit": e["circuit"],
            }
    return report


def _fmt(value, places=None):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if places is not None:
        return f"{value:.{places}f}"
    return repr(float(value)) if isinstance(value, float) else str(value)


def _pct(value):
    return "" if value is None else f"{metrics.as_percent(value):.2f}"


def report_files(report):
    """File name -> list of CSV rows (header first), excluding report.json."""
    files = {}
    metric_rows = [
        [
            "model", "n_qubits", "recall_pct", "accuracy_pct", "precision_pct", "f1_pct",
            "auc", "precision_undefined", "source", "seed", "evaluations",
        ]
    ]
    for r in report["metrics"]:
        metric_rows.append(
            [
                r["model"], _fmt(r["n_qubits"]), _pct(r["recall"]), _pct(r["accuracy"]),
                _pct(r["precision"]), _pct(r["f1"]), _fmt(r["auc"], 4),
                _fmt(r["precision_undefined"]), r["source"], _fmt(r["seed"]), _fmt(r["evaluations"]),
            ]
        )
    files["metrics.csv"] = metric_rows

    files["pca_variance.csv"] = [["n_components", "cumulative_variance_pct", "cumulative_variance_exact"]] + [
        [str(p["n_components"]), _fmt(p["cumulative_variance_pct"], 2), _fmt(p["cumulative_variance_pct"])]
        for p in report["pca_variance"]
    ]
    for name, curve in report["roc"].items():
        rows = [["fpr", "tpr", "threshold"]]
        for f, t, th in zip(curve["fpr"], curve["tpr"], curve["thresholds"]):
            rows.append([_fmt(f), _fmt(t), "inf" if th is None else _fmt(th)])
        files[f"roc_{name}.csv"] = rows
    files["recall_vs_qubits.csv"] = [["n_qubits", "recall_pct", "cumulative_variance_pct"]] + [
        [str(p["n_qubits"]), _pct(p["recall"]), _fmt(p["cumulative_variance_pct"], 2)]
        for p in report["recall_vs_qubits"]
    ]
    for n, hist in report["cost_histories"].items():
        rows = [["iteration", "cost", "best_so_far"]]
        best = np.minimum.accumulate(hist["cost"]) if hist["cost"] else []
        for i, (c, b) in enumerate(zip(hist["cost"], best)):
            rows.append([str(i), _fmt(c), _fmt(float(b))])
        files[f"cost_history_{n}q.csv"] = rows
    return files


def _json_default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def emit_report(report, out_dir):
    """Write report.json and the CSV tables. Returns the written paths."""
    if not report.get("metrics") and not report.get("recall_vs_qubits"):
        raise ConfigurationError("empty report: nothing was run")
    os.makedirs(out_dir, exist_ok=True)
    try:
        with tempfile.NamedTemporaryFile(dir=out_dir, prefix=".probe-"):
            pass
    except OSError as exc:
        raise OSError(f"output directory {out_dir} is not writable: {exc}") from exc

    written = []
    for name, rows in report_files(report).items():
        path = os.path.join(out_dir, name)
        with open(path, "w", newline="", encoding="utf-8") as fh:
            csv.writer(fh, lineterminator="\n").writerows(rows)
        written.append(path)
    path = os.path.join(out_dir, "report.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, default=_json_default)
        fh.write("\n")
    written.append(path)
    return written


def load_report(path):
    with open(path, encoding="utf-8") as fh:
        report = json.load(fh)
    if report.get("schema_version") != SCHEMA_VERSION:
        raise ConfigurationError(f"{path}: unsupported schema_version {report.get('schema_version')}")
    return report


def load_datasets(config):
    if not (config.train_path and config.test_path):
        raise ConfigurationError("train_path and test_path are required")
    return ingest_csv(config.train_path, config.test_path, config.label_column)


def run(config, stages=("classical", "hybrid")):
    """Ingest, run the requested stages and return the report dict."""
    train, test = load_datasets(config)
    classical = run_classical_stage(config, train, test) if "classical" in stages else None
    hybrid = run_hybrid_stage(config, train, test) if "hybrid" in stages else None
    return build_report(config, train, test, classical, hybrid)
