"""Plain-text model files.

Layout (one record per line, blank lines ignored)::

    vqcbench-model 1
    kind pca
    scalar l2_strength 0.001
    vector mean 3
    0.1 -0.2 0.3
    matrix components 3 2
    0.6 0.8
    -0.8 0.6
    0.0 0.0
    end

Floats are written with ``repr`` so a save/load round trip is exact.
"""

import numpy as np

from .baseline import LogisticModel
from .errors import ConfigurationError
from .preprocess import PcaModel, ScalerModel

MAGIC = "vqcbench-model"
VERSION = 1

_FIELDS = {
    "scaler": (ScalerModel, {"means": "vector", "stds": "vector"}),
    "pca": (
        PcaModel,
        {
            "mean": "vector",
            "components": "matrix",
            "explained_variance": "vector",
            "explained_variance_ratio": "vector",
        },
    ),
    "logistic": (LogisticModel, {"weights": "vector", "bias": "scalar", "l2_strength": "scalar"}),
}


def _row(values):
    return " ".join(repr(float(v)) for v in values)


def dumps(model):
    for kind, (cls, fields) in _FIELDS.items():
        if isinstance(model, cls):
            break
    else:
        raise ConfigurationError(f"cannot serialise {type(model).__name__}")
    lines = [f"{MAGIC} {VERSION}", f"kind {kind}"]
    for name, form in fields.items():
        value = getattr(model, name)
        if form == "scalar":
            lines.append(f"scalar {name} {float(value)!r}")
        elif form == "vector":
            value = np.asarray(value, dtype=float)
            lines.append(f"vector {name} {value.size}")
            lines.append(_row(value))
        else:
            value = np.asarray(value, dtype=float)
            lines.append(f"matrix {name} {value.shape[0]} {value.shape[1]}")
            lines.extend(_row(r) for r in value)
    lines.append("end")
    return "\n".join(lines) + "\n"


def loads(text):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].split() != [MAGIC, str(VERSION)]:
        raise ConfigurationError("not a version-1 model file")
    head = lines[1].split()
    if len(head) != 2 or head[0] != "kind" or head[1] not in _FIELDS:
        raise ConfigurationError(f"bad kind line {lines[1]!r}")
    cls, fields = _FIELDS[head[1]]
    values = {}
    i = 2
    while i < len(lines) and lines[i] != "end":
        parts = lines[i].split()
        form, name = parts[0], parts[1]
        if form == "scalar":
            values[name] = float(parts[2])
            i += 1
        elif form == "vector":
            size = int(parts[2])
            row = lines[i + 1].split() if size else []
            values[name] = np.array([float(v) for v in row])
            i += 2 if size else 1
        elif form == "matrix":
            rows, cols = int(parts[2]), int(parts[3])
            block = [[float(v) for v in lines[i + 1 + r].split()] for r in range(rows)]
            values[name] = np.array(block).reshape(rows, cols)
            i += 1 + rows
        else:
            raise ConfigurationError(f"unknown record {form!r}")
    if set(values) != set(fields):
        raise ConfigurationError(f"{head[1]} model needs fields {sorted(fields)}")
    return cls(**values)


def save(model, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(model))


def load(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
