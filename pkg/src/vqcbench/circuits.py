"""Feature-map and ansatz circuit builders.

The feature map is a second-order Pauli-Z expansion. Each repetition applies
a Hadamard layer followed by the diagonal evolution

    exp(-i sum_j phi_j(x) Z_j) * exp(-i sum_{j<k} phi_jk(x) Z_j Z_k)

Without the Hadamard layer the diagonal evolution only attaches a global
phase to ``|0...0>`` and the encoding would carry no information.

Two phase conventions are available:

``paper``     phi_j = x_j, phi_jk = (x_j - x_k)**2
``standard``  phi_j = x_j, phi_jk = (pi - x_j) * (pi - x_k)

``input_scale`` multiplies every feature before the phases are computed.
Features of order one push the ``paper``-convention phases
``(x_j - x_k)**2`` around the circle several times and wash out class
structure; 0.5 is a good choice for standardised PCA outputs.

The ansatz is the RealAmplitudes layout: an RY layer, then a linear CNOT
chain, ``reps`` times, closed by a final RY layer.
"""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import qsim
from .errors import ConfigurationError

PHASE_CONVENTIONS = ("paper", "standard")


@dataclass(frozen=True)
class FeatureMapSpec:
    n_qubits: int
    reps: int = 2
    phase_convention: str = "paper"
    entanglement: tuple = field(default=None)
    input_scale: float = 1.0

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ConfigurationError("feature map needs at least one qubit")
        if self.reps < 1:
            raise ConfigurationError("feature map reps must be >= 1")
        if not np.isfinite(self.input_scale) or self.input_scale <= 0:
            raise ConfigurationError("input_scale must be a positive number")
        if self.phase_convention not in PHASE_CONVENTIONS:
            raise ConfigurationError(
                f"phase_convention must be one of {PHASE_CONVENTIONS}, got {self.phase_convention!r}"
            )
        if self.entanglement is None:
            object.__setattr__(self, "entanglement", tuple(combinations(range(self.n_qubits), 2)))
        else:
            pairs = tuple(tuple(sorted(p)) for p in self.entanglement)
            for j, k in pairs:
                if j == k or not (0 <= j < self.n_qubits and 0 <= k < self.n_qubits):
                    raise ConfigurationError(f"invalid entangling pair {(j, k)}")
            object.__setattr__(self, "entanglement", pairs)

    def to_dict(self):
        return {
            "n_qubits": self.n_qubits,
            "reps": self.reps,
            "phase_convention": self.phase_convention,
            "entanglement": [list(p) for p in self.entanglement],
            "input_scale": self.input_scale,
        }


@dataclass(frozen=True)
class AnsatzSpec:
    n_qubits: int
    reps: int = 3

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ConfigurationError("ansatz needs at least one qubit")
        if self.reps < 1:
            raise ConfigurationError("ansatz reps must be >= 1")

    @property
    def parameter_count(self):
        return parameter_count(self)

    def to_dict(self):
        return {"n_qubits": self.n_qubits, "reps": self.reps, "entanglement": "linear"}


def parameter_count(spec):
    return spec.n_qubits * (spec.reps + 1)


def _single_phases(spec, X):
    return spec.input_scale * np.asarray(X, dtype=float)


def _pair_phases(spec, X):
    """Pair angles phi_jk for every entangling pair; ``X`` has shape (..., n)."""
    X = spec.input_scale * np.asarray(X, dtype=float)
    if not spec.entanglement:
        return np.zeros(X.shape[:-1] + (0,))
    j, k = np.array(spec.entanglement).T
    if spec.phase_convention == "paper":
        return (X[..., j] - X[..., k]) ** 2
    return (np.pi - X[..., j]) * (np.pi - X[..., k])


def _check_width(spec, x):
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != spec.n_qubits:
        raise ConfigurationError(
            f"feature vector has length {x.shape[-1]}, feature map expects {spec.n_qubits}"
        )
    return x


def build_feature_map(spec, x):
    x = _check_width(spec, x)
    if x.ndim != 1:
        raise ConfigurationError("build_feature_map binds a single feature vector")
    singles = _single_phases(spec, x)
    pairs = _pair_phases(spec, x)
    gates = []
    for _ in range(spec.reps):
        gates.extend(qsim.H(q) for q in range(spec.n_qubits))
        # RZ(2 phi) == exp(-i phi Z)
        gates.extend(qsim.RZ(q, 2.0 * singles[q]) for q in range(spec.n_qubits))
        gates.extend(qsim.ZZ(j, k, pairs[p]) for p, (j, k) in enumerate(spec.entanglement))
    return gates


def build_ansatz(spec, theta):
    theta = np.asarray(theta, dtype=float).ravel()
    if theta.size != parameter_count(spec):
        raise ConfigurationError(
            f"ansatz expects {parameter_count(spec)} parameters, got {theta.size}"
        )
    n = spec.n_qubits
    gates = []
    for layer in range(spec.reps + 1):
        gates.extend(qsim.RY(q, theta[layer * n + q]) for q in range(n))
        if layer < spec.reps:
            gates.extend(qsim.CNOT(q, q + 1) for q in range(n - 1))
    return gates


def feature_map_diagonal(spec, X):
    """Per-sample diagonal phase of one feature-map repetition.

    Returns an array of shape ``(N, 2**n)`` holding
    ``exp(-i (sum_j phi_j z_j + sum_jk phi_jk z_j z_k))`` for every basis
    state. Equivalent to the RZ/ZZ gates emitted by ``build_feature_map``.
    """
    X = _check_width(spec, np.atleast_2d(X))
    n = spec.n_qubits
    signs = np.stack([qsim.z_signs(n, q) for q in range(n)])
    energy = _single_phases(spec, X) @ signs
    if spec.entanglement:
        j, k = np.array(spec.entanglement).T
        energy = energy + _pair_phases(spec, X) @ (signs[j] * signs[k])
    return np.exp(-1j * energy)


def encode_batch(spec, X):
    """Feature-map states for every row of ``X``; shape ``(N, 2**n)``."""
    diag = feature_map_diagonal(spec, X)
    n = spec.n_qubits
    psi = np.zeros(diag.shape, dtype=np.complex128)
    psi[:, 0] = 1.0
    for _ in range(spec.reps):
        for q in range(n):
            qsim._apply_h(psi, n, q)
        psi *= diag
    return psi
