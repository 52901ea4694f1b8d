"""Variational quantum classifier.

The decision score of a sample ``x`` is ``<Z_r>`` on the state
``U(theta) U_phi(x) |0...0>``, where ``r`` is the readout qubit. Labels map
to regression targets as ``0 -> +1`` (benign) and ``1 -> -1`` (ransomware).
The training cost is the mean squared error between scores and targets,
minimised with :func:`vqcbench.optim.cobyla_minimize`.
"""

import time
from dataclasses import dataclass, field

import numpy as np

from . import qsim
from .circuits import AnsatzSpec, FeatureMapSpec, build_ansatz, build_feature_map, encode_batch
from .errors import ConfigurationError, OptimizationError, TrainingError
from .optim import OptimizerConfig, cobyla_minimize, random_init
from .rng import XorShift64Star

# amplitudes per simulated chunk (rows * 2**n)
_CHUNK_AMPLITUDES = 1 << 16


@dataclass(frozen=True)
class VqcShape:
    """Everything about a classifier except its trained parameters."""

    feature_map: FeatureMapSpec
    ansatz: AnsatzSpec
    readout_qubit: int = 0

    def __post_init__(self):
        if self.feature_map.n_qubits != self.ansatz.n_qubits:
            raise ConfigurationError("feature map and ansatz disagree on the qubit count")
        if not 0 <= self.readout_qubit < self.n_qubits:
            raise ConfigurationError("readout qubit out of range")

    @property
    def n_qubits(self):
        return self.feature_map.n_qubits

    @property
    def parameter_count(self):
        return self.ansatz.parameter_count

    @classmethod
    def default(cls, n_qubits, feature_reps=2, ansatz_reps=3, phase_convention="paper", input_scale=1.0):
        return cls(
            FeatureMapSpec(n_qubits, feature_reps, phase_convention, input_scale=input_scale),
            AnsatzSpec(n_qubits, ansatz_reps),
        )

    def to_dict(self):
        return {
            "feature_map": self.feature_map.to_dict(),
            "ansatz": self.ansatz.to_dict(),
            "observable": f"Z{self.readout_qubit}",
        }


@dataclass(frozen=True)
class VqcModel:
    shape: VqcShape
    theta: np.ndarray

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=float).ravel()
        if theta.size != self.shape.parameter_count:
            raise ConfigurationError(
                f"theta has {theta.size} entries, ansatz needs {self.shape.parameter_count}"
            )
        object.__setattr__(self, "theta", theta)


@dataclass
class TrainLog:
    cost_history: list = field(default_factory=list)
    wall_times: list = field(default_factory=list)
    initial_theta: np.ndarray = None
    theta: np.ndarray = None
    converged: bool = False
    termination: str = ""

    @property
    def evaluations(self):
        return len(self.cost_history)

    def best_so_far(self):
        return np.minimum.accumulate([c for _, c in self.cost_history])


def targets(y):
    y = np.asarray(y)
    if not np.isin(y, (0, 1)).all():
        raise ConfigurationError("labels must be 0 or 1")
    return 1.0 - 2.0 * y


def _check_X(shape, X):
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if X.shape[1] != shape.n_qubits:
        raise ConfigurationError(
            f"samples have {X.shape[1]} features, classifier uses {shape.n_qubits} qubits"
        )
    return X


def decision_score(model, x):
    """Score of a single sample, simulated gate by gate."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size != model.shape.n_qubits:
        raise ConfigurationError(f"expected a feature vector of length {model.shape.n_qubits}")
    gates = build_feature_map(model.shape.feature_map, x) + build_ansatz(
        model.shape.ansatz, model.theta
    )
    state = qsim.run_circuit(gates, model.shape.n_qubits)
    return qsim.expectation_z(state, model.shape.readout_qubit)


class EncodedData:
    """Feature-map states of a sample matrix, cached because they do not depend on theta."""

    def __init__(self, shape, X):
        X = _check_X(shape, X)
        self.shape = shape
        self.n_samples = X.shape[0]
        rows = max(1, _CHUNK_AMPLITUDES >> shape.n_qubits)
        self.chunks = [
            encode_batch(shape.feature_map, X[i : i + rows]) for i in range(0, len(X), rows)
        ]

    def scores(self, theta):
        gates = build_ansatz(self.shape.ansatz, theta)
        n = self.shape.n_qubits
        out = []
        for chunk in self.chunks:
            psi = chunk.copy()
            for gate in gates:
                qsim.apply_inplace(psi, n, gate)
            out.append(qsim.expectation_z_batch(psi, n, self.shape.readout_qubit))
        return np.concatenate(out)

    def states(self, theta):
        gates = build_ansatz(self.shape.ansatz, theta)
        out = []
        for chunk in self.chunks:
            psi = chunk.copy()
            for gate in gates:
                qsim.apply_inplace(psi, self.shape.n_qubits, gate)
            out.append(psi)
        return np.concatenate(out)


def decision_scores(model, X, shots=None, seed=0):
    """Scores for every row of ``X``; exact unless ``shots`` is given."""
    encoded = EncodedData(model.shape, X)
    if shots is None:
        return encoded.scores(model.theta)
    n = model.shape.n_qubits
    states = encoded.states(model.theta)
    rng = XorShift64Star(seed)
    out = np.empty(len(states))
    for i, amps in enumerate(states):
        out[i] = qsim.sample_z(qsim.StateVector(amps), model.shape.readout_qubit, shots, rng.next_u64())
    return out


def predict(model, x):
    """0 (benign) when the score is >= 0, otherwise 1."""
    return 0 if decision_score(model, x) >= 0.0 else 1


def labels_from_scores(scores):
    return np.where(np.asarray(scores) >= 0.0, 0, 1)


def ransomware_probability(scores):
    return (1.0 - np.asarray(scores)) / 2.0


def _mse(scores, y_target):
    return float(np.mean((scores - y_target) ** 2))


def cost(shape, theta, X, y):
    """Mean squared error between scores and the +/-1 targets."""
    X = _check_X(shape, X)
    if X.shape[0] == 0:
        raise ConfigurationError("cost of an empty dataset is undefined")
    if len(y) != X.shape[0]:
        raise ConfigurationError("X and y have different lengths")
    return _mse(EncodedData(shape, X).scores(theta), targets(y))


def train(shape, X, y, optimizer_config=None, seed=42, initial_theta=None):
    """Fit theta with COBYLA. Returns the model at the best theta seen and its log."""
    optimizer_config = optimizer_config or OptimizerConfig()
    X = _check_X(shape, X)
    if X.shape[0] == 0:
        raise ConfigurationError("cannot train on an empty dataset")
    if len(y) != X.shape[0]:
        raise ConfigurationError("X and y have different lengths")
    y_target = targets(y)
    encoded = EncodedData(shape, X)
    if initial_theta is None:
        theta0 = random_init(shape.parameter_count, -np.pi, np.pi, seed)
    else:
        theta0 = np.asarray(initial_theta, dtype=float)

    log = TrainLog(initial_theta=theta0.copy())
    clock = [time.perf_counter()]

    def objective(theta):
        value = _mse(encoded.scores(theta), y_target)
        now = time.perf_counter()
        log.cost_history.append((len(log.cost_history), value))
        log.wall_times.append(now - clock[0])
        clock[0] = now
        return value

    try:
        result = cobyla_minimize(objective, theta0, optimizer_config)
    except OptimizationError as exc:
        raise TrainingError(
            f"non-finite cost at iteration {len(log.cost_history) - 1}",
            iteration=len(log.cost_history) - 1,
        ) from exc
    log.theta = result.best_point.copy()
    log.termination = result.termination
    log.converged = result.termination == "rho_converged"
    return VqcModel(shape, result.best_point), log


def finite_difference_gradient(shape, theta, X, y, epsilon=1e-4):
    """Central-difference gradient of the cost."""
    if epsilon <= 0:
        raise ConfigurationError("epsilon must be positive")
    encoded = EncodedData(shape, X)
    y_target = targets(y)
    theta = np.asarray(theta, dtype=float)
    grad = np.empty(theta.size)
    for j in range(theta.size):
        up, down = theta.copy(), theta.copy()
        up[j] += epsilon
        down[j] -= epsilon
        grad[j] = (_mse(encoded.scores(up), y_target) - _mse(encoded.scores(down), y_target)) / (
            2.0 * epsilon
        )
    return grad


def parameter_shift_gradient(shape, theta, X, y):
    """Exact cost gradient from score evaluations at theta_j +/- pi/2.

    Every ansatz parameter is the angle of exactly one RY gate, so
    ``d f / d theta_j = (f(theta + pi/2 e_j) - f(theta - pi/2 e_j)) / 2``.
    """
    encoded = EncodedData(shape, X)
    y_target = targets(y)
    theta = np.asarray(theta, dtype=float)
    residual = encoded.scores(theta) - y_target
    grad = np.empty(theta.size)
    for j in range(theta.size):
        up, down = theta.copy(), theta.copy()
        up[j] += np.pi / 2
        down[j] -= np.pi / 2
        dscore = 0.5 * (encoded.scores(up) - encoded.scores(down))
        grad[j] = 2.0 * np.mean(residual * dscore)
    return grad


def gradient_norm_probe(qubit_counts, X_by_n, y, n_draws=20, seed=42, feature_reps=2, ansatz_reps=3):
    """Mean/variance of gradient components over random theta, per qubit count.

    ``X_by_n`` maps each qubit count to its sample matrix. Used to look for
    shrinking gradients (barren plateaus) as the register grows.
    """
    stats = {}
    for n in qubit_counts:
        shape = VqcShape.default(n, feature_reps, ansatz_reps)
        grads = []
        for k in range(n_draws):
            theta = random_init(shape.parameter_count, -np.pi, np.pi, seed + k)
            grads.append(parameter_shift_gradient(shape, theta, X_by_n[n], y))
        grads = np.array(grads)
        stats[n] = {
            "mean_norm": float(np.linalg.norm(grads, axis=1).mean()),
            "component_variance": float(grads.var(axis=0).mean()),
        }
    return stats
