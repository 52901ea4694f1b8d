"""Dense statevector simulator.

Qubit ordering is little-endian: qubit ``q`` is bit ``q`` of the basis-state
index, so ``|01>`` written as (qubit1, qubit0) lives at index 1.

Gate conventions::

    H        = [[1, 1], [1, -1]] / sqrt(2)
    RY(t)    = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]
    RZ(t)    = diag(exp(-i t/2), exp(i t/2))
    ZZ(p)    = exp(-i p Z(x)Z) = diag(e^-ip, e^ip, e^ip, e^-ip)

The kernels (``_apply_*``) accept arrays whose last axis holds the ``2**n``
amplitudes; any leading axes are treated as a batch of independent states.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError
from .rng import XorShift64Star

MAX_QUBITS = 20

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True)
class Gate:
    """One gate. ``qubits`` is ``(q,)`` or ``(control, target)`` / ``(a, b)``."""

    kind: str
    qubits: tuple
    angle: float = 0.0

    def __post_init__(self):
        if self.kind not in _ARITY:
            raise ConfigurationError(f"unknown gate kind {self.kind!r}")
        if len(self.qubits) != _ARITY[self.kind]:
            raise ConfigurationError(
                f"{self.kind} acts on {_ARITY[self.kind]} qubit(s), got {self.qubits}"
            )
        if len(set(self.qubits)) != len(self.qubits):
            raise ConfigurationError(f"{self.kind} needs distinct qubits, got {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise ConfigurationError(f"negative qubit index in {self.qubits}")

    def inverse(self):
        if self.kind in ("H", "CNOT"):
            return self
        return Gate(self.kind, self.qubits, -self.angle)


_ARITY = {"H": 1, "RY": 1, "RZ": 1, "CNOT": 2, "ZZ": 2}


def H(q):
    return Gate("H", (q,))


def RY(q, angle):
    return Gate("RY", (q,), float(angle))


def RZ(q, angle):
    return Gate("RZ", (q,), float(angle))


def CNOT(control, target):
    return Gate("CNOT", (control, target))


def ZZ(a, b, angle):
    return Gate("ZZ", (a, b), float(angle))


class StateVector:
    """Amplitudes of an ``n_qubits`` register (little-endian)."""

    def __init__(self, amplitudes, n_qubits=None):
        amps = np.asarray(amplitudes, dtype=np.complex128)
        if amps.ndim != 1:
            raise ConfigurationError("amplitudes must be one-dimensional")
        n = int(round(np.log2(amps.size))) if amps.size else -1
        if n < 1 or 2**n != amps.size:
            raise ConfigurationError(f"length {amps.size} is not 2**n for 1 <= n")
        if n_qubits is not None and n_qubits != n:
            raise ConfigurationError(f"{amps.size} amplitudes do not describe {n_qubits} qubits")
        _check_n_qubits(n)
        self.amplitudes = amps
        self.n_qubits = n

    def norm_squared(self):
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def probabilities(self):
        return np.abs(self.amplitudes) ** 2

    def copy(self):
        return StateVector(self.amplitudes.copy())

    def __repr__(self):
        return f"StateVector(n_qubits={self.n_qubits})"


def _check_n_qubits(n):
    if not 1 <= n <= MAX_QUBITS:
        raise ConfigurationError(f"n_qubits must be in [1, {MAX_QUBITS}], got {n}")


def zero_state(n_qubits):
    _check_n_qubits(n_qubits)
    amps = np.zeros(2**n_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(amps)


def _view1(psi, n, q):
    # axes: batch..., high bits, bit q, low bits
    return psi.reshape(psi.shape[:-1] + (2 ** (n - q - 1), 2, 2**q))


def _view2(psi, n, a, b):
    lo, hi = min(a, b), max(a, b)
    shape = (2 ** (n - hi - 1), 2, 2 ** (hi - lo - 1), 2, 2**lo)
    return psi.reshape(psi.shape[:-1] + shape)


def _apply_h(psi, n, q):
    v = _view1(psi, n, q)
    a0, a1 = v[..., 0, :], v[..., 1, :]
    tmp = a0.copy()
    a0 += a1
    a0 *= _INV_SQRT2
    tmp -= a1
    tmp *= _INV_SQRT2
    a1[...] = tmp


def _apply_ry(psi, n, q, angle):
    c, s = np.cos(angle / 2.0), np.sin(angle / 2.0)
    if 1 <= q <= 3:
        # short inner strides are slow elementwise; one small GEMM is not
        block = np.kron(np.array([[c, -s], [s, c]]), np.eye(2**q)).T.astype(complex)
        w = psi.reshape(-1, 2 ** (q + 1))
        w[...] = w @ block
        return
    v = _view1(psi, n, q)
    a0, a1 = v[..., 0, :], v[..., 1, :]
    # in place, one temporary: these kernels dominate training time
    tmp = a0.copy()
    a0 *= c
    a0 -= s * a1
    a1 *= c
    a1 += s * tmp


def _apply_rz(psi, n, q, angle):
    v = _view1(psi, n, q)
    v[..., 0, :] *= np.exp(-0.5j * angle)
    v[..., 1, :] *= np.exp(0.5j * angle)


def _apply_cnot(psi, n, control, target):
    v = _view2(psi, n, control, target)
    # bit of the higher qubit is axis -4, of the lower qubit axis -2
    if control > target:
        tmp = v[..., 1, :, 0, :].copy()
        v[..., 1, :, 0, :] = v[..., 1, :, 1, :]
        v[..., 1, :, 1, :] = tmp
    else:
        tmp = v[..., 0, :, 1, :].copy()
        v[..., 0, :, 1, :] = v[..., 1, :, 1, :]
        v[..., 1, :, 1, :] = tmp


def _apply_zz(psi, n, a, b, angle):
    v = _view2(psi, n, a, b)
    same, diff = np.exp(-1j * angle), np.exp(1j * angle)
    v[..., 0, :, 0, :] *= same
    v[..., 1, :, 1, :] *= same
    v[..., 0, :, 1, :] *= diff
    v[..., 1, :, 0, :] *= diff


def apply_inplace(psi, n, gate):
    """Apply ``gate`` to the raw amplitude array ``psi`` (batched allowed).

    ``psi`` must be C-contiguous complex; the kernels work on reshaped views.
    """
    if not (psi.flags.c_contiguous and psi.dtype == np.complex128):
        raise ConfigurationError("apply_inplace needs a C-contiguous complex128 array")
    if max(gate.qubits) >= n:
        raise ConfigurationError(f"gate {gate.kind}{gate.qubits} exceeds {n} qubits")
    kind = gate.kind
    if kind == "H":
        _apply_h(psi, n, gate.qubits[0])
    elif kind == "RY":
        _apply_ry(psi, n, gate.qubits[0], gate.angle)
    elif kind == "RZ":
        _apply_rz(psi, n, gate.qubits[0], gate.angle)
    elif kind == "CNOT":
        _apply_cnot(psi, n, *gate.qubits)
    else:
        _apply_zz(psi, n, gate.qubits[0], gate.qubits[1], gate.angle)
    return psi


def apply_gate(state, gate):
    """Return a new state with ``gate`` applied; the input is untouched."""
    out = state.amplitudes.copy()
    apply_inplace(out, state.n_qubits, gate)
    return StateVector(out)


def run_circuit(gates, state_or_n):
    """Apply a gate list to a state (or to ``|0...0>`` when given a qubit count)."""
    if isinstance(state_or_n, StateVector):
        out = state_or_n.amplitudes.copy()
        n = state_or_n.n_qubits
    else:
        n = int(state_or_n)
        out = zero_state(n).amplitudes
    for gate in gates:
        apply_inplace(out, n, gate)
    return StateVector(out)


def z_signs(n, qubit):
    """+1/-1 eigenvalue of ``Z_qubit`` for every basis index."""
    bits = (np.arange(2**n) >> qubit) & 1
    return 1.0 - 2.0 * bits


def expectation_z_batch(psi, n, qubit=0):
    if not 0 <= qubit < n:
        raise ConfigurationError(f"qubit {qubit} out of range for {n} qubits")
    v = _view1(psi, n, qubit)
    p = v.real**2 + v.imag**2
    return p[..., 0, :].sum(axis=(-2, -1)) - p[..., 1, :].sum(axis=(-2, -1))


def expectation_z(state, qubit=0):
    """<psi| Z_qubit |psi>, computed exactly from the amplitudes."""
    return float(expectation_z_batch(state.amplitudes, state.n_qubits, qubit))


def sample_z(state, qubit, shots, seed):
    """Shot-based estimate of <Z_qubit> from ``shots`` Born-rule draws."""
    if shots < 1:
        raise ConfigurationError("shots must be >= 1")
    if not 0 <= qubit < state.n_qubits:
        raise ConfigurationError(f"qubit {qubit} out of range for {state.n_qubits} qubits")
    p_one = float(state.probabilities()[z_signs(state.n_qubits, qubit) < 0].sum())
    if p_one <= 0.0:
        return 1.0
    if p_one >= 1.0:
        return -1.0
    rng = XorShift64Star(seed)
    draws = rng.uniform(size=shots)
    minus = int(np.count_nonzero(draws < p_one))
    return (shots - 2 * minus) / shots
