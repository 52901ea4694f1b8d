"""
Statevector basics
==================

Build small circuits gate by gate and watch the amplitudes move.
"""

import numpy as np

from vqcbench import qsim

# a Bell pair: H on qubit 0, then CNOT 0 -> 1
state = qsim.run_circuit([qsim.H(0), qsim.CNOT(0, 1)], 2)
print("Bell amplitudes:", np.round(state.amplitudes, 4))  # index = q0 + 2*q1
print("probabilities:  ", np.round(state.probabilities(), 4))

# single-qubit rotations: RY(pi/2) takes |0> to |+>, so <Z> drops from 1 to 0
for angle in (0.0, np.pi / 4, np.pi / 2, np.pi):
    psi = qsim.run_circuit([qsim.RY(0, angle)], 1)
    print(f"RY({angle:.3f})  <Z> = {qsim.expectation_z(psi, 0):+.4f}")

# RZ only changes phases, so Z statistics are untouched
psi = qsim.run_circuit([qsim.H(0), qsim.RZ(0, 1.3)], 1)
print("after H, RZ(1.3):", np.round(psi.amplitudes, 4), " <Z> =", round(qsim.expectation_z(psi, 0), 12))

# the ZZ gate is diagonal: exp(-i phi Z x Z)
psi = qsim.run_circuit([qsim.H(0), qsim.H(1), qsim.ZZ(0, 1, 0.4)], 2)
print("ZZ phases:", np.round(np.angle(psi.amplitudes), 4))

# every gate has an inverse, and the norm never drifts
rng = np.random.default_rng(0)
gates = [qsim.RY(int(q), a) for q, a in zip(rng.integers(0, 10, 200), rng.normal(size=200))]
gates += [qsim.CNOT(i, i + 1) for i in range(9)]
psi = qsim.run_circuit(gates, 10)
print("10 qubits, 209 gates, |psi|^2 - 1 =", psi.norm_squared() - 1)
back = qsim.run_circuit([g.inverse() for g in reversed(gates)], psi)
print("undo everything, amplitude of |0...0> =", np.round(back.amplitudes[0], 10))

# finite-shot estimates scatter around the exact value
psi = qsim.run_circuit([qsim.RY(0, 2.0)], 1)
exact = qsim.expectation_z(psi, 0)
for shots in (10, 100, 1000, 10000):
    print(f"{shots:>6} shots: {qsim.sample_z(psi, 0, shots, seed=1):+.4f}  (exact {exact:+.4f})")
