"""
Encoding data and the trainable circuit
=======================================

The classifier is a ZZ feature map followed by a RealAmplitudes ansatz.
"""

import numpy as np

from vqcbench import qsim
from vqcbench.circuits import AnsatzSpec, FeatureMapSpec, build_ansatz, build_feature_map, encode_batch

fmap = FeatureMapSpec(n_qubits=3, reps=2)
x = np.array([0.3, -0.7, 1.1])
gates = build_feature_map(fmap, x)
print(f"feature map on 3 qubits, 2 reps: {len(gates)} gates")
for g in gates[:7]:
    print("  ", g.kind, g.qubits, None if g.angle is None else round(g.angle, 4))

# two conventions for the pair phase
for conv in ("paper", "standard"):
    spec = FeatureMapSpec(2, reps=1, phase_convention=conv)
    zz = [g for g in build_feature_map(spec, [0.5, -0.5]) if g.kind == "ZZ"][0]
    print(f"{conv:>8} convention: ZZ angle for x=(0.5, -0.5) is {zz.angle:.4f}")

# encoding is theta-independent, so a whole batch can be encoded once
X = np.random.default_rng(0).normal(size=(5, 3))
states = encode_batch(fmap, X)
print("batch of encoded states:", states.shape, "norms", np.round(np.sum(abs(states) ** 2, 1), 12))

# the ansatz: RY layer, CNOT chain, repeated, then a final RY layer
ans = AnsatzSpec(n_qubits=3, reps=3)
print("ansatz parameters:", ans.parameter_count)
theta = np.zeros(ans.parameter_count)
print("zero parameters leave |000> alone:", np.allclose(qsim.run_circuit(build_ansatz(ans, theta), 3).amplitudes[0], 1))

# the score: <Z> on qubit 0 after both blocks
theta = np.random.default_rng(1).uniform(-np.pi, np.pi, ans.parameter_count)
psi = qsim.run_circuit(build_feature_map(fmap, x) + build_ansatz(ans, theta), 3)
print("decision score <Z_0> =", round(qsim.expectation_z(psi, 0), 6))
