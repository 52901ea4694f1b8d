"""
Training the variational classifier
===================================

Two Gaussian blobs, two qubits, 150 objective evaluations.
"""

import numpy as np

from vqcbench import harness, vqc
from vqcbench.metrics import evaluate
from vqcbench.optim import OptimizerConfig
from vqcbench.preprocess import fit_pca, fit_scaler, transform_pca, transform_scaler

train, test = harness.synth_dataset(500, 2, class_separation=6.0, seed=42)
scaler = fit_scaler(train.X)
pca = fit_pca(transform_scaler(scaler, train.X), 2)
Xtr = transform_pca(pca, transform_scaler(scaler, train.X))
Xte = transform_pca(pca, transform_scaler(scaler, test.X))

# standardised inputs span several units; halving them keeps the
# feature-map phases inside one period
shape = vqc.VqcShape.default(2, feature_reps=2, ansatz_reps=3, input_scale=0.5)
model, log = vqc.train(shape, Xtr, train.y, OptimizerConfig(150), seed=42)

best = log.best_so_far()
for i in (0, 20, 50, 100, log.evaluations - 1):
    print(f"eval {i:>3}: cost {log.cost_history[i][1]:.4f}  best {best[i]:.4f}")

scores = vqc.decision_scores(model, Xte)
counts, s, roc = evaluate(test.y, vqc.labels_from_scores(scores), scores, "lower")
print(f"test accuracy {s.accuracy:.3f}, recall {s.recall:.3f}, AUC {roc.auc:.3f}")
print("p(ransomware) for the first five test rows:", np.round(vqc.ransomware_probability(scores[:5]), 3))

# the same inputs without the scaling factor: the landscape is much harder
plain = vqc.VqcShape.default(2, 2, 3)
model, _ = vqc.train(plain, Xtr, train.y, OptimizerConfig(150), seed=42)
print("input_scale 1.0 accuracy:", np.mean(vqc.labels_from_scores(vqc.decision_scores(model, Xte)) == test.y))

# gradient sizes as the register grows
rng = np.random.default_rng(0)
counts = [2, 4, 6, 8]
X_by_n = {n: rng.normal(size=(16, n)) for n in counts}
y = rng.integers(0, 2, 16)
for n, st in vqc.gradient_norm_probe(counts, X_by_n, y, n_draws=5, ansatz_reps=2).items():
    print(f"{n} qubits: mean |grad| {st['mean_norm']:.4f}, component variance {st['component_variance']:.2e}")
