"""
The whole experiment
====================

Synthetic CSVs in, metric tables out, through the same harness the CLI uses.
"""

import os
import tempfile

from vqcbench import harness

work = tempfile.mkdtemp(prefix="vqcbench-demo-")
train, test = harness.synth_dataset(400, 6, class_separation=3.0, seed=42)
harness.write_csv(train, os.path.join(work, "train.csv"))
harness.write_csv(test, os.path.join(work, "test.csv"))

config = harness.RunConfig(
    train_path=os.path.join(work, "train.csv"),
    test_path=os.path.join(work, "test.csv"),
    qubit_counts=[2, 4],
    budgets=[60, 60],
    input_scale=0.5,
    output_dir=os.path.join(work, "results"),
)
report = harness.run(config)
paths = harness.emit_report(report, config.output_dir)

for row in report["metrics"]:
    print(f"{row['model']:<22} recall {row['recall']:.3f}  accuracy {row['accuracy']:.3f}  AUC {row['auc']:.3f}")
for p in report["recall_vs_qubits"]:
    print(f"{p['n_qubits']} qubits keep {p['cumulative_variance_pct']:.1f}% of the variance")
print("files:", sorted(os.path.basename(p) for p in paths))
print("written to", config.output_dir)
