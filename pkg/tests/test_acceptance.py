"""Acceptance gate. Each test checks one criterion at its stated tolerance
and runtime limit and records a PASS/FAIL line for the terminal summary."""

import os
import subprocess
import sys
import time

import numpy as np
import pytest
from scipy.optimize import minimize, rosen

import oracles
from conftest import ACCEPTANCE
from test_qsim import random_gate
from vqcbench import harness, metrics, preprocess, qsim, vqc
from vqcbench.optim import OptimizerConfig, cobyla_minimize


def record(name, ok, detail):
    ACCEPTANCE.append((name, bool(ok), detail))
    print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    assert ok, detail


def test_simulator_oracle():
    rng = np.random.default_rng(1000)
    t0 = time.perf_counter()
    worst = 0.0
    for i in range(1000):
        n = 1 + i % 3
        gates = [random_gate(rng, n) for _ in range(rng.integers(1, 21))]
        v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
        start = qsim.StateVector(v / np.linalg.norm(v))
        got = qsim.run_circuit(gates, start).amplitudes
        want = oracles.circuit_matrix(gates, n) @ start.amplitudes
        worst = max(worst, np.max(np.abs(got - want)))
    dt = time.perf_counter() - t0
    record("simulator oracle", worst < 1e-12 and dt < 30, f"max deviation {worst:.1e} in {dt:.1f}s")


@pytest.mark.slow
def test_norm_conservation():
    rng = np.random.default_rng(12)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(10_000):
        psi = qsim.zero_state(12).amplitudes
        for _ in range(rng.integers(1, 101)):
            qsim.apply_inplace(psi, 12, random_gate(rng, 12))
        worst = max(worst, abs(np.vdot(psi, psi).real - 1))
    dt = time.perf_counter() - t0
    record("norm conservation", worst < 1e-9 and dt < 120, f"max |norm^2 - 1| {worst:.1e} in {dt:.1f}s")


def test_gradient_cross_check():
    rng = np.random.default_rng(20)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(20):
        shape = vqc.VqcShape.default(2, int(rng.integers(1, 3)), int(rng.integers(1, 4)))
        theta = rng.uniform(-np.pi, np.pi, shape.parameter_count)
        X, y = rng.normal(size=(10, 2)), rng.integers(0, 2, 10)
        ps = vqc.parameter_shift_gradient(shape, theta, X, y)
        fd = vqc.finite_difference_gradient(shape, theta, X, y, 1e-4)
        worst = max(worst, np.max(np.abs(ps - fd)))
    dt = time.perf_counter() - t0
    record("gradient cross-check", worst < 1e-4 and dt < 60, f"max deviation {worst:.1e} in {dt:.1f}s")


def test_cobyla_convergence():
    t0 = time.perf_counter()
    details, ok = [], True
    for d in (2, 4, 8):
        rng = np.random.default_rng(d)
        Q, _ = np.linalg.qr(rng.normal(size=(d, d)))
        A = Q @ np.diag(np.logspace(0, 1, d)) @ Q.T
        x_star = rng.uniform(-1, 1, d)
        f = lambda x: float((x - x_star) @ A @ (x - x_star))
        res = cobyla_minimize(f, np.zeros(d), OptimizerConfig(500 * d, rho_end=1e-8))
        dist = np.max(np.abs(res.best_point - x_star))
        ok &= dist < 1e-6 and res.evaluations_used <= 500 * d
        details.append(f"d={d} |x-x*|={dist:.1e} ({res.evaluations_used} evals)")
    res = cobyla_minimize(rosen, [-1.2, 1.0], OptimizerConfig(2000, rho_end=1e-8))
    ref = minimize(rosen, [-1.2, 1.0], method="COBYLA", options={"maxiter": 2000, "rhobeg": 1.0})
    ok &= res.best_value < 1e-2
    details.append(f"rosenbrock {res.best_value:.1e} (reference {ref.fun:.1e})")
    dt = time.perf_counter() - t0
    record("COBYLA convergence", ok and dt < 10, "; ".join(details) + f" in {dt:.1f}s")


def test_pca_correctness():
    rng = np.random.default_rng(50)
    t0 = time.perf_counter()
    eig = ortho = recon = 0.0
    monotone = True
    for D in (2, 5, 10, 25, 50):
        X = rng.normal(size=(3 * D, D)) @ rng.normal(size=(D, D))
        m = preprocess.fit_pca(X, D)
        Xc = X - X.mean(0)
        evals = np.sort(np.linalg.eigvalsh(Xc.T @ Xc / (len(X) - 1)))[::-1]
        eig = max(eig, np.max(np.abs(m.explained_variance - evals) / evals[0]))
        ortho = max(ortho, np.max(np.abs(m.components.T @ m.components - np.eye(D))))
        back = preprocess.transform_pca(m, X) @ m.components.T + m.mean
        recon = max(recon, np.max(np.abs(back - X)) / np.max(np.abs(X)))
        cum = [c for _, c in preprocess.cumulative_variance_report(m)]
        monotone &= bool(np.all(np.diff(cum) >= 0) and cum[-1] <= 100 + 1e-9)
    dt = time.perf_counter() - t0
    ok = eig < 1e-8 and ortho < 1e-8 and recon < 1e-8 and monotone and dt < 10
    record("PCA correctness", ok, f"eigen {eig:.1e}, orthonormality {ortho:.1e}, reconstruction {recon:.1e}, monotone {monotone} in {dt:.1f}s")


def test_metrics_correctness():
    rng = np.random.default_rng(200)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(200):
        N = int(rng.integers(2, 201))
        y = rng.integers(0, 2, N)
        y[:2] = [0, 1]
        s = np.round(rng.normal(size=N), 1)
        worst = max(worst, abs(metrics.roc_auc(y, s).auc - oracles.auc_pairs(y, s)))
    s = metrics.summary(metrics.confusion([1, 1, 1, 0, 0], [1, 1, 0, 1, 0]))
    exact = s.precision == s.recall == s.f1 == 2 / 3
    dt = time.perf_counter() - t0
    record("metrics correctness", worst < 1e-12 and exact and dt < 5, f"AUC deviation {worst:.1e}, confusion example exact {exact} in {dt:.1f}s")


@pytest.mark.slow
def test_end_to_end_trainability():
    t0 = time.perf_counter()
    train, test = harness.synth_dataset(500, 2, 6.0, seed=42)
    config = harness.RunConfig(qubit_counts=[2], budgets=[150], input_scale=0.5)
    classical = harness.run_classical_stage(config, train, test)
    entry = harness.run_hybrid_stage(config, train, test)["entries"][0]
    acc_vqc = entry["row"]["accuracy"]
    acc_log = classical["rows"][0]["accuracy"]
    monotone = bool(np.all(np.diff(np.minimum.accumulate(entry["cost_history"])) <= 0))
    dt = time.perf_counter() - t0
    ok = acc_vqc >= 0.85 and monotone and acc_log >= 0.99 and dt < 300
    record("end-to-end trainability", ok, f"VQC accuracy {acc_vqc:.4f}, logistic {acc_log:.4f}, best-so-far monotone {monotone} in {dt:.1f}s")


@pytest.mark.slow
def test_determinism(tmp_path):
    t0 = time.perf_counter()
    data = tmp_path / "data"
    cmd = [sys.executable, "-m", "vqcbench.cli"]
    subprocess.run(cmd + ["synth", "--out", str(data), "--features", "12", "--seed", "42"], check=True)
    outs = []
    for tag in ("a", "b"):
        subprocess.run(
            cmd + ["run", "--train", str(data / "train.csv"), "--test", str(data / "test.csv"),
                   "--seed", "42", "--out", str(tmp_path / tag)],
            check=True, capture_output=True,
        )
        outs.append({p.name: p.read_bytes() for p in sorted((tmp_path / tag).glob("*.csv"))})
    dt = time.perf_counter() - t0
    same = outs[0] == outs[1] and len(outs[0]) > 0
    record("determinism", same and dt < 600, f"{len(outs[0])} CSV files byte-identical {same} in {dt:.1f}s")


DATASET_DIR = os.environ.get("VQCBENCH_DATASET_DIR")


@pytest.mark.slow
@pytest.mark.skipif(not DATASET_DIR, reason="set VQCBENCH_DATASET_DIR to a folder with train.csv and test.csv")
def test_reference_dataset(tmp_path):
    train, test = harness.ingest_csv(os.path.join(DATASET_DIR, "train.csv"), os.path.join(DATASET_DIR, "test.csv"))
    Z = preprocess.transform_scaler(preprocess.fit_scaler(train.X), train.X)
    cum = dict(preprocess.cumulative_variance_report(preprocess.fit_pca(Z, 12)))
    var_ok = all(abs(cum[k] - v) <= 0.05 for k, v in [(4, 19.14), (8, 29.07), (12, 35.50)])
    config = harness.RunConfig(output_dir=str(tmp_path))
    recall = harness.run_classical_stage(config, train, test)["rows"][0]["recall"] * 100
    report = harness.build_report(config, train, test, hybrid=harness.run_hybrid_stage(config, train, test))
    series = [r["n_qubits"] for r in report["recall_vs_qubits"]] == [4, 8, 12]
    histories = all(str(n) in report["cost_histories"] for n in (4, 8, 12))
    ok = var_ok and abs(recall - 97.66) <= 0.5 and series and histories
    detail = f"cumulative variance {cum[4]:.2f}/{cum[8]:.2f}/{cum[12]:.2f}%, logistic recall {recall:.2f}%, sweep complete {series and histories}"
    record("reference dataset", ok, detail)
