import numpy as np
import pytest
from scipy.optimize import rosen

from vqcbench.errors import ConfigurationError, OptimizationError
from vqcbench.optim import OptimizerConfig, cobyla_minimize, random_init


def quad(x):
    return (x[0] - 1) ** 2 + (x[1] + 2) ** 2


def test_simple_quadratic():
    res = cobyla_minimize(quad, [0.0, 0.0], OptimizerConfig(200))
    assert np.max(np.abs(res.best_point - [1, -2])) < 1e-3
    assert res.evaluations_used <= 200


@pytest.mark.parametrize("d", [2, 4, 8])
def test_ill_conditioned_quadratics(d):
    rng = np.random.default_rng(d)
    Q, _ = np.linalg.qr(rng.normal(size=(d, d)))
    A = Q @ np.diag(np.logspace(0, 2, d)) @ Q.T
    x_star = rng.uniform(-1, 1, d)
    f = lambda x: float((x - x_star) @ A @ (x - x_star))
    res = cobyla_minimize(f, np.zeros(d), OptimizerConfig(500 * d, rho_end=1e-8))
    assert res.evaluations_used <= 500 * d
    assert res.best_value < 1e-6


def test_rosenbrock_beats_reference():
    res = cobyla_minimize(rosen, [-1.2, 1.0], OptimizerConfig(2000, rho_end=1e-8))
    assert res.best_value < 1e-2


def test_constant_objective_returns_start():
    start = np.array([0.3, -0.4, 2.0])
    res = cobyla_minimize(lambda x: 5.0, start, OptimizerConfig(100))
    np.testing.assert_array_equal(res.best_point, start)
    assert res.best_value == 5.0
    assert res.termination in ("rho_converged", "budget_exhausted")


@pytest.mark.parametrize("budget", [1, 2, 3, 7, 50])
def test_budget_and_history(budget):
    res = cobyla_minimize(rosen, [-1.2, 1.0], OptimizerConfig(budget))
    assert res.evaluations_used == len(res.history) <= budget
    assert [i for i, _ in res.history] == list(range(res.evaluations_used))
    assert res.best_value == min(v for _, v in res.history)
    assert rosen(res.best_point) == res.best_value


def test_deterministic():
    a = cobyla_minimize(rosen, [-1.2, 1.0], OptimizerConfig(300))
    b = cobyla_minimize(rosen, [-1.2, 1.0], OptimizerConfig(300))
    assert a.history == b.history
    assert np.array_equal(a.best_point, b.best_point)


def test_one_dimension():
    res = cobyla_minimize(lambda x: (x[0] - 3.5) ** 2, [0.0], OptimizerConfig(100))
    assert abs(res.best_point[0] - 3.5) < 1e-3


def test_non_finite_value():
    def f(x):
        return float("nan") if x[0] > 0.5 else float(x @ x)

    with pytest.raises(OptimizationError) as info:
        cobyla_minimize(f, [0.0, 0.0], OptimizerConfig(100))
    assert info.value.point[0] > 0.5


def test_degenerate_directions_still_converge():
    # objective ignores the second coordinate; the simplex must not collapse
    res = cobyla_minimize(lambda x: (x[0] - 2) ** 2 + 0 * x[1], [0.0, 0.0], OptimizerConfig(200))
    assert abs(res.best_point[0] - 2) < 1e-3


def test_random_init_reference():
    np.testing.assert_array_equal(
        random_init(2, -np.pi, np.pi, 42), [-1.9219892045024045, 0.39352737683715766]
    )
    x = random_init(1000, -1, 2, 7)
    assert x.min() >= -1 and x.max() < 2


@pytest.mark.parametrize(
    "kw", [dict(max_evaluations=0), dict(rho_begin=1e-5), dict(rho_end=-1), dict(max_radius=0.5)]
)
def test_bad_config(kw):
    with pytest.raises(ConfigurationError):
        OptimizerConfig(**kw)


def test_empty_start():
    with pytest.raises(ConfigurationError):
        cobyla_minimize(quad, [], OptimizerConfig())
