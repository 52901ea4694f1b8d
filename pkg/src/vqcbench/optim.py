"""Derivative-free minimisation by linear approximation (unconstrained COBYLA).

The optimiser keeps ``d + 1`` interpolation points (a simplex) and the
linear model that interpolates the objective on them. Each iteration either

* takes a trust-region step ``-delta * g / |g|`` on the linear model,
* repairs the simplex geometry when it has become too flat or too stretched,
* or, once the trust radius has hit the resolution ``rho`` and steps stop
  paying off, halves ``rho``.

``rho`` only decreases (from ``rho_begin`` down to ``rho_end``). The trust
radius ``delta`` never drops below ``rho``; it doubles after steps whose actual
reduction is close to the predicted one, which lets the method travel along
curved valleys instead of crawling at the resolution scale.

Without constraints the constraint-merit machinery of the original method is
not needed, so it is omitted.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, OptimizationError
from .rng import XorShift64Star

# simplex acceptability: face distance >= ALPHA * delta, edge <= BETA * delta
ALPHA = 0.25
BETA = 2.1
# geometry-step length as a fraction of delta
GAMMA = 0.5
# trust-region ratio thresholds
ETA_BAD = 0.1
ETA_GOOD = 0.7
# a simplex with cond(D) above this is treated as rank deficient
MAX_COND = 1e12


@dataclass(frozen=True)
class OptimizerConfig:
    max_evaluations: int = 100
    rho_begin: float = 1.0
    rho_end: float = 1e-4
    seed: int = 42
    max_radius: float = None

    def __post_init__(self):
        if self.max_evaluations < 1:
            raise ConfigurationError("max_evaluations must be >= 1")
        if not (0 < self.rho_end < self.rho_begin):
            raise ConfigurationError("need 0 < rho_end < rho_begin")
        if self.max_radius is not None and self.max_radius < self.rho_begin:
            raise ConfigurationError("max_radius must be >= rho_begin")


@dataclass
class OptimResult:
    best_point: np.ndarray
    best_value: float
    evaluations_used: int
    history: list = field(default_factory=list)
    termination: str = "budget_exhausted"


class _BudgetExhausted(Exception):
    pass


class _Evaluator:
    def __init__(self, objective, budget):
        self.objective = objective
        self.budget = budget
        self.history = []
        self.best_x = None
        self.best_f = np.inf

    def __call__(self, x):
        if len(self.history) >= self.budget:
            raise _BudgetExhausted
        f = float(self.objective(x.copy()))
        if not np.isfinite(f):
            raise OptimizationError(
                f"objective returned {f} at evaluation {len(self.history)}", point=x.copy()
            )
        self.history.append((len(self.history), f))
        if f < self.best_f:
            self.best_f = f
            self.best_x = x.copy()
        return f


def cobyla_minimize(objective, start, config=None):
    """Minimise ``objective`` from ``start`` within ``config.max_evaluations`` calls."""
    config = config or OptimizerConfig()
    x0 = np.array(start, dtype=float).ravel()
    d = x0.size
    if d < 1:
        raise ConfigurationError("need at least one variable")
    evaluate = _Evaluator(objective, config.max_evaluations)
    termination = "budget_exhausted"
    try:
        termination = _run(evaluate, x0, config)
    except _BudgetExhausted:
        pass
    return OptimResult(
        best_point=evaluate.best_x,
        best_value=evaluate.best_f,
        evaluations_used=len(evaluate.history),
        history=evaluate.history,
        termination=termination,
    )


def _run(evaluate, x0, config):
    d = x0.size
    rho = config.rho_begin
    delta = rho
    max_radius = config.max_radius or config.rho_begin

    pts = np.empty((d + 1, d))
    fv = np.empty(d + 1)
    pts[0] = x0
    fv[0] = evaluate(x0)
    for i in range(d):
        pts[i + 1] = x0
        pts[i + 1, i] += rho
        fv[i + 1] = evaluate(pts[i + 1])

    while True:
        b = int(np.argmin(fv))
        xb = pts[b]
        others = [j for j in range(d + 1) if j != b]
        D = pts[others] - xb

        sv = np.linalg.svd(D, compute_uv=False)
        if sv[-1] <= sv[0] / MAX_COND:
            _repair_degenerate(evaluate, pts, fv, b, others, D, rho)
            continue

        Dinv = np.linalg.inv(D)
        g = Dinv @ (fv[others] - fv[b])
        gnorm = np.linalg.norm(g)

        if gnorm > 0.0:
            step = -delta * g / gnorm
            predicted = delta * gnorm
            x_new = xb + step
            f_new = evaluate(x_new)
            ratio = (fv[b] - f_new) / predicted
            _replace_vertex(pts, fv, b, others, Dinv, x_new, f_new, delta)
            if ratio >= ETA_BAD:
                if ratio >= ETA_GOOD:
                    delta = min(2.0 * delta, max_radius)
                continue
        delta = max(0.5 * delta, rho)

        # step failed: fix the simplex before trusting the model again
        b = int(np.argmin(fv))
        xb = pts[b]
        others = [j for j in range(d + 1) if j != b]
        D = pts[others] - xb
        sv = np.linalg.svd(D, compute_uv=False)
        if sv[-1] <= sv[0] / MAX_COND:
            _repair_degenerate(evaluate, pts, fv, b, others, D, rho)
            continue
        Dinv = np.linalg.inv(D)
        if _improve_geometry(evaluate, pts, fv, b, others, D, Dinv, delta):
            continue
        if delta > rho:
            continue
        if rho <= config.rho_end:
            return "rho_converged"
        rho = 0.5 * rho
        if rho <= 1.5 * config.rho_end:
            rho = config.rho_end
        delta = max(0.5 * delta, rho)


def _replace_vertex(pts, fv, b, others, Dinv, x_new, f_new, delta):
    # barycentric weights of the step: s = sum_j t_j (x_j - x_b)
    t = Dinv.T @ (x_new - pts[b])
    volume = np.empty(len(fv))
    volume[others] = np.abs(t)
    volume[b] = abs(1.0 - t.sum()) if f_new < fv[b] else -np.inf
    dist = np.linalg.norm(pts - x_new, axis=1)
    score = volume * np.maximum(1.0, dist / delta) ** 2
    j = int(np.argmax(score))
    pts[j] = x_new
    fv[j] = f_new


def _improve_geometry(evaluate, pts, fv, b, others, D, Dinv, delta):
    """Replace one badly placed vertex. Returns False if the simplex is fine."""
    edge = np.linalg.norm(D, axis=1)
    face = 1.0 / np.linalg.norm(Dinv, axis=0)
    g = Dinv @ (fv[others] - fv[b])
    if edge.max() > BETA * delta:
        k = int(np.argmax(edge))
    elif face.min() < ALPHA * delta:
        k = int(np.argmin(face))
    else:
        return False
    normal = Dinv[:, k] / np.linalg.norm(Dinv[:, k])
    if g @ normal > 0.0:
        normal = -normal
    x_new = pts[b] + GAMMA * delta * normal
    j = others[k]
    pts[j] = x_new
    fv[j] = evaluate(x_new)
    return True


def _repair_degenerate(evaluate, pts, fv, b, others, D, rho):
    """Affinely dependent simplex: move the worst vertex along the missing direction."""
    _, _, vt = np.linalg.svd(D)
    direction = vt[-1]
    worst = others[int(np.argmax(fv[others]))]
    x_new = pts[b] + rho * direction
    pts[worst] = x_new
    fv[worst] = evaluate(x_new)


def random_init(dimension, low, high, seed):
    """Seeded uniform draws in ``[low, high)`` from the package PRNG."""
    if not low < high:
        raise ConfigurationError("random_init needs low < high")
    return XorShift64Star(seed).uniform(low, high, size=int(dimension))
