"""
Derivative-free minimisation
============================

COBYLA builds a linear model from d + 1 points and steps inside a trust
region. Only function values are used.
"""

import numpy as np

from vqcbench.optim import OptimizerConfig, cobyla_minimize


def rosen(x):
    return 100.0 * (x[1] - x[0] ** 2) ** 2 + (1.0 - x[0]) ** 2

res = cobyla_minimize(lambda x: (x[0] - 1) ** 2 + (x[1] + 2) ** 2, [0.0, 0.0], OptimizerConfig(200))
print("quadratic bowl:", np.round(res.best_point, 6), f"after {res.evaluations_used} evaluations ({res.termination})")

res = cobyla_minimize(rosen, [-1.2, 1.0], OptimizerConfig(2000, rho_end=1e-8))
print(f"Rosenbrock: f = {res.best_value:.2e} at {np.round(res.best_point, 4)}")

# the history holds every evaluation; the best-so-far curve is what training logs show
values = np.array([v for _, v in res.history])
best = np.minimum.accumulate(values)
for i in (0, 10, 100, 500, 1000, len(best) - 1):
    print(f"  eval {i:>4}: best so far {best[i]:.3e}")

# a tight budget simply stops early and returns the best point seen
res = cobyla_minimize(rosen, [-1.2, 1.0], OptimizerConfig(25))
print("25-evaluation budget:", res.termination, f"best {res.best_value:.3f}")
