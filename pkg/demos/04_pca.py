"""
Standardise, then project
=========================

Wide feature tables get squeezed down to one feature per qubit.
"""

import numpy as np

from vqcbench.preprocess import cumulative_variance_report, fit_pca, fit_scaler, transform_pca, transform_scaler

rng = np.random.default_rng(7)
# 300 rows, 40 correlated features driven by 5 latent factors, plus noise and one dead column
latent = rng.normal(size=(300, 5))
X = latent @ rng.normal(size=(5, 40)) + 0.3 * rng.normal(size=(300, 40))
X[:, 13] = 4.2
train, test = X[:240], X[240:]

scaler = fit_scaler(train)  # statistics come from the training rows only
print("constant columns:", np.flatnonzero(scaler.zero_variance).tolist())
Ztr, Zte = transform_scaler(scaler, train), transform_scaler(scaler, test)

pca = fit_pca(Ztr, 12)
for k, pct in cumulative_variance_report(pca):
    if k in (1, 2, 4, 5, 8, 12):
        print(f"{k:>2} components keep {pct:6.2f}% of the variance")

P = transform_pca(pca, Zte)
print("projected test block:", P.shape)
print("components are orthonormal:", np.allclose(pca.components.T @ pca.components, np.eye(12)))

# more columns than rows: the Gram route gives the same axes
wide = rng.normal(size=(20, 200))
a, b = fit_pca(wide, 4, "covariance"), fit_pca(wide, 4, "gram")
print("Gram and covariance routes agree:", np.allclose(a.components, b.components, atol=1e-8))
