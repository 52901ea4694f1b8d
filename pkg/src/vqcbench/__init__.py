"""Hybrid quantum-classical classification toolkit.

Statevector simulation, ZZ feature map + RealAmplitudes classifier trained
with a from-scratch COBYLA, standardisation + PCA, a logistic baseline,
binary metrics and an experiment harness.
"""

from .errors import (
    ConfigurationError,
    IngestionError,
    OptimizationError,
    TrainingError,
    VqcBenchError,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError",
    "IngestionError",
    "OptimizationError",
    "TrainingError",
    "VqcBenchError",
]
