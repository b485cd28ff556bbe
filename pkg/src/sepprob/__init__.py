"""Separability/PPT probabilities of qubit-qudit states.

Exact evaluation of the closed-form volume and probability catalog, Monte
Carlo estimation of PPT probabilities under Hilbert-Schmidt and induced
measures, and deterministic quadrature for the chi-function framework and
its induced-measure extension.
"""

__version__ = "0.1.0"

from . import criteria, exactmath, harness, hyper, linalg, quadrature, sampling

__all__ = [
    "__version__",
    "criteria",
    "exactmath",
    "harness",
    "hyper",
    "linalg",
    "quadrature",
    "sampling",
]
