"""srlboard: clickstream-to-SRL-profile analytics with a dashboard service.

Offline: parse LMS clickstream logs, compute weekly behavior features for
five self-regulated-learning dimensions, cluster students per dimension
(DTW distances + spectral clustering) and across dimensions (k-modes),
and render everything into precomputed, servable content bundles.

Online: a small HTTP service hands those bundles to a dashboard UI and
collects the dashboard's own usage telemetry.
"""

from srlboard._kernels import BACKEND as DTW_BACKEND

__version__ = "0.1.0"

__all__ = ["DTW_BACKEND", "__version__"]
