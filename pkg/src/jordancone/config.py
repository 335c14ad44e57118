"""Numerical tolerance policy.

A single global tolerance (default 1e-9) governs all residual tests; it is
scaled by operand norms at each use site. Two derived thresholds are fixed
relative policies: eigenvalue cluster merging and the invertibility cutoff.
The JORDAN_CONE_TOL environment variable overrides the default.
"""
from __future__ import annotations

import os

DEFAULT_TOL = 1e-9
ENV_TOL_VAR = "JORDAN_CONE_TOL"

# eigenvalues closer than CLUSTER_REL * max(1, |x|) merge into one idempotent
CLUSTER_REL = 1e-7
# x counts as invertible iff min|sigma(x)| > INVERT_REL * max(1, |x|)
INVERT_REL = 1e-8


def default_tol() -> float:
    """Resolve the ambient tolerance: JORDAN_CONE_TOL if set, else 1e-9."""
    raw = os.environ.get(ENV_TOL_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_TOL
    try:
        value = float(raw)
    except ValueError:
        raise ValueError(f"{ENV_TOL_VAR} is not a number: {raw!r}") from None
    if not value > 0.0:
        raise ValueError(f"{ENV_TOL_VAR} must be positive, got {value!r}")
    return value


def resolve_tol(tol: float | None) -> float:
    """An explicit tolerance wins; None falls back to the ambient default."""
    if tol is None:
        return default_tol()
    return float(tol)


def cluster_width(norm: float) -> float:
    return CLUSTER_REL * max(1.0, float(norm))


def invert_cutoff(norm: float) -> float:
    return INVERT_REL * max(1.0, float(norm))
