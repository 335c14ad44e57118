"""Structure-tensor contraction kernels.

Every Jordan operation reduces to contractions against the algebra's
structure tensor C, where e_i o e_j = sum_k C[i,j,k] e_k. These are the
hot loops of the residual sweeps, so they run under numba when available.
Set JORDAN_CONE_NO_NUMBA=1 to force the plain numpy path; the two paths
are exercised against each other in the test suite and the benchmark.
"""
from __future__ import annotations

import os

import numpy as np

_DISABLE_ENV = "JORDAN_CONE_NO_NUMBA"
_disabled = os.environ.get(_DISABLE_ENV, "").strip().lower() in {"1", "true", "yes", "on"}

HAS_NUMBA = False
if not _disabled:
    try:
        from numba import njit

        HAS_NUMBA = True
    except ImportError:
        HAS_NUMBA = False


def _product_np(C: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    # out[k] = sum_ij x_i y_j C[i,j,k]
    return np.tensordot(x, C, axes=(0, 0)).T @ y


def _l_matrix_np(C: np.ndarray, x: np.ndarray) -> np.ndarray:
    # L[k,j] = sum_i x_i C[i,j,k]
    return np.tensordot(x, C, axes=(0, 0)).T


def _u_matrix_np(C: np.ndarray, x: np.ndarray) -> np.ndarray:
    L = _l_matrix_np(C, x)
    x2 = L @ x
    return 2.0 * (L @ L) - _l_matrix_np(C, x2)


def _ub_matrix_np(C: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    Lx = _l_matrix_np(C, x)
    Ly = _l_matrix_np(C, y)
    return Lx @ Ly + Ly @ Lx - _l_matrix_np(C, Lx @ y)


if HAS_NUMBA:

    @njit(cache=True)
    def _product_nb(C, x, y):  # pragma: no cover - exercised via dispatch
        d = C.shape[0]
        out = np.zeros(d)
        for i in range(d):
            xi = x[i]
            if xi == 0.0:
                continue
            for j in range(d):
                w = xi * y[j]
                if w == 0.0:
                    continue
                for k in range(d):
                    out[k] += w * C[i, j, k]
        return out

    @njit(cache=True)
    def _l_matrix_nb(C, x):  # pragma: no cover - exercised via dispatch
        d = C.shape[0]
        M = np.zeros((d, d))
        for i in range(d):
            xi = x[i]
            if xi == 0.0:
                continue
            for j in range(d):
                for k in range(d):
                    M[j, k] += xi * C[i, j, k]
        return M.T.copy()

    @njit(cache=True)
    def _u_matrix_nb(C, x):  # pragma: no cover - exercised via dispatch
        L = _l_matrix_nb(C, x)
        x2 = np.dot(L, x)
        L2 = _l_matrix_nb(C, x2)
        return 2.0 * np.dot(L, L) - L2

    @njit(cache=True)
    def _ub_matrix_nb(C, x, y):  # pragma: no cover - exercised via dispatch
        Lx = _l_matrix_nb(C, x)
        Ly = _l_matrix_nb(C, y)
        Lp = _l_matrix_nb(C, np.dot(Lx, y))
        return np.dot(Lx, Ly) + np.dot(Ly, Lx) - Lp


def backend() -> str:
    """Name of the active kernel backend."""
    return "numba" if HAS_NUMBA else "numpy"


def product(C: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Coordinates of the Jordan product of coordinate vectors x, y."""
    if HAS_NUMBA:
        return _product_nb(C, x, y)
    return _product_np(C, x, y)


def l_matrix(C: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Matrix of left multiplication by x in the fixed basis."""
    if HAS_NUMBA:
        return _l_matrix_nb(C, x)
    return _l_matrix_np(C, x)


def u_matrix(C: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Matrix of the quadratic representation 2*L_x^2 - L_{x*x}."""
    if HAS_NUMBA:
        return _u_matrix_nb(C, x)
    return _u_matrix_np(C, x)


def ub_matrix(C: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Matrix of the bilinear form L_x L_y + L_y L_x - L_{x o y}."""
    if HAS_NUMBA:
        return _ub_matrix_nb(C, x, y)
    return _ub_matrix_np(C, x, y)
