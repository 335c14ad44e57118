"""Hermitian-matrix specialization of the structure-group machinery.

Over V = Herm(n) every cone-preserving structure-group member is a
congruence A -> TAT* (or A -> T conj(A) T* in the antiunitary component),
with T unique up to a phase. This module recovers T, classifies the two
automorphism components, lifts an automorphism near the identity to an
explicit unitary e^Z W, identifies derivations with commutators by a
skew-hermitian matrix, and writes Lie-algebra members as A -> TA + AT*.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .algebra import (VOperator, U_op, from_matrix, herm_complex,
                      op_from_matrix_map, op_inverse, to_matrix, unit)
from .config import resolve_tol
from .cone import in_cone
from .errors import (Inconsistent, InconsistentSolve, LiftFailure,
                     NotAutomorphism, NotConePreserving, NotDerivation,
                     OutOfNeighborhood, SingularMatrix, UndecidableWitness)
from .spectral import apply_function
from .structure import as_str_element, is_automorphism, lie_split, str_lie_residual


class AutComponent(enum.Enum):
    UNITARY = "unitary_component"
    ANTIUNITARY = "antiunitary_component"


class StrComponent(enum.Enum):
    PLUS = "plus"
    MINUS = "minus"


@dataclass(frozen=True, eq=False)
class ImplementingMap:
    """T implementing a congruence A -> TAT* (conj(A) instead when flagged)."""

    T: np.ndarray
    conjugate_flag: bool
    phase_normalized: bool


@dataclass(frozen=True, eq=False)
class AutLift:
    """Explicit lift of an automorphism: s = e^Z W implements it by
    congruence, composed with entrywise conjugation when conjugated is set."""

    Z: np.ndarray
    W: np.ndarray
    s: np.ndarray
    xi_index: int
    conjugated: bool


def congruence_op(T: np.ndarray, conjugate_flag: bool = False) -> VOperator:
    """The operator A -> T A T* on Herm(n), or A -> T conj(A) T* if flagged."""
    T = np.asarray(T, dtype=complex)
    n = T.shape[0]
    if T.shape != (n, n):
        raise ValueError(f"need a square matrix, got shape {T.shape}")
    sv = np.linalg.svd(T, compute_uv=False)
    if sv[-1] <= 1e-12 * max(1.0, sv[0]):
        raise SingularMatrix(
            f"congruence matrix has smallest singular value {sv[-1]:.3g}")
    alg = herm_complex(n)
    Th = T.conj().T
    if conjugate_flag:
        return op_from_matrix_map(alg, lambda B: T @ B.conj() @ Th)
    return op_from_matrix_map(alg, lambda B: T @ B @ Th)


def j_op(n: int) -> VOperator:
    """The transpose map A -> A^T: conjugation in the standard basis."""
    return congruence_op(np.eye(n), conjugate_flag=True)


def k_complex(k: VOperator):
    """Complex-linear extension of an operator on Herm(n) to all of M_n."""
    alg = k.algebra
    if alg.kind != "herm":
        raise ValueError("complex extension needs a Herm(n) operator")

    def kc(X: np.ndarray) -> np.ndarray:
        H1 = (X + X.conj().T) / 2.0
        H2 = (X - X.conj().T) / 2j
        out1 = to_matrix(k(from_matrix(alg, H1)))
        out2 = to_matrix(k(from_matrix(alg, H2)))
        return out1 + 1j * out2

    return kc


def aut_component(k: VOperator, tol: float | None = None,
                  seed: int = 0) -> AutComponent:
    """Classify an automorphism as unitary or antiunitary.

    The complex-linear extension either preserves or reverses matrix
    products; a non-commuting witness pair separates the two cases.
    """
    if not is_automorphism(k, tol, seed):
        raise NotAutomorphism("operator is not an automorphism")
    n = k.algebra.n
    if n == 1:
        return AutComponent.UNITARY
    kc = k_complex(k)
    rng = np.random.default_rng([43, int(seed)])
    limit = np.sqrt(resolve_tol(tol))
    for _ in range(8):
        A = _random_hermitian(rng, n)
        B = _random_hermitian(rng, n)
        scale = np.linalg.norm(A) * np.linalg.norm(B)
        if np.linalg.norm(A @ B - B @ A) <= 1e-3 * scale:
            continue
        kAB = kc(A @ B)
        kA, kB = kc(A), kc(B)
        direct = np.linalg.norm(kAB - kA @ kB) / scale
        reversed_ = np.linalg.norm(kAB - kB @ kA) / scale
        if direct <= limit < reversed_:
            return AutComponent.UNITARY
        if reversed_ <= limit < direct:
            return AutComponent.ANTIUNITARY
    raise UndecidableWitness(f"no separating witness pair found on Herm({n})")


def _random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    M = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (M + M.conj().T) / 2.0


def _principal_log_unitary(u: np.ndarray, guard: float = 1e-6) -> np.ndarray:
    """Principal logarithm of a unitary matrix; the spectrum must avoid -1."""
    T, Q = scipy.linalg.schur(u, output="complex")
    eigs = np.diag(T)
    if np.abs(eigs + 1.0).min() <= guard:
        raise OutOfNeighborhood(
            "rotation spectrum touches -1; the principal logarithm is undefined "
            "(image of the base projection is too far from the original)")
    L = Q @ np.diag(np.log(eigs)) @ Q.conj().T
    return (L - L.conj().T) / 2.0


def lift_automorphism(k: VOperator, xi_index: int = 0,
                      tol: float | None = None, seed: int = 0) -> AutLift:
    """Lift an automorphism to a unitary s = e^Z W implementing it.

    Z is half the principal log of eps_{k(p)} eps_p for the rank-one
    projection p at the chosen basis vector; W moves each column through
    the complex extension of k. Antiunitary-component inputs are composed
    with the transpose map first and the conjugation is recorded.
    """
    comp = aut_component(k, tol, seed)
    n = k.algebra.n
    if not 0 <= xi_index < n:
        raise ValueError(f"xi_index must lie in [0, {n}), got {xi_index}")
    conjugated = comp is AutComponent.ANTIUNITARY
    k_lin = (j_op(n) @ k) if conjugated else k
    Z, W, s = _lift_linear(k_lin, xi_index)
    wdev = np.linalg.norm(W.conj().T @ W - np.eye(n))
    reproduced = (j_op(n) @ congruence_op(s)) if conjugated else congruence_op(s)
    dev = np.linalg.norm(reproduced.matrix - k.matrix) / max(1.0, k.norm())
    limit = np.sqrt(resolve_tol(tol))
    if wdev > limit or dev > limit:
        far = np.linalg.norm(k_lin.matrix - np.eye(k.algebra.dim), 2)
        if far >= 1.0:
            raise OutOfNeighborhood(
                f"automorphism is {far:.3g} from the component base point; "
                "precompose with a known congruence and retry")
        raise LiftFailure(
            f"lift verification failed (W unitary gap {wdev:.3g}, "
            f"reproduction gap {dev:.3g})")
    return AutLift(Z, W, s, xi_index, conjugated)


def _lift_linear(k_lin: VOperator, xi_index: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Z, W, s for a unitary-component automorphism; may raise OutOfNeighborhood."""
    alg = k_lin.algebra
    n = alg.n
    xi = np.zeros(n, dtype=complex)
    xi[xi_index] = 1.0
    p = np.outer(xi, xi.conj())
    kp = to_matrix(k_lin(from_matrix(alg, p)))
    eps_kp = 2.0 * kp - np.eye(n)
    eps_p = 2.0 * p - np.eye(n)
    Z = 0.5 * _principal_log_unitary(eps_kp @ eps_p)
    kc = k_complex(k_lin)
    Em = scipy.linalg.expm(-Z)
    Ep = scipy.linalg.expm(Z)
    cols = []
    for a in range(n):
        eta = np.zeros(n, dtype=complex)
        eta[a] = 1.0
        cols.append(Em @ kc(np.outer(eta, xi.conj())) @ Ep @ xi)
    W = np.stack(cols, axis=1)
    return Z, W, Ep @ W


def recover_implementer(g, tol: float | None = None,
                        seed: int = 0) -> ImplementingMap:
    """Recover T with g(A) = T A T* (or T conj(A) T*) for cone-preserving g.

    Routes through the polar split: X = sqrt(g(1)) is positive, and
    U_X^{-1} g is an automorphism whose implementing unitary comes from the
    lift (retried through a rotation when the automorphism sits far from
    the component base point). The returned T is phase-normalized.
    """
    se = as_str_element(g, tol, seed)
    alg = se.algebra
    if alg.kind != "herm":
        raise ValueError("implementer recovery needs a Herm(n) operator")
    n = alg.n
    if not in_cone(se.g1, tol):
        raise NotConePreserving("g(1) is not in the open cone")
    x_el = apply_function(se.g1, "sqrt", tol)
    X = to_matrix(x_el)
    k = op_inverse(U_op(x_el)) @ se.g
    comp = aut_component(k, tol, seed)
    conjugated = comp is AutComponent.ANTIUNITARY
    k_lin = (j_op(n) @ k) if conjugated else k
    s_full = _implementer_of(k_lin, tol)
    T = X @ (s_full.conj() if conjugated else s_full)
    T = phase_normalize(T)
    dev = np.linalg.norm(congruence_op(T, conjugated).matrix - se.g.matrix)
    if dev > np.sqrt(resolve_tol(tol)) * max(1.0, se.g.norm()):
        raise LiftFailure(f"recovered congruence misses g by {dev:.3g}")
    return ImplementingMap(T, conjugated, True)


def _implementer_of(k_lin: VOperator, tol: float | None) -> np.ndarray:
    """Unitary s with k_lin = congruence by s, for a unitary-component input.

    Far inputs are rotated so the moved projection returns to base, which
    makes the principal-log step trivial, then the rotation is multiplied
    back in.
    """
    n = k_lin.algebra.n
    try:
        _, _, s = _lift_linear(k_lin, 0)
        if np.linalg.norm(s.conj().T @ s - np.eye(n)) <= 1e-6:
            return s
    except OutOfNeighborhood:
        pass
    xi = np.zeros(n, dtype=complex)
    xi[0] = 1.0
    kp = to_matrix(k_lin(from_matrix(k_lin.algebra, np.outer(xi, xi.conj()))))
    w, V = np.linalg.eigh(kp)
    eta = V[:, -1]
    R = _unitary_with_first_column(eta)
    k2 = congruence_op(R.conj().T) @ k_lin @ congruence_op(R)
    _, _, s2 = _lift_linear(k2, 0)
    return R @ s2


def _unitary_with_first_column(eta: np.ndarray) -> np.ndarray:
    n = eta.shape[0]
    M = np.eye(n, dtype=complex)
    M[:, 0] = eta / np.linalg.norm(eta)
    Q, _ = np.linalg.qr(M)
    # qr may flip the first column by a phase; rotate it back onto eta
    phase = np.vdot(Q[:, 0], eta / np.linalg.norm(eta))
    Q[:, 0] *= phase / abs(phase)
    return Q


def phase_normalize(T: np.ndarray) -> np.ndarray:
    """Rotate T by a global phase so its first large entry is real positive.

    Large means modulus above 1e-6 times the spectral norm, scanning in
    row-major order. This is the gauge every comparison uses.
    """
    cutoff = 1e-6 * np.linalg.norm(T, 2)
    flat = T.ravel()
    idx = np.flatnonzero(np.abs(flat) > cutoff)
    if idx.size == 0:
        return T
    t = flat[idx[0]]
    return T * (abs(t) / t)


def derivation_to_skew(D: VOperator, tol: float | None = None,
                       seed: int = 0) -> np.ndarray:
    """Solve D = [Z, .] for a trace-free skew-hermitian Z by least squares."""
    alg = D.algebra
    if alg.kind != "herm":
        raise ValueError("derivation recovery needs a Herm(n) operator")
    n = alg.n
    limit = resolve_tol(tol) * max(1.0, D.norm())
    if np.linalg.norm(D(unit(alg)).coords) > limit:
        raise NotDerivation("operator moves the unit")
    if str_lie_residual(D, seed=seed) > resolve_tol(tol):
        raise NotDerivation("operator fails the Lie-algebra identity")
    basis = skew_traceless_basis(n)
    blocks = []
    rhs = []
    for B in alg.basis_matrices:
        DB = to_matrix(D(from_matrix(alg, B)))
        rhs.append(_vec_real(DB))
        blocks.append(np.stack([_vec_real(K @ B - B @ K) for K in basis], axis=1))
    M = np.vstack(blocks)
    b = np.concatenate(rhs)
    theta, *_ = np.linalg.lstsq(M, b, rcond=None)
    resid = np.linalg.norm(M @ theta - b)
    if resid > np.sqrt(resolve_tol(tol)) * max(1.0, D.norm()):
        raise InconsistentSolve(
            f"commutator system has least-squares residual {resid:.3g}")
    Z = np.zeros((n, n), dtype=complex)
    for t, K in zip(theta, basis):
        Z += t * K
    return Z


def skew_traceless_basis(n: int) -> list[np.ndarray]:
    """Real basis of trace-free skew-hermitian n x n matrices (n^2 - 1 of them)."""
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            K = np.zeros((n, n), dtype=complex)
            K[i, j] = 1.0
            K[j, i] = -1.0
            out.append(K)
            K = np.zeros((n, n), dtype=complex)
            K[i, j] = 1j
            K[j, i] = 1j
            out.append(K)
    for i in range(n - 1):
        K = np.zeros((n, n), dtype=complex)
        K[i, i] = 1j
        K[i + 1, i + 1] = -1j
        out.append(K)
    return out


def _vec_real(M: np.ndarray) -> np.ndarray:
    return np.concatenate([M.real.ravel(), M.imag.ravel()])


def str_as_lr(H: VOperator, tol: float | None = None, seed: int = 0) -> np.ndarray:
    """Write a Lie-algebra member as A -> TA + AT*: T from H(1)/2 plus the
    derivation part's commutator matrix."""
    if H.algebra.kind != "herm":
        raise ValueError("left-right form needs a Herm(n) operator")
    u, D = lie_split(H, tol, seed)
    Z = derivation_to_skew(D, tol, seed)
    T = to_matrix(u) / 2.0 + Z
    alg = H.algebra
    worst = 0.0
    for B in alg.basis_matrices:
        HB = to_matrix(H(from_matrix(alg, B)))
        dev = np.linalg.norm(HB - T @ B - B @ T.conj().T)
        worst = max(worst, dev)
    if worst > np.sqrt(resolve_tol(tol)) * max(1.0, H.norm()):
        raise InconsistentSolve(f"left-right form misses H by {worst:.3g}")
    return T


def str_two_components(g, tol: float | None = None,
                       seed: int = 0) -> StrComponent:
    """Which of the two components of the structure group holds g.

    Membership forces g(1) or -g(1) into the open cone; anything else
    signals that the membership tolerance let a non-member through.
    """
    se = as_str_element(g, tol, seed)
    if se.algebra.kind != "herm":
        raise ValueError("component classification needs a Herm(n) operator")
    plus = in_cone(se.g1, tol)
    minus = in_cone(-1.0 * se.g1, tol)
    if plus and not minus:
        return StrComponent.PLUS
    if minus and not plus:
        return StrComponent.MINUS
    raise Inconsistent(
        "g(1) is neither positive nor negative definite; "
        "structure-group membership tolerance is too loose")
