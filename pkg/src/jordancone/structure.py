"""Structure group and its Lie algebra.

Membership is a residual sweep of the defining identity U_{gx} = g U_x g*
with g* = g^{-1} U_{g1}, checked on the basis plus a seeded random sample
(the identity is quadratic in x, so basis plus polarization determines it;
random vectors stand in for the pair terms). On top of that sit the Pierce
and central-projection machinery, the positivity criterion for U_x, the
factorization g = U_v S_p k with an automorphism k, and the Lie-algebra
membership test with its split into a multiplication part and a derivation.
"""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .algebra import (AlgebraDescriptor, Element, VOperator, L_op, U_bilinear,
                      U_op, element_eigenvalues, identity_op, jb_norm,
                      jordan_product, op_inverse, unit)
from .config import invert_cutoff, resolve_tol
from .errors import (CentralityViolation, NotConePreserving, NotIdempotent,
                     NotInLieAlgebra, NotInStr, NotInvertible, UxNotPositive)
from .spectral import apply_function, operator_spectrum


def _sweep_vectors(alg: AlgebraDescriptor, seed: int, salt: int) -> np.ndarray:
    """Rows: the basis vectors, then 2 dimV seeded unit-normalized gaussians."""
    d = alg.dim
    rng = np.random.default_rng([salt, int(seed)])
    extra = rng.standard_normal((2 * d, d))
    extra /= np.linalg.norm(extra, axis=1)[:, None]
    return np.vstack([np.eye(d), extra])


# ---------------------------------------------------------------------------
# membership


def str_residual(g: VOperator, seed: int = 0) -> float:
    """Worst scaled deviation from U_{gx} = g U_x g^{-1} U_{g1}, both ways.

    The mirrored sweep replaces g by g^{-1}; each direction is normalized
    by the cube of its operator norm. Small residual means membership.
    """
    alg = g.algebra
    C = alg.structure_tensor
    G = g.matrix
    Ginv = op_inverse(g).matrix
    samples = _sweep_vectors(alg, seed, 23)
    worst = 0.0
    for M, Minv in ((G, Ginv), (Ginv, G)):
        scale = max(1.0, np.linalg.norm(M, 2)) ** 3
        Ug1 = _kernels.u_matrix(C, M @ alg.unit_coords)
        for x in samples:
            lhs = _kernels.u_matrix(C, M @ x)
            rhs = M @ _kernels.u_matrix(C, x) @ Minv @ Ug1
            dev = np.linalg.norm(lhs - rhs) / scale
            if dev > worst:
                worst = dev
    return float(worst)


@dataclass(frozen=True, eq=False)
class StrElement:
    """A verified structure-group member with its adjoint g* = g^{-1} U_{g1}."""

    g: VOperator
    g1: Element
    adj: VOperator
    residual: float

    @property
    def algebra(self) -> AlgebraDescriptor:
        return self.g.algebra

    def __call__(self, x: Element) -> Element:
        return self.g(x)


def as_str_element(g, tol: float | None = None, seed: int = 0) -> StrElement:
    """Coerce a VOperator into a verified StrElement; NotInStr on failure."""
    if isinstance(g, StrElement):
        return g
    resid = str_residual(g, seed=seed)
    if resid > resolve_tol(tol):
        raise NotInStr(
            f"operator fails the structure-group identity (residual {resid:.3g})")
    g1 = g(unit(g.algebra))
    vals = element_eigenvalues(g1)
    if np.abs(vals).min() <= invert_cutoff(np.abs(vals).max()):
        raise NotInStr("image of the unit is not invertible")
    adj = op_inverse(g) @ U_op(g1)
    return StrElement(g, g1, adj, resid)


def str_adjoint(g, tol: float | None = None, seed: int = 0) -> VOperator:
    """The adjoint g* = g^{-1} U_{g1} of a structure-group member."""
    return as_str_element(g, tol, seed).adj


def is_automorphism(g: VOperator, tol: float | None = None, seed: int = 0) -> bool:
    """Membership plus g(1) = 1."""
    if isinstance(g, StrElement):
        g = g.g
    limit = resolve_tol(tol)
    gap = np.linalg.norm(g(unit(g.algebra)).coords - g.algebra.unit_coords)
    if gap > limit * max(1.0, g.norm()):
        return False
    return str_residual(g, seed=seed) <= limit


# ---------------------------------------------------------------------------
# idempotents, Pierce blocks, central projections


def s_op(p: Element, tol: float | None = None) -> VOperator:
    """The symmetry S_p = 2 L_p - Id = L_{2p-1} attached to an idempotent."""
    _require_idempotent(p, tol)
    return 2.0 * L_op(p) - identity_op(p.algebra)


def _require_idempotent(p: Element, tol: float | None) -> None:
    gap = jb_norm(jordan_product(p, p) - p)
    if gap > resolve_tol(tol) * max(1.0, jb_norm(p)) ** 2:
        raise NotIdempotent(f"p o p differs from p by {gap:.3g}")


@dataclass(frozen=True, eq=False)
class PierceDecomposition:
    """Projections onto the eigenspaces of L_p for eigenvalues 1, 0, 1/2."""

    P1: VOperator
    P0: VOperator
    Phalf: VOperator
    dims: tuple[int, int, int]


def pierce_decompose(p: Element, tol: float | None = None) -> PierceDecomposition:
    """Complete orthogonal projection triple (U_p, U_{p'}, 2 U_{p,p'})."""
    _require_idempotent(p, tol)
    q = unit(p.algebra) - p
    P1 = U_op(p)
    P0 = U_op(q)
    Phalf = 2.0 * U_bilinear(p, q)
    dims = tuple(int(round(np.trace(P.matrix))) for P in (P1, P0, Phalf))
    return PierceDecomposition(P1, P0, Phalf, dims)


def is_central(p: Element, tol: float | None = None) -> bool:
    """Central projection test: idempotent and L_p commutes with every L_{e_i}.

    Commutator norms within 10x of the threshold trigger a warning, since a
    borderline answer usually means the input drifted under roundoff.
    """
    limit = resolve_tol(tol) * max(1.0, jb_norm(p)) ** 2
    if jb_norm(jordan_product(p, p) - p) > limit:
        return False
    S = p.algebra.l_stack
    Lp = _kernels.l_matrix(p.algebra.structure_tensor, p.coords)
    comm = np.matmul(Lp, S) - np.matmul(S, Lp)
    worst = float(np.abs(comm).max())
    scaled = resolve_tol(tol) * max(1.0, jb_norm(p))
    if scaled < worst <= 10.0 * scaled:
        warnings.warn(
            f"centrality commutator {worst:.3g} is borderline "
            f"(threshold {scaled:.3g})", stacklevel=2)
    return worst <= scaled


def _central_atoms(alg: AlgebraDescriptor) -> list[np.ndarray]:
    """Minimal central projections, as coordinate vectors, one per simple part."""
    atoms: list[np.ndarray] = []
    for off, part in alg.block_offsets:
        if part.kind == "spin" and part.dim == 2:
            # R + R splits into two one-dimensional ideals
            for sgn in (-1.0, 1.0):
                a = np.zeros(alg.dim)
                a[off] = 0.5
                a[off + 1] = 0.5 * sgn
                atoms.append(a)
        else:
            a = np.zeros(alg.dim)
            a[off:off + part.dim] = unit(part).coords
            atoms.append(a)
    return atoms


def central_projections(alg: AlgebraDescriptor) -> list[Element]:
    """All 2^m indicator sums over the m minimal central projections."""
    atoms = _central_atoms(alg)
    out = []
    for picks in itertools.product((0.0, 1.0), repeat=len(atoms)):
        coords = np.zeros(alg.dim)
        for c, a in zip(picks, atoms):
            coords += c * a
        out.append(Element(alg, coords))
    return out


# ---------------------------------------------------------------------------
# positivity of the quadratic representation


def _require_invertible(x: Element) -> None:
    vals = element_eigenvalues(x)
    if np.abs(vals).min() <= invert_cutoff(np.abs(vals).max()):
        raise NotInvertible(
            f"element has spectrum within {invert_cutoff(np.abs(vals).max()):.3g} of 0")


def u_positive_decompose(x: Element,
                         tol: float | None = None) -> tuple[Element, Element]:
    """Factor x = v o eps with v positive and eps a central symmetry.

    Succeeds exactly when U_x has positive spectrum. On failure the raised
    error carries a negative eigenvalue of U_x as witness.
    """
    _require_invertible(x)
    p_plus = apply_function(x, "chi_plus", tol)
    if not is_central(p_plus, tol):
        witness = float(np.linalg.eigvalsh(_sym_part(U_op(x).matrix)).min())
        raise UxNotPositive(
            witness,
            f"positive part of x is not central; U_x has eigenvalue {witness:.6g}")
    v = apply_function(x, "abs", tol)
    eps = 2.0 * p_plus - unit(x.algebra)
    uvals = operator_spectrum(U_op(x))
    low = float(uvals.real.min())
    if low <= resolve_tol(tol) * max(1.0, jb_norm(x)) ** 2:
        raise UxNotPositive(low, f"U_x spectrum reaches {low:.6g}")
    return v, eps


def _sym_part(M: np.ndarray) -> np.ndarray:
    return (M + M.T) / 2.0


def u_spectrum_split(x: Element, tol: float | None = None,
                     ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spectra of U_x restricted to the ranges of U_{p+}, U_{p-}, 2U_{p+,p-}.

    The three multisets union to the full operator spectrum; the third one
    is nonpositive. Restrictions are computed on orthonormal range bases,
    where U_x stays symmetric.
    """
    _require_invertible(x)
    p_plus = apply_function(x, "chi_plus", tol)
    p_minus = apply_function(x, "chi_minus", tol)
    Ux = _sym_part(U_op(x).matrix)
    parts = []
    for P in (U_op(p_plus), U_op(p_minus), 2.0 * U_bilinear(p_plus, p_minus)):
        w, Q = np.linalg.eigh(_sym_part(P.matrix))
        R = Q[:, w > 0.5]
        if R.shape[1] == 0:
            parts.append(np.array([]))
        else:
            parts.append(np.linalg.eigvalsh(R.T @ Ux @ R))
    return parts[0], parts[1], parts[2]


# ---------------------------------------------------------------------------
# factorization


def go_decompose(g, tol: float | None = None,
                 seed: int = 0) -> tuple[Element, VOperator]:
    """Split a cone-preserving member as g = U_y k with y positive, k(1) = 1."""
    from .cone import in_cone
    se = as_str_element(g, tol, seed)
    if not in_cone(se.g1, tol):
        low = element_eigenvalues(se.g1).min()
        raise NotConePreserving(
            f"g(1) has spectrum down to {low:.6g}; not in the open cone")
    y = apply_function(se.g1, "sqrt", tol)
    k = op_inverse(U_op(y)) @ se.g
    return y, k


@dataclass(frozen=True, eq=False)
class StrDecomposition:
    """The factorization g = U_v S_p k: positive part, central projection,
    automorphism, and the recomposition residual."""

    v: Element
    p: Element
    k: VOperator
    residual: float

    def is_involutive(self, tol: float | None = None) -> bool:
        """True iff the decomposed g satisfies g* = g^{-1}, i.e. v = 1."""
        gap = jb_norm(self.v - unit(self.v.algebra))
        return gap <= resolve_tol(tol) * max(1.0, jb_norm(self.v))


def str_decompose(g, tol: float | None = None, seed: int = 0) -> StrDecomposition:
    """Factor a structure-group member as g = U_v S_p k.

    v and p are functions of z = g(1) alone: p carries the positive part
    of z, v is the square root of eps_p o z, and k = L_{eps_p} U_v^{-1} g
    fixes the unit.
    """
    se = as_str_element(g, tol, seed)
    z = se.g1
    p = apply_function(z, "chi_plus", tol)
    if not is_central(p, tol):
        raise CentralityViolation(
            "positive projection of g(1) is not central; "
            "membership tolerance was too loose for this operator")
    eps = 2.0 * p - unit(z.algebra)
    absz = jordan_product(eps, z)
    v = apply_function(absz, "sqrt", tol)
    k = L_op(eps) @ op_inverse(U_op(v)) @ se.g
    k1_gap = np.linalg.norm(k(unit(z.algebra)).coords - z.algebra.unit_coords)
    if k1_gap > np.sqrt(resolve_tol(tol)) * max(1.0, se.g.norm()):
        raise CentralityViolation(
            f"automorphism factor moves the unit by {k1_gap:.3g}")
    recomposed = U_op(v) @ s_op(p, tol) @ k
    residual = float(np.linalg.norm(recomposed.matrix - se.g.matrix)
                     / max(1.0, np.linalg.norm(se.g.matrix)))
    if residual > np.sqrt(resolve_tol(tol)):
        raise NotInStr(f"recomposition failed (residual {residual:.3g})")
    return StrDecomposition(v, p, k, residual)


# ---------------------------------------------------------------------------
# the Lie algebra


def str_lie_residual(H: VOperator, seed: int = 0) -> float:
    """Worst scaled deviation from 2 U_{x,Hx} = H U_x - U_x (H - 2 U_{H1,1})."""
    alg = H.algebra
    C = alg.structure_tensor
    M = H.matrix
    scale = max(1.0, np.linalg.norm(M, 2))
    one = alg.unit_coords
    Hbar = M - 2.0 * _kernels.ub_matrix(C, M @ one, one)
    worst = 0.0
    for x in _sweep_vectors(alg, seed, 29):
        Ux = _kernels.u_matrix(C, x)
        lhs = 2.0 * _kernels.ub_matrix(C, x, M @ x)
        dev = np.linalg.norm(lhs - M @ Ux + Ux @ Hbar) / scale
        if dev > worst:
            worst = dev
    return float(worst)


def lie_split(H: VOperator, tol: float | None = None,
              seed: int = 0) -> tuple[Element, VOperator]:
    """Split H in str as L_u + D with u = H(1) and D a derivation."""
    resid = str_lie_residual(H, seed=seed)
    if resid > resolve_tol(tol):
        raise NotInLieAlgebra(
            f"operator fails the Lie-algebra identity (residual {resid:.3g})")
    u = H(unit(H.algebra))
    D = H - L_op(u)
    return u, D


def is_derivation(D: VOperator, tol: float | None = None, seed: int = 0,
                  pairs: int = 20) -> bool:
    """Leibniz check D(x o y) = Dx o y + x o Dy on seeded pairs, plus D(1) = 0."""
    alg = D.algebra
    limit = resolve_tol(tol) * max(1.0, D.norm())
    if np.linalg.norm(D(unit(alg)).coords) > limit:
        return False
    rng = np.random.default_rng([31, int(seed)])
    for _ in range(pairs):
        x = Element(alg, rng.standard_normal(alg.dim))
        y = Element(alg, rng.standard_normal(alg.dim))
        lhs = D(jordan_product(x, y))
        rhs = jordan_product(D(x), y) + jordan_product(x, D(y))
        scale = max(1.0, jb_norm(x)) * max(1.0, jb_norm(y))
        if jb_norm(lhs - rhs) > limit * scale:
            return False
    return True


def str_lie_dimension(alg: AlgebraDescriptor, seed: int = 0,
                      cutoff: float = 1e-6) -> int:
    """Real dimension of the Lie algebra, as the nullity of the linearized
    membership identity sampled on the basis plus random vectors."""
    d = alg.dim
    S = alg.l_stack
    one = alg.unit_coords
    rows = []
    for x in _sweep_vectors(alg, seed, 37):
        Lx = _kernels.l_matrix(alg.structure_tensor, x)
        Ux = _kernels.u_matrix(alg.structure_tensor, x)
        # 2 U_{x, He} as a (c,d,e) tensor over the unknown image He
        W = 2.0 * (np.einsum("ck,ekd->cde", Lx, S)
                   + np.einsum("eck,kd->cde", S, Lx)
                   - np.einsum("me,mcd->cde", Lx, S))
        A = np.einsum("cde,f->cdef", W, x)
        A -= np.einsum("ce,fd->cdef", np.eye(d), Ux)
        A += np.einsum("ce,df->cdef", Ux, np.eye(d))
        B = np.einsum("ck,mkd->cdm", Ux, S)
        A -= 2.0 * np.einsum("cde,f->cdef", B, one)
        rows.append(A.reshape(d * d, d * d))
    big = np.vstack(rows)
    sv = np.linalg.svd(big, compute_uv=False)
    return int(np.sum(sv <= cutoff * sv[0]))
