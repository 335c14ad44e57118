"""Jordan spectral decomposition and the continuous functional calculus.

The matrix algebras decompose through a dense Hermitian eigensolver, spin
factors through the closed-form two-point spectrum, and direct sums
blockwise. Eigenvalues closer than the cluster width merge into a single
frame idempotent so the calculus stays stable under near-degeneracy.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (Element, VOperator, L_op, element_eigenvalues,
                      from_matrix, spin_parts, to_matrix)
from .config import cluster_width, invert_cutoff, resolve_tol
from .errors import DomainViolation


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Ascending eigenvalues with a complete orthogonal idempotent frame."""

    eigenvalues: np.ndarray
    frame: tuple[Element, ...]

    def reconstruct(self) -> Element:
        alg = self.frame[0].algebra
        coords = np.zeros(alg.dim)
        for lam, e in zip(self.eigenvalues, self.frame):
            coords += lam * e.coords
        return Element(alg, coords)


def _raw_spectral(x: Element) -> list[tuple[float, np.ndarray]]:
    """(eigenvalue, idempotent coords) pairs before cluster merging."""
    alg = x.algebra
    if alg.kind in ("sym", "herm"):
        w, Q = np.linalg.eigh(to_matrix(x))
        out = []
        for i in range(len(w)):
            v = Q[:, i]
            P = np.outer(v, v.conj())
            out.append((float(w[i]), from_matrix(alg, P).coords))
        return out
    if alg.kind == "spin":
        s, u = spin_parts(x)
        r = float(np.linalg.norm(u))
        if alg.dim == 1 or r == 0.0:
            return [(s, alg.unit_coords.copy())]
        direction = u / r
        lo = np.concatenate(([0.5], -0.5 * direction))
        hi = np.concatenate(([0.5], 0.5 * direction))
        return [(s - r, lo), (s + r, hi)]
    out = []
    for off, part in alg.block_offsets:
        sub = Element(part, x.coords[off:off + part.dim])
        for lam, coords in _raw_spectral(sub):
            emb = np.zeros(alg.dim)
            emb[off:off + part.dim] = coords
            out.append((lam, emb))
    return out


def spectral_decompose(x: Element) -> SpectralData:
    """Eigenvalues and idempotent frame of x, with cluster merging."""
    raw = sorted(_raw_spectral(x), key=lambda t: t[0])
    norm = max(abs(raw[0][0]), abs(raw[-1][0]))
    width = cluster_width(norm)
    lams: list[float] = []
    frame: list[Element] = []
    group_vals: list[float] = [raw[0][0]]
    group_coords = raw[0][1].copy()
    for lam, coords in raw[1:]:
        if lam - group_vals[-1] <= width:
            group_vals.append(lam)
            group_coords += coords
        else:
            lams.append(float(np.mean(group_vals)))
            frame.append(Element(x.algebra, group_coords))
            group_vals = [lam]
            group_coords = coords.copy()
    lams.append(float(np.mean(group_vals)))
    frame.append(Element(x.algebra, group_coords))
    return SpectralData(np.array(lams), tuple(frame))


_CALCULUS = {
    "sqrt": np.sqrt,
    "log": np.log,
    "exp": np.exp,
    "inv": lambda lam: 1.0 / lam,
    "chi_plus": lambda lam: 1.0 if lam > 0.0 else 0.0,
    "chi_minus": lambda lam: 1.0 if lam < 0.0 else 0.0,
    "abs": abs,
}

FUNCTION_TAGS = tuple(_CALCULUS)


def apply_function(x: Element, tag: str, tol: float | None = None) -> Element:
    """Spectral functional calculus: sum of f(lambda_i) e_i for the tag."""
    if tag not in _CALCULUS:
        raise ValueError(f"unknown calculus tag {tag!r}; known: {FUNCTION_TAGS}")
    sd = spectral_decompose(x)
    lams = sd.eigenvalues
    if tag in ("sqrt", "log"):
        limit = resolve_tol(tol)
        lo = float(lams.min())
        if lo <= limit:
            raise DomainViolation(
                f"{tag} needs spectrum in (tol, inf); offending eigenvalue {lo:.6g}",
                eigenvalue=lo)
    if tag in ("inv", "chi_plus", "chi_minus"):
        norm = float(np.abs(lams).max())
        small = float(np.abs(lams).min())
        if small <= invert_cutoff(norm):
            offender = lams[np.abs(lams).argmin()]
            raise DomainViolation(
                f"{tag} needs 0 outside the spectrum; offending eigenvalue {offender:.6g}",
                eigenvalue=float(offender))
    f = _CALCULUS[tag]
    coords = np.zeros(x.algebra.dim)
    for lam, e in zip(lams, sd.frame):
        coords += f(float(lam)) * e.coords
    return Element(x.algebra, coords)


def operator_spectrum(T: VOperator) -> np.ndarray:
    """All dimV eigenvalues of the operator matrix, sorted by (real, imag)."""
    return np.sort_complex(np.linalg.eigvals(T.matrix))


def hull_check(x: Element) -> tuple[float, float]:
    """Endpoint gaps (min sigma(L_x) - min sigma(x), max sigma(L_x) - max sigma(x)).

    L_x is symmetric in coordinates for every supported algebra, and its
    spectrum fills the convex hull of sigma(x); both gaps must vanish.
    """
    L = L_op(x).matrix
    lvals = np.linalg.eigvalsh((L + L.T) / 2.0)
    xvals = element_eigenvalues(x)
    return (float(lvals.min() - xvals.min()), float(lvals.max() - xvals.max()))
