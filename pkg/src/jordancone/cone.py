"""Positive-cone geometry: membership, order, transport, retraction.

The open cone consists of the invertible elements with positive spectrum;
its closure adds the boundary. Homogeneity transport moves one interior
point to another inside the structure group, and the retraction
continuously deforms a cone-preserving operator onto an automorphism.
"""
from __future__ import annotations

import numpy as np

from .algebra import (Element, VOperator, U_op, element_eigenvalues,
                      jordan_product, unit, _same_algebra)
from .config import resolve_tol
from .errors import NotInCone, NotConePreserving
from .spectral import apply_function


def in_cone(x: Element, tol: float | None = None) -> bool:
    """True iff the spectrum sits strictly inside (tol, inf), scaled."""
    vals = element_eigenvalues(x)
    limit = resolve_tol(tol) * max(1.0, float(np.abs(vals).max()))
    return bool(vals.min() > limit)


def in_closure(x: Element, tol: float | None = None) -> bool:
    """True iff the spectrum clears -tol, scaled: closed-cone membership."""
    vals = element_eigenvalues(x)
    limit = resolve_tol(tol) * max(1.0, float(np.abs(vals).max()))
    return bool(vals.min() >= -limit)


def order_leq(x: Element, y: Element, tol: float | None = None) -> bool:
    """The cone order: x <= y iff y - x lies in the closed cone."""
    _same_algebra(x, y)
    return in_closure(y - x, tol)


def transport(x: Element, y: Element, tol: float | None = None) -> VOperator:
    """Cone transitivity witness g = U_{sqrt(y)} U_{sqrt(x)^-1} with g(x) = y."""
    _same_algebra(x, y)
    for name, el in (("x", x), ("y", y)):
        if not in_cone(el, tol):
            raise NotInCone(f"transport needs {name} in the open cone")
    sy = apply_function(y, "sqrt", tol)
    xinvsqrt = apply_function(apply_function(x, "inv", tol), "sqrt", tol)
    return U_op(sy) @ U_op(xinvsqrt)


def preserves_cone(g: VOperator, seed: int = 0, samples: int = 32,
                   tol: float | None = None) -> bool:
    """Sampled cone preservation: images of random squares and the unit.

    One interior point certifies preservation for structure-group members
    (the image cone either equals the cone or misses it); the extra samples
    guard numerical noise.
    """
    alg = g.algebra
    if not in_cone(g(unit(alg)), tol):
        return False
    rng = np.random.default_rng([17, int(seed)])
    for _ in range(samples):
        r = Element(alg, rng.standard_normal(alg.dim))
        if not in_closure(g(jordan_product(r, r)), tol):
            return False
    return True


def cone_retraction(g: VOperator, t: float, tol: float | None = None,
                    seed: int = 0) -> VOperator:
    """Deformation U_{exp(-t log(g1)/2)} g from a cone-preserving g to Aut.

    At t=0 this is g; at t=1 the result fixes the unit. Automorphisms are
    fixed for every t.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"retraction parameter must lie in [0,1], got {t}")
    from .structure import str_residual
    resid = str_residual(g, seed=seed)
    if resid > resolve_tol(tol):
        raise NotConePreserving(
            f"operator fails structure membership (residual {resid:.3g})")
    g1 = g(unit(g.algebra))
    if not in_cone(g1, tol):
        raise NotConePreserving("operator does not send the unit into the cone")
    w = apply_function(g1, "log", tol)
    a = apply_function((-0.5 * t) * w, "exp", tol)
    return U_op(a) @ g


def order_unit_norm(x: Element, iters: int = 60) -> float:
    """JB norm from the order definition inf{lam : -lam 1 <= x <= lam 1}.

    Bisects on lam using exact eigenvalue comparisons; independent of the
    spectral-radius route, which it must match.
    """
    alg = x.algebra
    one = unit(alg)
    hi = float(np.abs(x.coords).sum()) + 1.0
    lo = 0.0

    def fits(lam: float) -> bool:
        return (element_eigenvalues(lam * one - x).min() >= 0.0
                and element_eigenvalues(x + lam * one).min() >= 0.0)

    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if fits(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
