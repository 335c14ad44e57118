"""Jordan homotopes and isotopes.

A homotope keeps the underlying space and replaces the product by
x ._u y = U_{x,y}(u). For invertible u the result is unital with unit
u^{-1} (an isotope), and its quadratic operators reduce to base-algebra
ones: U^u_x = U_x U_u. The isotope is isomorphic to the base algebra
exactly when U_u has positive spectrum, with an explicit witness map.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (Element, VOperator, U_bilinear, U_op, L_op,
                      element_eigenvalues, inverse, is_invertible, jb_norm,
                      jordan_product, op_inverse, unit, _same_algebra)
from .config import resolve_tol
from .errors import NotInvertible, UxNotPositive
from .spectral import apply_function
from .structure import as_str_element, u_positive_decompose


@dataclass(frozen=True, eq=False)
class HomotopeAlgebra:
    """The space of the base algebra carrying the product x ._u y = U_{x,y}(u).

    unit_u is u^{-1} when u is invertible, None otherwise (the homotope is
    then non-unital and only the product itself is available).
    """

    u: Element
    unit_u: Element | None

    @property
    def base(self):
        return self.u.algebra


def homotope(u: Element) -> HomotopeAlgebra:
    """Build the homotope at u; computes the unit when u is invertible."""
    unit_u = inverse(u) if is_invertible(u) else None
    return HomotopeAlgebra(u, unit_u)


def homotope_product(h: HomotopeAlgebra, x: Element, y: Element) -> Element:
    """x ._u y = U_{x,y}(u)."""
    _same_algebra(x, y)
    _same_algebra(x, h.u)
    return U_bilinear(x, y)(h.u)


def isotope_inverse(h: HomotopeAlgebra, x: Element) -> Element:
    """Inverse for the u-product: U_u^{-1} x^{-1}; needs u and x invertible."""
    if h.unit_u is None:
        raise NotInvertible("homotope base point is not invertible")
    xinv = inverse(x)
    return Element(x.algebra, np.linalg.solve(U_op(h.u).matrix, xinv.coords))


def isotope_spectrum(g, z: Element, tol: float | None = None,
                     seed: int = 0) -> np.ndarray:
    """Spectrum of g(z) inside the isotope at g(1)^{-1}.

    Because g(z) - lam g(1) = g(z - lam 1) and g is invertible, this equals
    the base-algebra spectrum of z; positivity in the isotope therefore
    matches cone membership of z.
    """
    se = as_str_element(g, tol, seed)
    _same_algebra(z, unit(se.algebra))
    return element_eigenvalues(z)


def isotope_isomorphic(u: Element, tol: float | None = None,
                       ) -> tuple[bool, VOperator | None]:
    """Whether the isotope at u is isomorphic to its base algebra.

    True exactly when U_u is positive; the witness g = U_{w^{-1}} L_{eps}
    with w = sqrt(|u|) (from u = U_w(eps) = w^2 o eps) maps the base product
    to the u-product: g(x o y) = g(x) ._u g(y).
    """
    try:
        v, eps = u_positive_decompose(u, tol)
    except UxNotPositive:
        return False, None
    w = apply_function(v, "sqrt", tol)
    g = op_inverse(U_op(w)) @ L_op(eps)
    _check_witness(g, u, tol)
    return True, g


def _check_witness(g: VOperator, u: Element, tol: float | None) -> None:
    """Light multiplicativity check of the witness on seeded pairs."""
    alg = u.algebra
    h = HomotopeAlgebra(u, None)
    rng = np.random.default_rng([41, alg.dim])
    limit = np.sqrt(resolve_tol(tol))
    for _ in range(8):
        x = Element(alg, rng.standard_normal(alg.dim))
        y = Element(alg, rng.standard_normal(alg.dim))
        lhs = g(jordan_product(x, y))
        rhs = homotope_product(h, g(x), g(y))
        scale = max(1.0, jb_norm(x)) * max(1.0, jb_norm(y)) * max(1.0, jb_norm(u))
        if jb_norm(lhs - rhs) > limit * scale:
            raise UxNotPositive(
                0.0, "witness failed multiplicativity; inconsistent decomposition")
