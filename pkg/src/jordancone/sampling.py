"""Seeded random sampling of elements and operators.

Everything verification-shaped in this package draws through these
helpers so that a (seed, trial) pair pins down the exact sample stream.
Cone samples are squares shifted by a sliver of the unit; invertible and
indefinite samples use rejection with a spectral margin.
"""
from __future__ import annotations

import numpy as np
import scipy.linalg

from .algebra import (AlgebraDescriptor, Element, VOperator, L_op,
                      element_eigenvalues, jordan_product, unit)

# margin keeping rejection samples clear of the invertibility cutoff
_MARGIN = 1e-3


def rng_for(*key: int) -> np.random.Generator:
    """Deterministic generator from an integer key tuple."""
    return np.random.default_rng(list(int(k) for k in key))


def random_element(alg: AlgebraDescriptor, rng: np.random.Generator) -> Element:
    """Standard normal coordinates."""
    return Element(alg, rng.standard_normal(alg.dim))


def random_cone_element(alg: AlgebraDescriptor, rng: np.random.Generator) -> Element:
    """A point of the open cone: x o x + 0.1 unit."""
    x = random_element(alg, rng)
    return jordan_product(x, x) + 0.1 * unit(alg)


def random_invertible(alg: AlgebraDescriptor, rng: np.random.Generator) -> Element:
    """Invertible element, rejection-sampled with a spectral margin."""
    while True:
        x = random_element(alg, rng)
        vals = element_eigenvalues(x)
        if np.abs(vals).min() > _MARGIN * max(1.0, np.abs(vals).max()):
            return x


def random_indefinite(alg: AlgebraDescriptor, rng: np.random.Generator) -> Element:
    """Invertible element whose spectrum has both signs (needs dim >= 2)."""
    if alg.dim < 2:
        raise ValueError("one-dimensional algebras have no indefinite elements")
    while True:
        x = random_invertible(alg, rng)
        vals = element_eigenvalues(x)
        if vals.min() < -_MARGIN and vals.max() > _MARGIN:
            return x


def random_derivation(alg: AlgebraDescriptor, rng: np.random.Generator,
                      terms: int = 4) -> VOperator:
    """Derivation as a sum of multiplication commutators [L_a, L_b]."""
    M = np.zeros((alg.dim, alg.dim))
    for _ in range(terms):
        A = L_op(random_element(alg, rng)).matrix
        B = L_op(random_element(alg, rng)).matrix
        M += A @ B - B @ A
    return VOperator(alg, M)


def random_automorphism(alg: AlgebraDescriptor, rng: np.random.Generator,
                        scale: float = 0.5) -> VOperator:
    """exp of a scaled random derivation; the identity when there are none."""
    D = random_derivation(alg, rng)
    nrm = np.linalg.norm(D.matrix, 2)
    if nrm < 1e-14:
        return VOperator(alg, np.eye(alg.dim))
    return VOperator(alg, scipy.linalg.expm((scale / nrm) * D.matrix))
