"""Positive cone membership, order, transport, retraction."""
import numpy as np
import pytest

from jordancone import (NotConePreserving, NotInCone, U_op, cone_retraction,
                        direct_sum, element_eigenvalues, from_matrix,
                        identity_op, in_closure, in_cone, jb_norm,
                        jordan_product, order_leq, order_unit_norm,
                        preserves_cone, random_automorphism,
                        random_cone_element, random_element, rng_for,
                        spin_factor, sym_real, transport, unit)

ALGEBRAS = [sym_real(3), spin_factor(4), direct_sum(sym_real(2), spin_factor(3))]


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: a.label())
def test_in_cone_matches_eigenvalues(alg):
    rng = rng_for(301, alg.dim)
    for _ in range(30):
        x = random_element(alg, rng)
        vals = element_eigenvalues(x)
        scale = max(1.0, np.abs(vals).max())
        if vals.min() > 1e-6 * scale:
            assert in_cone(x)
        if vals.min() < -1e-6 * scale:
            assert not in_cone(x)
            assert not in_closure(x)


def test_cone_frozen_cases():
    alg = sym_real(2)
    assert in_cone(from_matrix(alg, np.diag([1.0, 2.0])))
    assert not in_cone(from_matrix(alg, np.diag([1.0, 0.0])))
    assert in_closure(from_matrix(alg, np.diag([1.0, 0.0])))
    assert not in_closure(from_matrix(alg, np.diag([1.0, -0.1])))
    assert in_cone(unit(alg))


def test_order_leq():
    alg = sym_real(2)
    a = from_matrix(alg, np.diag([1.0, 2.0]))
    b = from_matrix(alg, np.diag([2.0, 3.0]))
    c = from_matrix(alg, np.diag([2.0, 1.5]))
    assert order_leq(a, b)
    assert not order_leq(b, a)
    assert not order_leq(a, c) and not order_leq(c, a)  # incomparable
    assert order_leq(a, a + 1e-12 * unit(alg))


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: a.label())
def test_transport(alg):
    rng = rng_for(302, alg.dim)
    x = random_cone_element(alg, rng)
    y = random_cone_element(alg, rng)
    g = transport(x, y)
    assert jb_norm(g(x) - y) < 1e-9 * (1 + jb_norm(x) + jb_norm(y)) ** 2
    assert preserves_cone(g)
    with pytest.raises(NotInCone):
        transport(x, -1.0 * y)


def test_transport_frozen_diagonal():
    alg = sym_real(2)
    g = transport(unit(alg), from_matrix(alg, np.diag([4.0, 9.0])))
    # from the unit this is the quadratic operator at the square root
    expected = U_op(from_matrix(alg, np.diag([2.0, 3.0])))
    assert np.allclose(g.matrix, expected.matrix, atol=1e-10)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: a.label())
def test_preserves_cone(alg):
    rng = rng_for(303, alg.dim)
    v = random_cone_element(alg, rng)
    assert preserves_cone(U_op(v))
    assert preserves_cone(random_automorphism(alg, rng))
    assert not preserves_cone(-1.0 * identity_op(alg))


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: a.label())
def test_retraction_path(alg):
    rng = rng_for(304, alg.dim)
    v = random_cone_element(alg, rng)
    k = random_automorphism(alg, rng)
    g = U_op(v) @ k
    assert np.allclose(cone_retraction(g, 0.0).matrix, g.matrix, atol=1e-12)
    end = cone_retraction(g, 1.0)
    assert jb_norm(end(unit(alg)) - unit(alg)) < 1e-9
    # automorphisms are fixed pointwise along the path
    for t in (0.25, 0.5, 1.0):
        assert np.allclose(cone_retraction(k, t).matrix, k.matrix, atol=1e-9)
    # intermediate points still preserve the cone
    assert preserves_cone(cone_retraction(g, 0.5))


def test_retraction_domain():
    alg = sym_real(2)
    rng = rng_for(305)
    g = U_op(random_cone_element(alg, rng))
    with pytest.raises(ValueError):
        cone_retraction(g, 1.5)
    with pytest.raises(ValueError):
        cone_retraction(g, -0.1)
    with pytest.raises(NotConePreserving):
        cone_retraction(-1.0 * g, 0.5)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: a.label())
def test_order_unit_norm_equals_spectral(alg):
    rng = rng_for(306, alg.dim)
    for _ in range(10):
        x = random_element(alg, rng)
        assert abs(order_unit_norm(x) - jb_norm(x)) < 1e-9 * (1 + jb_norm(x))


def test_order_unit_norm_frozen():
    alg = sym_real(2)
    x = from_matrix(alg, np.diag([1.0, -3.0]))
    assert abs(order_unit_norm(x) - 3.0) < 1e-9


def test_self_duality_sampled():
    from jordancone import trace_form
    alg = sym_real(3)
    rng = rng_for(307)
    x = random_cone_element(alg, rng)
    for _ in range(25):
        y = random_element(alg, rng)
        assert trace_form(x, jordan_product(y, y)) > -1e-10
