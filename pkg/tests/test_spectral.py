"""Spectral decomposition and the functional calculus."""
import numpy as np
import pytest
import scipy.linalg

import oracles
from jordancone import (DomainViolation, FUNCTION_TAGS, L_op, U_op,
                        apply_function, direct_sum, element_eigenvalues,
                        from_matrix, herm_complex, hull_check, jb_norm,
                        jordan_product, operator_spectrum, random_element,
                        rng_for, spectral_decompose, spin_element,
                        spin_factor, sym_real, unit)

ALGEBRAS = [sym_real(3), herm_complex(2), spin_factor(4),
            direct_sum(sym_real(2), spin_factor(3))]


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: a.label())
def test_frame_properties(alg):
    rng = rng_for(201, alg.dim)
    for _ in range(10):
        x = random_element(alg, rng)
        sd = spectral_decompose(x)
        assert jb_norm(sd.reconstruct() - x) < 1e-10 * (1 + jb_norm(x))
        total = sd.frame[0]
        for e in sd.frame[1:]:
            total = total + e
        assert jb_norm(total - unit(alg)) < 1e-10
        for i, e in enumerate(sd.frame):
            assert jb_norm(jordan_product(e, e) - e) < 1e-10
            for f in sd.frame[i + 1:]:
                assert jb_norm(jordan_product(e, f)) < 1e-10
        assert all(a < b for a, b in zip(sd.eigenvalues, sd.eigenvalues[1:]))


def test_cluster_merge():
    alg = sym_real(2)
    x = from_matrix(alg, np.diag([1.0, 1.0 + 1e-9]))
    sd = spectral_decompose(x)
    assert len(sd.eigenvalues) == 1
    assert abs(sd.eigenvalues[0] - (1.0 + 5e-10)) < 1e-9
    # and a clearly separated pair stays separated
    y = from_matrix(alg, np.diag([1.0, 1.01]))
    assert len(spectral_decompose(y).eigenvalues) == 2


def test_frozen_spin_example():
    alg = spin_factor(4)
    x = spin_element(alg, 1.0, np.array([0.5, 0.0, 0.0]))
    assert np.allclose(np.sort(element_eigenvalues(x)),
                       oracles.SPIN4_EXAMPLE_EIGS, atol=1e-12)
    assert np.allclose(np.sort(np.linalg.eigvalsh(L_op(x).matrix)),
                       oracles.SPIN4_EXAMPLE_L_EIGS, atol=1e-12)
    assert np.allclose(np.sort(operator_spectrum(U_op(x)).real),
                       oracles.SPIN4_EXAMPLE_U_EIGS, atol=1e-12)


def test_frozen_herm_rank_one():
    alg = herm_complex(2)
    x = from_matrix(alg, oracles.HERM2_RANK1)
    assert np.allclose(np.sort(element_eigenvalues(x)),
                       oracles.HERM2_RANK1_EIGS, atol=1e-12)
    with pytest.raises(DomainViolation):
        apply_function(x, "inv")
    with pytest.raises(DomainViolation):
        apply_function(x, "log")


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: a.label())
def test_calculus_against_eigenvalues(alg):
    rng = rng_for(202, alg.dim)
    x = random_element(alg, rng)
    vals = element_eigenvalues(x)
    for tag, fn in [("exp", np.exp), ("abs", np.abs)]:
        got = np.sort(element_eigenvalues(apply_function(x, tag)))
        assert np.allclose(got, np.sort(fn(vals)), atol=1e-9 * (1 + jb_norm(x)) ** 2)
    y = jordan_product(x, x) + 0.3 * unit(alg)
    yv = element_eigenvalues(y)
    for tag, fn in [("sqrt", np.sqrt), ("log", np.log), ("inv", lambda t: 1 / t)]:
        got = np.sort(element_eigenvalues(apply_function(y, tag)))
        assert np.allclose(got, np.sort(fn(yv)), atol=1e-8 * (1 + jb_norm(y)) ** 2)


def test_chi_step_functions():
    alg = sym_real(2)
    x = from_matrix(alg, np.diag([2.0, -3.0]))
    p = apply_function(x, "chi_plus")
    m = apply_function(x, "chi_minus")
    assert np.allclose(p.coords + m.coords, unit(alg).coords)
    assert np.allclose(np.sort(element_eigenvalues(p)), [0.0, 1.0])
    assert jb_norm(jordan_product(p, m)) < 1e-14
    # |x| = x o (chi_plus - chi_minus)
    eps = p - m
    assert jb_norm(apply_function(x, "abs") - jordan_product(x, eps)) < 1e-12
    # chi on a spectrum touching zero is rejected
    x0 = from_matrix(alg, np.diag([1.0, 0.0]))
    with pytest.raises(DomainViolation):
        apply_function(x0, "chi_plus")


def test_function_tags_registry():
    for tag in ["sqrt", "log", "exp", "inv", "chi_plus", "chi_minus", "abs"]:
        assert tag in FUNCTION_TAGS
    alg = sym_real(2)
    with pytest.raises(ValueError):
        apply_function(unit(alg), "not_a_tag")


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: a.label())
def test_exp_u_lemma(alg):
    rng = rng_for(203, alg.dim)
    v = 0.5 * random_element(alg, rng)
    lhs = scipy.linalg.expm(2.0 * L_op(v).matrix)
    rhs = U_op(apply_function(v, "exp")).matrix
    assert np.allclose(lhs, rhs, atol=1e-9 * np.linalg.norm(rhs, 2))


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: a.label())
def test_spectral_mapping(alg):
    rng = rng_for(204, alg.dim)
    x = random_element(alg, rng)
    vals = element_eigenvalues(x)
    sq = np.sort(element_eigenvalues(jordan_product(x, x)))
    assert np.allclose(sq, np.sort(vals ** 2), atol=1e-10 * (1 + jb_norm(x)) ** 2)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: a.label())
def test_hull_endpoints(alg):
    rng = rng_for(205, alg.dim)
    for _ in range(20):
        lo, hi = hull_check(random_element(alg, rng))
        assert abs(lo) < 1e-9 and abs(hi) < 1e-9


def test_projection_operator_spectra():
    # L_p eigenvalues sit in {0, 1/2, 1}; U_p is an orthogonal projection
    alg = sym_real(3)
    p = from_matrix(alg, np.diag([1.0, 1.0, 0.0]))
    lvals = np.linalg.eigvalsh(L_op(p).matrix)
    assert all(min(abs(v), abs(v - 0.5), abs(v - 1.0)) < 1e-12 for v in lvals)
    uvals = operator_spectrum(U_op(p)).real
    assert all(min(abs(v), abs(v - 1.0)) < 1e-12 for v in uvals)
    Up = U_op(p).matrix
    assert np.allclose(Up @ Up, Up, atol=1e-12)
    assert np.allclose(Up, Up.T, atol=1e-12)


def test_operator_spectrum_sorted_complex():
    alg = sym_real(2)
    rng = rng_for(206)
    g = U_op(random_element(alg, rng))
    vals = operator_spectrum(g)
    assert vals.dtype.kind == "c"
    assert len(vals) == alg.dim
