from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import integrate

from wignerlab import (
    DomainError,
    F_sc,
    SeedSpec,
    Spectrum,
    counting,
    dyadic_bound,
    eigvalsh,
    gue_log_density,
    gue_log_normalization,
    m_sc,
    rho_sc,
    sample_gue,
    semicircle_quantile,
    sine_kernel_det,
    stieltjes,
    unfolded_spacings,
    wigner_surmise_gue,
    wigner_surmise_gue_cdf,
)


def _spectrum(values):
    values = np.sort(np.asarray(values, dtype=float))
    return Spectrum(n=values.size, eigenvalues=values)


# -- limiting density and its transform -------------------------------------


def test_rho_sc_values():
    assert abs(rho_sc(0.0) - 1.0 / math.pi) < 1e-15
    assert abs(rho_sc(1.0) - math.sqrt(3.0) / (2.0 * math.pi)) < 1e-15
    assert rho_sc(2.0) == 0.0
    assert rho_sc(-2.0) == 0.0
    assert rho_sc(2.5) == 0.0
    assert rho_sc(-3.0) == 0.0


def test_rho_sc_vectorised_and_even():
    e = np.linspace(-2.5, 2.5, 41)
    vals = rho_sc(e)
    assert vals.shape == e.shape
    np.testing.assert_allclose(vals, rho_sc(-e), atol=0.0)
    assert np.all(vals >= 0.0)


def test_rho_sc_integrates_to_one():
    total, _ = integrate.quad(rho_sc, -2.0, 2.0, epsabs=1e-12, epsrel=1e-12)
    assert abs(total - 1.0) < 1e-10


def test_m_sc_solves_fixed_point_equation():
    for z in (0.3 + 0.5j, -1.2 + 0.01j, 1.9 + 1e-6j, 3.5 + 1e-3j, -4.0 + 1e-4j, 2.7j):
        m = m_sc(z)
        assert abs(m * m + z * m + 1.0) < 1e-12
        assert m.imag > 0.0


def test_m_sc_known_value():
    # m_sc(i) = i (sqrt(5) - 1)/2
    m = m_sc(1j)
    assert abs(m - 1j * (math.sqrt(5.0) - 1.0) / 2.0) < 1e-14


def test_m_sc_requires_upper_half_plane():
    with pytest.raises(DomainError):
        m_sc(1.0 - 0.5j)
    with pytest.raises(DomainError):
        m_sc(1.0)


def test_semicircle_boundary_identity():
    # Im m_sc on the real axis equals pi rho_sc
    for e in np.linspace(-1.95, 1.95, 79):
        assert abs(m_sc(complex(e, 1e-9)).imag - math.pi * rho_sc(e)) < 1e-6


def test_F_sc_endpoints_and_derivative():
    assert abs(F_sc(-2.0)) < 1e-15
    assert abs(F_sc(2.0) - 1.0) < 1e-15
    assert abs(F_sc(0.0) - 0.5) < 1e-15
    h = 1e-6
    for e in (-1.5, -0.3, 0.8, 1.7):
        fd = (F_sc(e + h) - F_sc(e - h)) / (2 * h)
        assert abs(fd - rho_sc(e)) < 1e-8


def test_F_sc_clamps_outside_support():
    assert F_sc(-5.0) == 0.0
    assert F_sc(5.0) == 1.0


def test_quantile_inverts_F_sc():
    for p in (0.05, 0.25, 0.5, 0.75, 0.95):
        assert abs(F_sc(semicircle_quantile(p)) - p) < 1e-12
    assert abs(semicircle_quantile(0.5)) < 1e-12


# -- empirical observables ---------------------------------------------------


def test_counting_closed_interval():
    sp = _spectrum([-1.0, 0.0, 0.0, 0.5, 2.0])
    assert counting(sp, -1.0, 2.0) == 5
    assert counting(sp, 0.0, 0.0) == 2
    assert counting(sp, 0.1, 0.4) == 0
    assert counting(sp, -0.5, 0.75) == 3
    with pytest.raises(DomainError):
        counting(sp, 1.0, 0.0)


def test_stieltjes_exact_small_case():
    sp = _spectrum([-1.0, 1.0])
    z = 0.5j
    expected = 0.5 * (1.0 / (-1.0 - z) + 1.0 / (1.0 - z))
    assert abs(stieltjes(sp, z) - expected) < 1e-15
    with pytest.raises(DomainError):
        stieltjes(sp, 0.5)
    with pytest.raises(DomainError):
        stieltjes(sp, 0.5 - 1j)


def test_stieltjes_imaginary_part_is_poisson_sum():
    sp = eigvalsh(sample_gue(32, SeedSpec(31)))
    e, eta = 0.3, 0.05
    mu = sp.eigenvalues
    kernel = float(np.sum(eta / ((mu - e) ** 2 + eta**2))) / sp.n
    assert abs(stieltjes(sp, complex(e, eta)).imag - kernel) < 1e-13


def test_stieltjes_converges_to_m_sc():
    sp = eigvalsh(sample_gue(1024, SeedSpec(32)))
    z = 0.4 + 0.3j
    assert abs(stieltjes(sp, z) - m_sc(z)) < 0.05


@pytest.mark.parametrize("trial", range(8))
def test_dyadic_bound_dominates(trial):
    sp = eigvalsh(sample_gue(48, SeedSpec(33, trial)))
    for eps in (0.5, 0.05, 1.0 / 48.0):
        bound = dyadic_bound(sp, 0.1 * trial - 0.3, eps)
        assert bound.lhs <= bound.rhs + 1e-12
        assert bound.head >= 0.0
        assert all(a >= 0.0 for a in bound.annuli)


def test_dyadic_bound_head_only_when_all_close():
    sp = _spectrum([0.0, 0.001, -0.001])
    bound = dyadic_bound(sp, 0.0, 1.0)
    assert bound.annuli == ()
    assert abs(bound.head - 1.0) < 1e-15
    with pytest.raises(DomainError):
        dyadic_bound(sp, 0.0, 0.0)


# -- GUE reference objects ---------------------------------------------------


def test_sine_kernel_det_values():
    assert abs(sine_kernel_det([0.4]) - 1.0) < 1e-15
    # distant points decorrelate
    assert abs(sine_kernel_det([0.0, 1000.25]) - 1.0) < 1e-3
    # coincident points give a singular kernel
    assert abs(sine_kernel_det([0.7, 0.7])) < 1e-15


def test_sine_kernel_det_nonnegative():
    rng = SeedSpec(34).generator()
    for k in (2, 3, 4, 5, 6):
        pts = rng.uniform(-2.0, 2.0, k)
        assert sine_kernel_det(pts, k=k) >= -1e-10


def test_sine_kernel_det_validation():
    with pytest.raises(DomainError):
        sine_kernel_det([])
    with pytest.raises(DomainError):
        sine_kernel_det([0.0, 1.0], k=3)
    with pytest.raises(DomainError):
        sine_kernel_det(np.zeros(7))


def test_gue_log_density_basic():
    val = gue_log_density([-0.5, 0.5], 2)
    expected = 2.0 * math.log(1.0) - 1.0 * 0.5
    assert abs(val - expected) < 1e-14
    assert gue_log_density([0.3, 0.3], 2) == float("-inf")
    with pytest.raises(DomainError):
        gue_log_density([0.0], 2)
    with pytest.raises(DomainError):
        gue_log_density(np.zeros(9), 9)


def test_gue_log_normalization_matches_closed_form():
    # Z_N = (2 pi)^{N/2} N^{-N^2/2} prod_{j<=N} j!
    for n, fact in ((1, 1.0), (2, 2.0), (3, 12.0)):
        closed = 0.5 * n * math.log(2.0 * math.pi) - 0.5 * n * n * math.log(n) + math.log(fact)
        assert abs(gue_log_normalization(n) - closed) < 1e-10
    with pytest.raises(DomainError):
        gue_log_normalization(4)


def test_gue_density_integrates_to_normalization():
    # direct 2-d trapezoid check of the N=2 normalisation, independent of
    # the Gauss-Legendre path
    grid = np.linspace(-6.0, 6.0, 801)
    xx, yy = np.meshgrid(grid, grid, indexing="ij")
    dens = (xx - yy) ** 2 * np.exp(-(xx**2 + yy**2))
    z = np.trapezoid(np.trapezoid(dens, grid, axis=1), grid)
    assert abs(math.log(z) - gue_log_normalization(2)) < 1e-6


# -- spacings ----------------------------------------------------------------


def test_unfolded_spacings_formula():
    sp = _spectrum([-0.4, -0.1, 0.2, 0.5, 1.9])
    sample = unfolded_spacings(sp, (-0.5, 0.6))
    inside = np.array([-0.4, -0.1, 0.2, 0.5])
    expected = sp.n * np.diff([F_sc(v) for v in inside])
    np.testing.assert_allclose(sample.spacings, expected, atol=1e-14)
    assert sample.window == (-0.5, 0.6)


def test_unfolded_spacings_empty_and_validation():
    sp = _spectrum([-1.5, 1.5])
    assert unfolded_spacings(sp, (-0.5, 0.5)).spacings.size == 0
    with pytest.raises(DomainError):
        unfolded_spacings(sp, (-2.5, 0.5))
    with pytest.raises(DomainError):
        unfolded_spacings(sp, (0.5, 0.5))


def test_unfolded_mean_spacing_near_one():
    sp = eigvalsh(sample_gue(512, SeedSpec(35)))
    sample = unfolded_spacings(sp, (semicircle_quantile(0.25), semicircle_quantile(0.75)))
    assert sample.spacings.size > 200
    assert abs(sample.spacings.mean() - 1.0) < 0.05


def test_wigner_surmise_normalised():
    total, _ = integrate.quad(wigner_surmise_gue, 0.0, 12.0, epsabs=1e-12, epsrel=1e-12)
    assert abs(total - 1.0) < 1e-10
    mean, _ = integrate.quad(lambda s: s * wigner_surmise_gue(s), 0.0, 12.0)
    assert abs(mean - 1.0) < 1e-10


def test_wigner_surmise_cdf_matches_quadrature():
    for s in (0.1, 0.5, 0.8862, 1.5, 3.0):
        val, _ = integrate.quad(wigner_surmise_gue, 0.0, s, epsabs=1e-13, epsrel=1e-12)
        assert abs(wigner_surmise_gue_cdf(s) - val) < 1e-10


def test_wigner_surmise_mode():
    # density peaks at sqrt(pi)/2
    s0 = math.sqrt(math.pi) / 2.0
    h = 1e-5
    assert wigner_surmise_gue(s0) > wigner_surmise_gue(s0 - h)
    assert wigner_surmise_gue(s0) > wigner_surmise_gue(s0 + h)


def test_wigner_surmise_rejects_negative():
    with pytest.raises(DomainError):
        wigner_surmise_gue(-0.1)
    with pytest.raises(DomainError):
        wigner_surmise_gue_cdf(np.array([0.5, -1.0]))
