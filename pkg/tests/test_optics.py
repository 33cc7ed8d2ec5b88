import math

import numpy as np
import pytest

from discordbench.measures import concurrence, discord
from discordbench.optics import (
    CLASSICAL_HOM_VISIBILITY,
    EmptyPostselectionError,
    SourceParams,
    TruncationOverflowError,
    bs_transform,
    coherence_length,
    coherent_input_poly,
    coherent_output,
    delayed_incoherent_output,
    fock_norm,
    gaussian_overlap,
    hom_dip,
    hom_dip_fwhm,
    incoherent_output,
    number_state_input,
    overlap_sigma,
    postselect_two_qubit,
    postselection_weights,
)
from discordbench.linalg import purity

CASE_11 = 0.5 * np.array([
    [0, 0, 0, 0],
    [0, 1, -1, 0],
    [0, -1, 1, 0],
    [0, 0, 0, 0],
], dtype=complex)
CASE_20 = np.diag([1.0, 0, 0, 0]).astype(complex)
CASE_02 = np.diag([0, 0, 0, 1.0]).astype(complex)
RHO_INCOH = 0.5 * CASE_11 + 0.25 * CASE_20 + 0.25 * CASE_02


def coherent_vector(phi):
    return 0.5 * np.array([
        1j,
        np.exp(1j * phi),
        -np.exp(1j * phi),
        1j * np.exp(2j * phi),
    ])


def test_source_params_validation():
    with pytest.raises(ValueError):
        SourceParams(mu=0.0)
    with pytest.raises(ValueError):
        SourceParams(lambda0=-1.0)
    with pytest.raises(ValueError):
        SourceParams(fwhm_lambda=0.0)


def test_bs_transform_preserves_norm():
    for m, n in ((1, 0), (1, 1), (2, 0), (0, 2), (2, 1)):
        out = bs_transform(number_state_input(m, n))
        assert math.isclose(fock_norm(out), 1.0, abs_tol=1e-12)


def test_bs_transform_single_photon_splits_evenly():
    out = bs_transform(number_state_input(1, 0))
    # a_H -> (c_H + i d_H)/sqrt2
    assert out[(1, 0, 0, 0)] == pytest.approx(1 / math.sqrt(2))
    assert out[(0, 0, 1, 0)] == pytest.approx(1j / math.sqrt(2))


def test_bs_transform_one_photon_each_input():
    # a_H b_V -> (i c_H c_V + c_H d_V - c_V d_H + i d_H d_V)/2
    out = bs_transform(number_state_input(1, 1))
    assert out[(1, 1, 0, 0)] == pytest.approx(0.5j)
    assert out[(1, 0, 0, 1)] == pytest.approx(0.5)
    assert out[(0, 1, 1, 0)] == pytest.approx(-0.5)
    assert out[(0, 0, 1, 1)] == pytest.approx(0.5j)


def test_bs_transform_rejects_overflow():
    with pytest.raises(TruncationOverflowError):
        bs_transform({(3, 2): 1.0}, n_max=4)


def test_postselected_case_matrices_exact():
    for inp, expect, prob in (
        ((1, 1), CASE_11, 0.5),
        ((2, 0), CASE_20, 0.5),
        ((0, 2), CASE_02, 0.5),
    ):
        rho, p = postselect_two_qubit(bs_transform(number_state_input(*inp)))
        assert np.abs(np.asarray(rho) - expect).max() <= 1e-12
        assert p == pytest.approx(prob, abs=1e-12)


def test_postselect_rejects_empty_sector():
    with pytest.raises(EmptyPostselectionError):
        postselect_two_qubit({(2, 0, 0, 0): 1.0})


def test_coherent_output_matches_closed_form():
    for phi in (0.0, 0.25, np.pi / 4, np.pi / 2, np.pi, 4.0):
        v = coherent_vector(phi)
        rho = coherent_output(SourceParams(phi=phi))
        assert np.abs(np.asarray(rho) - np.outer(v, v.conj())).max() <= 1e-12
        assert purity(rho) == pytest.approx(1.0, abs=1e-12)


def test_coherent_output_mu_independent():
    for mu in (0.01, 0.1, 1.0):
        rho = coherent_output(SourceParams(mu=mu, phi=0.3))
        base = coherent_output(SourceParams(mu=0.1, phi=0.3))
        assert np.abs(np.asarray(rho) - np.asarray(base)).max() <= 1e-12


def test_coherent_input_poly_is_normalized():
    poly = coherent_input_poly(SourceParams(mu=0.5, phi=1.0))
    norm_sq = sum(
        abs(c) ** 2 * math.factorial(m) * math.factorial(n)
        for (m, n), c in poly.items()
    )
    assert norm_sq == pytest.approx(1.0, abs=1e-12)


def test_postselection_weights_mu_independent():
    for mu in (0.01, 0.1, 1.0):
        w = postselection_weights(mu)
        assert np.allclose(w, (0.5, 0.25, 0.25), atol=1e-15)


def test_incoherent_output_is_weighted_case_mixture():
    for mu in (0.01, 0.1, 1.0):
        rho = incoherent_output(SourceParams(mu=mu))
        assert np.abs(np.asarray(rho) - RHO_INCOH).max() <= 1e-12


def test_phase_average_reproduces_incoherent_state():
    for k_phases in (3, 5, 8):
        acc = np.zeros((4, 4), dtype=complex)
        for k in range(k_phases):
            phi = 2 * np.pi * k / k_phases
            acc += np.asarray(coherent_output(SourceParams(phi=phi)))
        acc /= k_phases
        assert np.abs(acc - RHO_INCOH).max() <= 1e-12


def test_coherence_length_value():
    # (4 ln2 / pi) lambda0^2 / dlambda at 785 nm, 3 nm, in um
    lc = coherence_length(785.0, 3.0)
    assert lc == pytest.approx(181.2815636, abs=1e-6)
    assert hom_dip_fwhm(SourceParams()) == lc


def test_gaussian_overlap_limits():
    sigma = overlap_sigma(785.0, 3.0)
    assert gaussian_overlap(0.0, sigma) == 1.0
    assert gaussian_overlap(1e4, sigma) < 1e-300
    # half amplitude at delta = lc/2 means dip FWHM equals lc
    lc = coherence_length(785.0, 3.0)
    assert gaussian_overlap(lc / 2.0, sigma) ** 2 == pytest.approx(0.5, abs=1e-12)


def test_delayed_state_endpoints():
    params = SourceParams()
    r0 = delayed_incoherent_output(params, 0.0)
    assert np.abs(np.asarray(r0) - RHO_INCOH).max() <= 1e-12
    r_far = delayed_incoherent_output(params, 1e4)
    assert np.abs(np.asarray(r_far) - np.eye(4) / 4.0).max() <= 1e-12
    with pytest.raises(ValueError):
        delayed_incoherent_output(params, -1.0)


def test_delayed_state_purity_profile():
    # purity interpolates as 1/4 + gamma^2/8
    params = SourceParams()
    sigma = overlap_sigma(params.lambda0, params.fwhm_lambda)
    for delta in (0.0, 50.0, 120.0, 300.0):
        g = gaussian_overlap(delta, sigma)
        rho = delayed_incoherent_output(params, delta)
        assert purity(rho) == pytest.approx(0.25 + g * g / 8.0, abs=1e-12)


def test_delayed_discord_decreases():
    params = SourceParams()
    deltas = [0.0, 60.0, 120.0, 200.0, 320.0, 500.0]
    values = [discord(delayed_incoherent_output(params, d)).discord for d in deltas]
    assert all(a >= b - 1e-9 for a, b in zip(values, values[1:]))
    assert values[0] == pytest.approx(0.31127812445913285, abs=1e-6)
    assert values[-1] <= 1e-6


def test_hom_dip_shape():
    params = SourceParams()
    deltas = np.linspace(-400, 400, 81)
    curve = hom_dip(params, deltas)
    assert curve.shape == (81, 2)
    assert np.allclose(curve[:, 0], deltas)
    # dip bottom at zero delay, classical visibility exactly 1/2
    assert curve[40, 1] == pytest.approx(1.0 - CLASSICAL_HOM_VISIBILITY, abs=1e-12)
    assert curve[:, 1].max() <= 1.0 + 1e-12
    assert np.all(curve[:, 1] >= 0.5 - 1e-12)
    # symmetric in delay
    assert np.allclose(curve[:, 1], curve[::-1, 1], atol=1e-12)


def test_hom_dip_fwhm_crossings():
    # rate at delta = fwhm/2 sits halfway between floor and ceiling
    params = SourceParams()
    half = hom_dip_fwhm(params) / 2.0
    rate = hom_dip(params, np.array([half]))[0, 1]
    assert rate == pytest.approx(0.75, abs=1e-9)


def test_two_qubit_measures_of_source_states():
    rho_c = coherent_output(SourceParams(phi=0.9))
    assert concurrence(rho_c) <= 1e-8
    assert discord(rho_c).discord <= 1e-6
    rho_i = incoherent_output(SourceParams())
    assert concurrence(rho_i) == 0.0
    assert discord(rho_i).discord == pytest.approx(0.31127812445913285, abs=1e-6)
