import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ecsmes.errors import DomainError, UnsupportedMeasureError
from ecsmes.measures import (
    SIGMA_Y,
    DensityMatrix,
    SchmidtSpectrum,
    ckw_residual,
    concurrence_from_spectrum,
    concurrence_pure_two_qubit,
    entanglement_entropy,
    reduced_density_pure,
    two_branch_spectrum,
    w_state,
    wootters_concurrence,
)


def random_pure(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


@pytest.mark.parametrize(
    "x, expected",
    [(0.5, (0.5, 0.5)), (0.0, (1.0, 0.0)), (0.3, (0.9, 0.1))],
)
def test_two_branch_spectrum_examples(x, expected):
    assert two_branch_spectrum(x).lambdas == pytest.approx(expected, abs=1e-12)


def test_two_branch_spectrum_matches_explicit_state():
    # a|00> + d|11> with |a d| = 0.3
    a, d = math.sqrt(0.9), math.sqrt(0.1)
    psi = np.array([a, 0, 0, d])
    rho = DensityMatrix(reduced_density_pure(psi, (2, 2), [0]))
    assert rho.spectrum().lambdas == pytest.approx(two_branch_spectrum(a * d).lambdas, abs=1e-12)


def test_two_branch_spectrum_rejects_unnormalized():
    with pytest.raises(DomainError):
        two_branch_spectrum(0.6)


@pytest.mark.parametrize(
    "spectrum, expected",
    [((0.5, 0.5), 1.0), ((1.0, 0.0), 0.0), ((0.9, 0.1), 0.4689955935892812)],
)
def test_entropy_examples(spectrum, expected):
    assert entanglement_entropy(spectrum) == pytest.approx(expected, abs=1e-12)


def test_entropy_matches_density_matrix_route():
    psi = np.array([math.sqrt(0.9), 0, 0, math.sqrt(0.1)])
    rho = DensityMatrix(reduced_density_pure(psi, (2, 2), [1]))
    assert entanglement_entropy(rho.spectrum()) == pytest.approx(0.4689955935892812, abs=1e-12)


@given(st.floats(0.0, 1.0))
def test_entropy_permutation_invariant_and_bounded(p):
    forward = entanglement_entropy((p, 1 - p))
    assert forward == pytest.approx(entanglement_entropy((1 - p, p)), abs=1e-15)
    assert forward <= 1.0 + 1e-15


@pytest.mark.parametrize(
    "amps, expected",
    [
        ((1 / math.sqrt(2), 0, 0, 1 / math.sqrt(2)), 1.0),
        ((0.5, 0.5, 0.5, 0.5), 0.0),
        ((0.6, 0, 0, 0.8), 0.96),
    ],
)
def test_pure_concurrence_examples(amps, expected):
    assert concurrence_pure_two_qubit(*amps) == pytest.approx(expected, abs=1e-12)


def test_pure_concurrence_matches_spin_flip_overlap(rng):
    yy = np.kron(SIGMA_Y, SIGMA_Y)
    for _ in range(1000):
        psi = random_pure(rng, 4)
        assert concurrence_pure_two_qubit(*psi) == pytest.approx(abs(psi @ yy @ psi), abs=1e-12)


def test_pure_concurrence_rejects_unnormalized():
    with pytest.raises(DomainError):
        concurrence_pure_two_qubit(1, 1, 0, 0)


@pytest.mark.parametrize(
    "spectrum, expected", [((0.5, 0.5), 1.0), ((1.0, 0.0), 0.0), ((0.9, 0.1), 0.6)]
)
def test_concurrence_from_spectrum_examples(spectrum, expected):
    assert concurrence_from_spectrum(spectrum) == pytest.approx(expected, abs=1e-12)


def test_concurrence_from_spectrum_agrees_with_pure_form():
    assert concurrence_from_spectrum((0.9, 0.1)) == pytest.approx(
        concurrence_pure_two_qubit(math.sqrt(0.9), 0, 0, math.sqrt(0.1)), abs=1e-12
    )


@given(st.floats(0.0, 0.5))
def test_concurrence_of_two_branch_spectrum_is_2x(x):
    assert concurrence_from_spectrum(two_branch_spectrum(x)) == pytest.approx(2 * x, abs=1e-7)


def test_concurrence_refused_above_rank_two():
    with pytest.raises(UnsupportedMeasureError):
        concurrence_from_spectrum((0.4, 0.3, 0.3))
    assert entanglement_entropy((0.4, 0.3, 0.3)) > 1.0


def test_wootters_examples():
    phi = np.array([1, 0, 0, 1]) / math.sqrt(2)
    assert wootters_concurrence(np.outer(phi, phi)) == pytest.approx(1.0, abs=1e-12)
    assert wootters_concurrence(np.eye(4) / 4) == pytest.approx(0.0, abs=1e-12)
    w3 = w_state(3)
    rho12 = reduced_density_pure(w3, (2, 2, 2), [0, 1])
    assert wootters_concurrence(rho12) == pytest.approx(2 / 3, abs=1e-12)


def test_wootters_on_pure_projector_matches_pure_formula(rng):
    for _ in range(200):
        psi = random_pure(rng, 4)
        rho = np.outer(psi, psi.conj())
        assert wootters_concurrence(rho) == pytest.approx(concurrence_pure_two_qubit(*psi), abs=1e-10)


def test_wootters_needs_two_qubits():
    with pytest.raises(DomainError):
        wootters_concurrence(np.eye(3) / 3)


def test_ckw_examples():
    assert ckw_residual(w_state(3), 0) < 1e-12
    product = np.zeros(8)
    product[0] = 1.0
    assert ckw_residual(product, 0) == pytest.approx(0.0, abs=1e-15)
    assert ckw_residual(w_state(4), 0) < 1e-12


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_ckw_saturated_by_w_states(n):
    assert ckw_residual(w_state(n), 0) < 1e-12


def test_ckw_strict_for_ghz():
    # GHZ: no pairwise concurrence but a full ebit across the cut
    ghz = np.zeros(8)
    ghz[0] = ghz[7] = 1 / math.sqrt(2)
    assert ckw_residual(ghz, 0) == pytest.approx(1.0, abs=1e-12)


def test_spectrum_validation():
    with pytest.raises(DomainError):
        SchmidtSpectrum((0.7, 0.7))
    with pytest.raises(DomainError):
        SchmidtSpectrum((1.1, -0.1))
    clipped = SchmidtSpectrum((1.0 + 1e-13, -1e-13))
    assert clipped.lambdas == (pytest.approx(1.0), 0.0)
    assert SchmidtSpectrum((0.2, 0.8)).lambdas == (0.8, 0.2)


def test_density_matrix_validation():
    with pytest.raises(DomainError):
        DensityMatrix(np.array([[0.5, 0.1], [0.2, 0.5]]))
    with pytest.raises(DomainError):
        DensityMatrix(np.eye(2))
    with pytest.raises(DomainError):
        DensityMatrix(np.diag([1.5, -0.5]))


def test_w_state_amplitudes():
    psi = w_state(3)
    assert np.flatnonzero(psi).tolist() == [1, 2, 4]
    assert np.allclose(psi[[1, 2, 4]], 1 / math.sqrt(3))
