import math

import numpy as np
import pytest

from ecsmes import branch as br
from ecsmes import fock as fk
from ecsmes.errors import CapacityError, DomainError
from ecsmes.gates import BS50, BSTheta, CrossKerr, CurlyB, Displace, Kerr, Phase
from ecsmes.measures import (
    concurrence_from_spectrum,
    entanglement_entropy,
    w_state,
    wootters_concurrence,
)
from ecsmes.two_branch import cross_kerr_concurrence


def random_state(rng, modes=2, branches=2, scale=0.6):
    coeffs = rng.normal(size=branches) + 1j * rng.normal(size=branches)
    labels = scale * (rng.normal(size=(branches, modes)) + 1j * rng.normal(size=(branches, modes)))
    return br.normalize(br.BranchState(coeffs, labels))


# cutoffs and synthesis --------------------------------------------------------------


def test_choose_cutoff_vacuum():
    assert fk.choose_cutoff(0.0, 1e-14) == 10


@pytest.mark.parametrize("alpha", [1.0, 3.0])
def test_choose_cutoff_bounds_truncation(alpha):
    n = fk.choose_cutoff(alpha, 1e-14)
    assert 1.0 - np.linalg.norm(fk.coherent_vector(alpha, n)) ** 2 < 1e-14
    assert fk.choose_cutoff(alpha, 1e-14) > fk.choose_cutoff(alpha, 1e-6)


def test_choose_cutoff_rejects_bad_tolerance():
    with pytest.raises(DomainError):
        fk.choose_cutoff(1.0, 0.0)


def test_synthesize_vacuum():
    v = fk.synthesize(br.coherent_state(0.0), 5)
    expected = np.zeros(6)
    expected[0] = 1
    assert v.vector == pytest.approx(expected)


def test_synthesize_odd_cat_has_odd_support():
    v = fk.synthesize(br.normalize(br.BranchState([1, -1], [[1.0], [-1.0]])), 30)
    assert np.max(np.abs(v.vector[0::2])) < 1e-15
    assert v.norm_deficit < 1e-14


def test_synthesized_overlap_matches_closed_form():
    v1 = fk.synthesize(br.coherent_state(1.0), 30)
    v2 = fk.synthesize(br.coherent_state(-1.0), 30)
    assert np.vdot(v1.vector, v2.vector) == pytest.approx(math.exp(-2.0), abs=1e-12)


def test_synthesize_capacity_guard():
    with pytest.raises(CapacityError):
        fk.synthesize(br.coherent_state(*[1.0] * 8), 20)


def test_mode_ordering_first_mode_most_significant():
    v = fk.basis_state(1, [1, 0, 0])
    assert np.flatnonzero(v.vector).tolist() == [4]


# gates --------------------------------------------------------------------------------


def test_bs50_example():
    a = 1.1
    cutoff = fk.choose_cutoff(a)
    out = fk.apply_gate(fk.synthesize(br.coherent_state(a, 0), cutoff), BS50(0, 1))
    target = fk.synthesize(br.coherent_state(a / math.sqrt(2), 1j * a / math.sqrt(2)), cutoff)
    assert fk.fock_fidelity(out, target) == pytest.approx(1.0, abs=1e-10)


def test_kerr_example():
    cutoff = fk.choose_cutoff(1.0)
    out = fk.apply_gate(fk.synthesize(br.coherent_state(1.0), cutoff), Kerr(0))
    target = fk.synthesize(br.BranchState([1, 1j], [[1.0], [-1.0]]), cutoff)
    assert fk.fock_fidelity(out, target) == pytest.approx(1.0, abs=1e-12)


def test_cross_kerr_example():
    out = fk.apply_gate(fk.synthesize(br.coherent_state(1.0, 1.0), 30), CrossKerr(0, 1))
    conc = concurrence_from_spectrum(fk.reduced_density(out, [0]).spectrum())
    assert conc == pytest.approx(1 - math.exp(-4), abs=1e-10)
    assert conc == pytest.approx(cross_kerr_concurrence(1, 1), abs=1e-10)


@pytest.mark.parametrize(
    "gate",
    [BS50(0, 1), CurlyB(0, 1), BSTheta(1, 0, 0.7), Phase(0, 2.0), Kerr(1), CrossKerr(0, 1)],
)
def test_gates_preserve_norm(rng, gate):
    for _ in range(10):
        v = fk.synthesize(random_state(rng), 25)
        assert fk.apply_gate(v, gate).norm == pytest.approx(v.norm, abs=1e-10)


def test_beam_splitter_blocks_are_unitary():
    for kind, angle in (("exchange", math.pi / 4), ("rotation", 0.3)):
        for total, (_, _, u) in enumerate(fk._two_mode_blocks(kind, angle, 12)):
            assert u @ u.conj().T == pytest.approx(np.eye(u.shape[0]), abs=1e-12)


def test_displacement_matches_branch_engine():
    delta = 0.4 - 0.2j
    s = br.coherent_state(0.3 + 0.1j)
    cutoff = 30
    fock_out = fk.apply_gate(fk.synthesize(s, cutoff), Displace(0, delta))
    branch_out = br.apply_gate(s, Displace(0, delta))
    overlap = np.vdot(fk.synthesize(branch_out, cutoff).vector, fock_out.vector)
    # phase included: the exact amplitudes agree, not just the fidelity
    assert overlap == pytest.approx(1.0, abs=1e-12)


def test_displacement_truncation_shows_as_norm_deficit():
    v = fk.synthesize(br.coherent_state(0.0), 4)
    out = fk.apply_gate(v, Displace(0, 2.0))
    assert out.norm_deficit > 1e-3


GATE_SETS = [
    [BS50(0, 1)],
    [Phase(1, -math.pi / 2), BS50(0, 1), Phase(1, -math.pi / 2)],
    [CurlyB(0, 1)],
    [Phase(0, 0.9)],
    [Kerr(0)],
    [Displace(1, 0.3 + 0.2j)],
    [BSTheta(0, 1, -0.6)],
]


@pytest.mark.parametrize("gates", GATE_SETS, ids=lambda g: "+".join(type(x).__name__ for x in g))
def test_branch_and_fock_paths_commute(rng, gates):
    for _ in range(50):
        s = random_state(rng)
        cutoff = fk.choose_cutoff(1.5 * float(np.max(np.abs(s.labels))) + 0.5)
        via_branch = fk.synthesize(br.apply_gates(s, gates), cutoff)
        via_fock = fk.apply_gates(fk.synthesize(s, cutoff), gates)
        assert fk.fock_fidelity(via_branch, via_fock) == pytest.approx(1.0, abs=1e-8)


# reduced density -------------------------------------------------------------------


def test_product_state_reduction_is_pure():
    v = fk.synthesize(br.coherent_state(0.5, -0.7j), 20)
    rho = fk.reduced_density(v, [0])
    assert rho.spectrum().rank == 1
    assert entanglement_entropy(rho.spectrum()) == pytest.approx(0.0, abs=1e-12)


def test_ecs_reduction_is_one_ebit():
    s = br.normalize(br.BranchState([1, -1], [[1.0, -1.0], [-1.0, 1.0]]))
    spectrum = fk.reduced_density(fk.synthesize(s, 30), [0]).spectrum()
    assert spectrum.lambdas[:2] == pytest.approx((0.5, 0.5), abs=1e-10)


def test_w3_pair_concurrence():
    v = fk.FockStateVector((1, 1, 1), w_state(3))
    assert wootters_concurrence(fk.reduced_density(v, [0, 1])) == pytest.approx(2 / 3, abs=1e-12)


def test_reduced_density_guards():
    v = fk.synthesize(br.coherent_state(0.1, 0.1), 3)
    with pytest.raises(DomainError):
        fk.reduced_density(v, [0, 1])
    big = fk.synthesize(br.coherent_state(0.1, 0.1, 0.1), 70)
    with pytest.raises(CapacityError):
        fk.reduced_density(big, [0, 1])


# U_N network ----------------------------------------------------------------------------


def test_un_two_modes_splits_coherent_state():
    x = 0.6
    cutoff = fk.choose_cutoff(math.sqrt(2) * x)
    out = fk.apply_gates(fk.synthesize(br.coherent_state(math.sqrt(2) * x, 0), cutoff), fk.un_network(2))
    target = fk.synthesize(br.coherent_state(x, x), cutoff)
    assert fk.fock_fidelity(out, target) == pytest.approx(1.0, abs=1e-8)


def test_un_four_modes_makes_w_state():
    out = fk.apply_gates(fk.basis_state(1, [1, 0, 0, 0]), fk.un_network(4))
    assert fk.fock_fidelity(out, fk.FockStateVector(out.cutoffs, w_state(4))) == pytest.approx(1.0, abs=1e-12)


def test_un_leaves_vacuum_alone():
    out = fk.apply_gates(fk.basis_state(3, [0, 0]), fk.un_network(2))
    assert abs(out.vector[0]) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("n", range(2, 9))
def test_un_uniform_spread(n):
    out = fk.apply_gates(fk.basis_state(1, [1] + [0] * (n - 1)), fk.un_network(n))
    assert np.max(np.abs(out.vector - w_state(n))) < 1e-12


@pytest.mark.parametrize("convention", ["literal", "negated"])
def test_other_angle_readings_are_not_uniform_for_three_modes(convention):
    out = fk.apply_gates(fk.basis_state(1, [1, 0, 0]), fk.un_network(3, convention))
    weights = np.sort(np.abs(out.vector[[4, 2, 1]]))
    assert weights == pytest.approx([1 / math.sqrt(6), 1 / math.sqrt(6), math.sqrt(2 / 3)], abs=1e-12)


@pytest.mark.parametrize("convention", ["literal", "negated"])
def test_other_angle_readings_agree_for_two_modes_up_to_sign(convention):
    out = fk.apply_gates(fk.basis_state(1, [1, 0]), fk.un_network(2, convention))
    assert np.abs(out.vector[[2, 1]]) == pytest.approx([1 / math.sqrt(2)] * 2, abs=1e-12)


def test_un_network_validation():
    with pytest.raises(DomainError):
        fk.un_network(1)
    with pytest.raises(DomainError):
        fk.un_network(3, "sideways")
