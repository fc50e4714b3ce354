import cmath
import math

import numpy as np
import pytest

from ecsmes import branch as br
from ecsmes import fock as fk
from ecsmes.errors import CapacityError, DomainError, NullStateError
from ecsmes.gates import BS50, BSTheta, CrossKerr, CurlyB, Displace, Kerr, Phase
from ecsmes.measures import concurrence_from_spectrum, entanglement_entropy
from ecsmes.two_branch import TwoBranchDescriptor, concurrence_closed_form, cut_overlaps

E2 = math.exp(-2.0)


def random_state(rng, modes=2, branches=3, scale=0.8):
    coeffs = rng.normal(size=branches) + 1j * rng.normal(size=branches)
    labels = scale * (rng.normal(size=(branches, modes)) + 1j * rng.normal(size=(branches, modes)))
    return br.normalize(br.BranchState(coeffs, labels))


# overlaps and normalization ---------------------------------------------------------


def test_coherent_overlap_examples():
    assert br.coherent_overlap(0.3 + 0.4j, 0.3 + 0.4j) == pytest.approx(1.0, abs=1e-15)
    assert br.coherent_overlap(1, -1) == pytest.approx(E2, abs=1e-15)
    a = cmath.exp(1j * math.pi / 4)
    assert br.coherent_overlap(a, a.conjugate()) == pytest.approx(cmath.exp(-1 - 1j), abs=1e-12)


def test_coherent_overlap_against_truncated_vectors():
    a, b = cmath.exp(1j * math.pi / 4), cmath.exp(-1j * math.pi / 4)
    va, vb = fk.coherent_vector(a, 30), fk.coherent_vector(b, 30)
    assert np.vdot(va, vb) == pytest.approx(br.coherent_overlap(a, b), abs=1e-12)


def test_normalize_cancellation():
    with pytest.raises(NullStateError):
        br.normalize(br.BranchState([1, -1], [[0.5], [0.5]]))


def test_normalize_odd_cat():
    s = br.normalize(br.BranchState([1, -1], [[1], [-1]]))
    # one mode: <1|-1> = e^-2
    n12 = math.sqrt(2 - 2 * math.exp(-2))
    assert sorted(np.abs(s.coeffs)) == pytest.approx([1 / n12, 1 / n12], abs=1e-12)
    assert fk.synthesize(br.BranchState([1, -1], [[1], [-1]]), 30).norm == pytest.approx(n12, abs=1e-12)


def test_normalize_vacuum():
    s = br.normalize(br.coherent_state(0.0))
    assert s.n_branches == 1
    assert s.coeffs[0] == pytest.approx(1.0)
    assert s.labels[0, 0] == 0


def test_branch_state_is_read_only():
    s = br.coherent_state(1.0, 2.0)
    with pytest.raises(ValueError):
        s.labels[0, 0] = 3.0


def test_json_round_trip(rng):
    s = random_state(rng, modes=3, branches=4)
    back = br.BranchState.from_json(s.to_json())
    assert np.array_equal(back.coeffs, s.coeffs)
    assert np.array_equal(back.labels, s.labels)
    assert s.to_dict()["modes"] == 3


def test_json_rejects_ragged_labels():
    with pytest.raises(DomainError):
        br.BranchState.from_dict({"modes": 2, "branches": [{"coeff": [1, 0], "labels": [[1, 0]]}]})


# linear optics -------------------------------------------------------------------------


def test_curly_b_example():
    a, b = 0.9 + 0.2j, -0.4j
    out = br.apply_gate(br.coherent_state(a, b), CurlyB(0, 1))
    assert out.labels[0] == pytest.approx([(a + b) / math.sqrt(2), (a - b) / math.sqrt(2)])


def test_bs50_example():
    a = 1.3
    out = br.apply_gate(br.coherent_state(a, 0), BS50(0, 1))
    assert out.labels[0] == pytest.approx([a / math.sqrt(2), 1j * a / math.sqrt(2)])


def test_phase_and_curly_b_make_antisymmetric_form():
    alpha, beta = 1.2, 0.7
    inp = br.tensor(br.cat_state(alpha, "odd"), br.coherent_state(beta))
    out = br.apply_gates(inp, [CurlyB(0, 1), Phase(1, -math.pi)])
    ep, em = (alpha + beta) / math.sqrt(2), (alpha - beta) / math.sqrt(2)
    target = br.normalize(br.BranchState([1, -1], [[ep, -em], [-em, ep]]))
    assert br.fidelity(out, target) == pytest.approx(1.0, abs=1e-10)


def test_curly_b_equals_phase_bs50_phase(rng):
    for _ in range(50):
        s = random_state(rng)
        direct = br.apply_gate(s, CurlyB(0, 1))
        composed = br.apply_gates(s, [Phase(1, -math.pi / 2), BS50(0, 1), Phase(1, -math.pi / 2)])
        assert br.fidelity(direct, composed) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize(
    "gate",
    [BS50(0, 1), CurlyB(1, 2), BSTheta(0, 2, 0.37), Phase(1, 1.1), Displace(2, 0.3 - 0.5j)],
)
def test_linear_optics_preserves_norm(rng, gate):
    for _ in range(20):
        s = random_state(rng, modes=3)
        assert br.norm(br.apply_gate(s, gate)) == pytest.approx(1.0, abs=1e-12)


def test_displacement_phase_convention():
    # D(d)|x> = exp((d x* - d* x)/2)|x + d>
    x, d = 0.4 + 0.1j, 0.2 - 0.3j
    out = br.apply_gate(br.coherent_state(x), Displace(0, d))
    assert out.labels[0, 0] == pytest.approx(x + d)
    assert out.coeffs[0] == pytest.approx(cmath.exp(0.5 * (d * x.conjugate() - d.conjugate() * x)))


def test_cross_kerr_not_a_branch_gate():
    with pytest.raises(DomainError):
        br.apply_gate(br.coherent_state(1, 1), CrossKerr(0, 1))


def test_mode_index_checked():
    with pytest.raises(DomainError):
        br.apply_gate(br.coherent_state(1, 1), Phase(2, 0.1))


# Kerr ---------------------------------------------------------------------------------


def test_kerr_example():
    out = br.apply_kerr(br.coherent_state(1.0), 0)
    target = br.BranchState([1 / math.sqrt(2), 1j / math.sqrt(2)], [[1.0], [-1.0]])
    assert br.fidelity(br.normalize(out), br.normalize(target)) == pytest.approx(1.0, abs=1e-12)
    assert out.n_branches == 2


def test_kerr_on_vacuum_merges():
    out = br.apply_kerr(br.coherent_state(0.0), 0)
    assert out.n_branches == 1
    assert out.coeffs[0] == pytest.approx(cmath.exp(1j * math.pi / 4), abs=1e-15)


def test_kerr_keeps_small_cats_distinct():
    out = br.apply_kerr(br.coherent_state(1e-5), 0)
    assert out.n_branches == 2


def test_kerr_matches_fock_gate():
    alpha = 0.9 - 0.3j
    cutoff = fk.choose_cutoff(abs(alpha))
    branch_out = br.apply_kerr(br.coherent_state(alpha), 0)
    fock_out = fk.apply_gate(fk.synthesize(br.coherent_state(alpha), cutoff), Kerr(0))
    assert fk.fock_fidelity(fock_out, fk.synthesize(branch_out, cutoff)) == pytest.approx(1.0, abs=1e-10)


def test_kerr_twice_matches_fock_gate_twice():
    alpha = 1.1
    cutoff = fk.choose_cutoff(alpha)
    s = br.coherent_state(alpha)
    branch_out = br.apply_gates(s, [Kerr(0), Kerr(0)])
    fock_out = fk.apply_gates(fk.synthesize(s, cutoff), [Kerr(0), Kerr(0)])
    assert fk.fock_fidelity(fock_out, fk.synthesize(branch_out, cutoff)) == pytest.approx(1.0, abs=1e-10)
    # K^2 = exp(-i pi n^2) is the parity operator, which maps |a> to |-a>
    assert br.fidelity(br.normalize(branch_out), br.coherent_state(-alpha)) == pytest.approx(1.0, abs=1e-12)


def test_kerr_branch_cap():
    s = br.coherent_state(*[0.5 + 0.1 * k for k in range(4)])
    assert br.apply_gates(s, [Kerr(0), Kerr(1), Kerr(2)]).n_branches == 8
    with pytest.raises(CapacityError):
        br.apply_kerr(br.apply_gates(s, [Kerr(0), Kerr(1)]), 2, max_branches=4)


# Schmidt decomposition -------------------------------------------------------------------


def test_schmidt_ecs_is_one_ebit():
    s = br.normalize(br.BranchState([1, -1], [[1, -1], [-1, 1]]))
    spectrum = br.schmidt_across_cut(s, [0])
    assert spectrum.lambdas[:2] == pytest.approx((0.5, 0.5), abs=1e-12)
    assert entanglement_entropy(spectrum) == pytest.approx(1.0, abs=1e-12)


def test_schmidt_product_branch():
    spectrum = br.schmidt_across_cut(br.coherent_state(0.3, -1.2j), [1])
    assert spectrum.rank == 1
    assert entanglement_entropy(spectrum) == pytest.approx(0.0, abs=1e-12)


def test_schmidt_ecs3():
    s = br.normalize(br.BranchState([1, -1], [[1, 1, 1], [-1, -1, -1]]))
    assert concurrence_from_spectrum(br.schmidt_across_cut(s, [0])) == pytest.approx(0.9930952942810848, abs=1e-12)


def test_schmidt_matches_closed_form(rng):
    for _ in range(100):
        mu, nu = rng.normal(size=2) + 1j * rng.normal(size=2)
        plus = rng.normal(size=(2, 3)) + 1j * rng.normal(size=(2, 3))
        s = br.normalize(br.BranchState([mu, nu], plus))
        q = br.coherent_overlap(plus[0], plus[1])
        p1, p2 = cut_overlaps(q, [0])
        d = TwoBranchDescriptor(mu, nu, p1, p2)
        assert concurrence_from_spectrum(br.schmidt_across_cut(s, [0])) == pytest.approx(
            concurrence_closed_form(d), abs=1e-12
        )


def test_schmidt_matches_fock_reduction(rng):
    for _ in range(20):
        s = random_state(rng, modes=3, branches=3, scale=0.6)
        cutoff = fk.choose_cutoff(float(np.max(np.abs(s.labels))))
        branch_spec = br.schmidt_across_cut(s, [0])
        fock_spec = fk.reduced_density(fk.synthesize(s, cutoff), [0]).spectrum()
        k = min(len(branch_spec), len(fock_spec))
        assert branch_spec.lambdas[:k] == pytest.approx(fock_spec.lambdas[:k], abs=1e-8)


def test_schmidt_requires_normalized_state():
    with pytest.raises(DomainError):
        br.schmidt_across_cut(br.BranchState([2.0], [[0.1, 0.2]]), [0])
    with pytest.raises(DomainError):
        br.schmidt_across_cut(br.coherent_state(0.1, 0.2), [0, 1])


# fidelity -------------------------------------------------------------------------------


def test_fidelity_examples(rng):
    s = random_state(rng)
    assert br.fidelity(s, s) == pytest.approx(1.0, abs=1e-12)
    assert br.fidelity(br.coherent_state(1), br.coherent_state(-1)) == pytest.approx(math.exp(-4), abs=1e-15)
    v1, v2 = fk.synthesize(br.coherent_state(1), 30), fk.synthesize(br.coherent_state(-1), 30)
    assert fk.fock_fidelity(v1, v2) == pytest.approx(math.exp(-4), abs=1e-12)


def test_fidelity_ignores_global_phase(rng):
    s = random_state(rng)
    rotated = br.BranchState(s.coeffs * cmath.exp(0.8j), s.labels)
    assert br.fidelity(s, rotated) == pytest.approx(1.0, abs=1e-12)


def test_tensor_product_overlaps():
    a, b = br.cat_state(0.8, "even"), br.cat_state(0.5, "odd")
    t = br.tensor(a, b)
    assert t.modes == 2
    assert br.norm(t) == pytest.approx(1.0, abs=1e-12)
    assert br.inner(br.cat_state(0.8, "even"), br.cat_state(0.8, "odd")) == pytest.approx(0.0, abs=1e-15)
