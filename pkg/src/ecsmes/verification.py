"""Named acceptance checks, shared by ``ecsmes verify`` and the test suite.

Each criterion function returns a list of :class:`Check` records. A check
compares a measured ``value`` with an ``expected`` value under ``tol`` using one
of three rules: ``abs`` (|value - expected| <= tol), ``below`` (value <
expected - tol) or ``at_most`` (value <= expected, with tol reported).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import branch as br
from . import fock as fk
from . import schemes as sc
from .gates import CrossKerr
from .measures import (
    ckw_residual,
    concurrence_from_spectrum,
    concurrence_pure_two_qubit,
    entanglement_entropy,
    w_state,
    wootters_concurrence,
)
from .two_branch import (
    TwoBranchDescriptor,
    build_family,
    concurrence_closed_form,
    cross_kerr_concurrence,
    cross_kerr_descriptor,
    four_term_analysis,
    multipartite_cut_reduce,
    qubit_embedding,
)

__all__ = ["Check", "CRITERIA", "run_suite", "ecs3_cut_concurrence"]

SEED = 20011


@dataclass(frozen=True)
class Check:
    check: str
    passed: bool
    value: float
    expected: float
    tol: float

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "pass": bool(self.passed),
            "value": float(self.value),
            "expected": float(self.expected),
            "tol": float(self.tol),
        }

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.check}: value={self.value:.15g} expected={self.expected:.15g} tol={self.tol:g}"


def _abs(name: str, value: float, expected: float, tol: float) -> Check:
    return Check(name, bool(abs(value - expected) <= tol), value, expected, tol)


def _below(name: str, value: float, bound: float, margin: float) -> Check:
    return Check(name, bool(value < bound - margin), value, bound, margin)


def _at_most(name: str, value: float, bound: float) -> Check:
    return Check(name, bool(value <= bound), value, bound, bound)


def _unit_disk(rng: np.random.Generator, size: int) -> np.ndarray:
    r = np.sqrt(rng.uniform(0.0, 1.0, size))
    return r * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, size))


def _random_unit(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_descriptors(n: int, seed: int = SEED) -> list[TwoBranchDescriptor]:
    """mu, nu uniform in the unit disk; p1, p2 overlaps of random unit vectors in C^4."""
    rng = np.random.default_rng(seed)
    mus, nus = _unit_disk(rng, n), _unit_disk(rng, n)
    out = []
    for mu, nu in zip(mus, nus):
        p1 = np.vdot(_random_unit(rng, 4), _random_unit(rng, 4))
        p2 = np.vdot(_random_unit(rng, 4), _random_unit(rng, 4))
        out.append(TwoBranchDescriptor(mu, nu, p1, p2))
    return out


def criterion_1() -> list[Check]:
    start = time.perf_counter()
    worst = 0.0
    for d in random_descriptors(1000):
        amps = qubit_embedding(d)
        worst = max(worst, abs(concurrence_closed_form(d) - concurrence_pure_two_qubit(*amps.as_tuple())))
    elapsed = time.perf_counter() - start
    return [
        _abs("c01_closed_form_vs_embedding_max_delta", worst, 0.0, 1e-10),
        _at_most("c01_runtime_seconds", elapsed, 5.0),
    ]


def _fock_cut_measures(state: br.BranchState, keep: list[int], cutoff: int) -> tuple[float, float]:
    spectrum = fk.reduced_density(fk.synthesize(state, cutoff), keep).spectrum()
    return concurrence_from_spectrum(spectrum), entanglement_entropy(spectrum)


def criterion_2() -> list[Check]:
    rng = np.random.default_rng(SEED + 2)
    pairs = zip(2.0 * _unit_disk(rng, 200), 2.0 * _unit_disk(rng, 200))
    cutoff = fk.choose_cutoff(2.0)
    dev = {"closed": 0.0, "branch_c": 0.0, "branch_s": 0.0, "fock_c": 0.0, "fock_s": 0.0}
    for a, b in pairs:
        p = br.coherent_overlap(a, b)
        dev["closed"] = max(dev["closed"], abs(concurrence_closed_form(build_family("antisymmetric", p)) - 1.0))
        state = br.normalize(br.BranchState([1.0, -1.0], [[a, b], [b, a]]))
        spectrum = br.schmidt_across_cut(state, [0])
        dev["branch_c"] = max(dev["branch_c"], abs(concurrence_from_spectrum(spectrum) - 1.0))
        dev["branch_s"] = max(dev["branch_s"], abs(entanglement_entropy(spectrum) - 1.0))
        fc, fs = _fock_cut_measures(state, [0], cutoff)
        dev["fock_c"] = max(dev["fock_c"], abs(fc - 1.0))
        dev["fock_s"] = max(dev["fock_s"], abs(fs - 1.0))
    return [
        _abs("c02_closed_form_concurrence_max_delta", dev["closed"], 0.0, 1e-10),
        _abs("c02_branch_concurrence_max_delta", dev["branch_c"], 0.0, 1e-10),
        _abs("c02_branch_entropy_max_delta", dev["branch_s"], 0.0, 1e-10),
        _abs("c02_fock_concurrence_max_delta", dev["fock_c"], 0.0, 1e-8),
        _abs("c02_fock_entropy_max_delta", dev["fock_s"], 0.0, 1e-8),
    ]


def criterion_3() -> list[Check]:
    rng = np.random.default_rng(SEED + 3)
    overlaps = np.sqrt(rng.uniform(0.0, 1.0, 100)) * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, 100))
    worst = 0.0
    for p in overlaps:
        expected = (1.0 - abs(p) ** 2) / (1.0 + abs(p) ** 2)
        worst = max(worst, abs(concurrence_closed_form(build_family("symmetric", p)) - expected))
    # coherent realization |1>|-1> + |-1>|1> has <1|-1> = e^-2
    branch_state = br.normalize(br.BranchState([1.0, 1.0], [[1.0, -1.0], [-1.0, 1.0]]))
    branch_value = concurrence_from_spectrum(br.schmidt_across_cut(branch_state, [0]))
    exact = (1.0 - math.exp(-4.0)) / (1.0 + math.exp(-4.0))
    closed = concurrence_closed_form(build_family("symmetric", math.exp(-2.0)))
    return [
        _abs("c03_symmetric_formula_max_delta", worst, 0.0, 1e-12),
        _abs("c03_symmetric_p_e-2_closed_form", closed, exact, 1e-12),
        _abs("c03_symmetric_p_e-2_branch_engine", branch_value, exact, 1e-10),
        _abs("c03_symmetric_p_e-2_decimal", closed, 0.9640276, 5e-8),
    ]


def cross_kerr_fock_concurrence(alpha: float, beta: float) -> float:
    cutoff = fk.choose_cutoff(max(abs(alpha), abs(beta)))
    out = fk.apply_gate(fk.synthesize(br.coherent_state(alpha, beta), cutoff), CrossKerr(0, 1))
    return concurrence_from_spectrum(fk.reduced_density(out, [0]).spectrum())


def criterion_4() -> list[Check]:
    checks = []
    for a in (0.25, 0.5, 1.0, 1.5, 2.0):
        closed = cross_kerr_concurrence(a, a)
        checks.append(_abs(f"c04_cross_kerr_fock_vs_closed_a{a:g}", cross_kerr_fock_concurrence(a, a), closed, 1e-8))
        checks.append(_abs(f"c04_cross_kerr_four_term_vs_closed_a{a:g}", four_term_analysis(cross_kerr_descriptor(a, a))[1], closed, 1e-12))
    exact = 1.0 - math.exp(-4.0)
    checks.append(_abs("c04_closed_form_a1", cross_kerr_concurrence(1.0, 1.0), exact, 1e-8))
    checks.append(_abs("c04_fock_a1", cross_kerr_fock_concurrence(1.0, 1.0), exact, 1e-8))
    return checks


def criterion_5() -> list[Check]:
    w3 = fk.apply_gates(fk.basis_state(1, [1, 0, 0]), fk.un_network(3))
    psi = w3.vector
    c12 = wootters_concurrence(fk.reduced_density(w3, [0, 1]))
    c13 = wootters_concurrence(fk.reduced_density(w3, [0, 2]))
    c1_23 = concurrence_from_spectrum(fk.reduced_density(w3, [0]).spectrum())
    checks = [
        _abs("c05_w3_C12", c12, 2.0 / 3.0, 1e-12),
        _abs("c05_w3_C13", c13, 2.0 / 3.0, 1e-12),
        _abs("c05_w3_C1_23", c1_23, 2.0 * math.sqrt(2.0) / 3.0, 1e-12),
        _abs("c05_w3_state_elementwise", float(np.max(np.abs(psi - w_state(3)))), 0.0, 1e-12),
    ]
    for n in range(3, 7):
        checks.append(_below(f"c05_ckw_residual_w{n}", ckw_residual(w_state(n), 0), 1e-12, 0.0))
    return checks


def ecs3_cut_concurrence(alpha: float) -> float:
    """Closed form for mode 1 | modes 2,3 of |a;-a>_3."""
    x = abs(alpha) ** 2
    return math.sqrt(math.expm1(-4 * x) * math.expm1(-8 * x)) / -math.expm1(-6 * x)


def criterion_6() -> list[Check]:
    alphas = np.geomspace(1e-3, 3.0, 25)
    worst = {"reduce": 0.0, "branch": 0.0, "fock": 0.0}
    for a in alphas:
        display = ecs3_cut_concurrence(a)
        reduced = concurrence_closed_form(multipartite_cut_reduce("ecs_pm", {"alpha": a, "n": 3}, [0]))
        state = br.normalize(br.BranchState([1.0, -1.0], [[a, a, a], [-a, -a, -a]]))
        branch_value = concurrence_from_spectrum(br.schmidt_across_cut(state, [0]))
        fock_value, _ = _fock_cut_measures(state, [0], fk.choose_cutoff(a))
        worst["reduce"] = max(worst["reduce"], abs(reduced - display))
        worst["branch"] = max(worst["branch"], abs(branch_value - display))
        worst["fock"] = max(worst["fock"], abs(fock_value - display))
    return [
        _abs("c06_cut_reduce_vs_display_max_delta", worst["reduce"], 0.0, 1e-8),
        _abs("c06_branch_vs_display_max_delta", worst["branch"], 0.0, 1e-8),
        _abs("c06_fock_vs_display_max_delta", worst["fock"], 0.0, 1e-8),
        _abs("c06_small_alpha_limit", ecs3_cut_concurrence(1e-3), 2.0 * math.sqrt(2.0) / 3.0, 1e-4),
        Check("c06_large_alpha_limit", ecs3_cut_concurrence(3.0) > 1.0 - 1e-6, ecs3_cut_concurrence(3.0), 1.0, 1e-6),
        _abs("c06_alpha_1_value", ecs3_cut_concurrence(1.0), 0.9930952942810848, 1e-8),
    ]


def criterion_7() -> list[Check]:
    opc = sc.run_beamsplitter_scheme("odd_plus_coherent", 1.2, 0.7)
    two_even = sc.run_beamsplitter_scheme("two_even", 1.0)
    odd_even = sc.run_beamsplitter_scheme("odd_even", 1.0)
    return [
        _abs("c07_odd_plus_coherent_fidelity", opc.fidelity_to_target, 1.0, 1e-10),
        _abs("c07_odd_plus_coherent_entropy", opc.entropy_ebits, 1.0, 1e-10),
        _below("c07_two_even_entropy_not_mes", two_even.entropy_ebits, 1.0, 1e-6),
        _below("c07_odd_even_entropy_not_mes", odd_even.entropy_ebits, 1.0, 1e-6),
    ]


def criterion_8() -> list[Check]:
    start = time.perf_counter()
    checks = []
    for n in (2, 3, 4):
        report = sc.run_kerr_un(0.6, n)
        checks.append(Check(f"c08_kerr_un_n{n}_fock_fidelity", report.checks["fock_fidelity"] >= 1 - 1e-8, report.checks["fock_fidelity"], 1.0, 1e-8))
        checks.append(Check(f"c08_kerr_un_n{n}_branch_fidelity", report.checks["branch_fidelity"] >= 1 - 1e-12, report.checks["branch_fidelity"], 1.0, 1e-12))
    checks.append(_at_most("c08_runtime_seconds", time.perf_counter() - start, 60.0))
    return checks


def criterion_9() -> list[Check]:
    checks = []
    for n in range(2, 9):
        out = fk.apply_gates(fk.basis_state(1, [1] + [0] * (n - 1)), fk.un_network(n))
        checks.append(_abs(f"c09_w{n}_elementwise", float(np.max(np.abs(out.vector - w_state(n)))), 0.0, 1e-12))
    w4 = fk.apply_gates(fk.basis_state(1, [1, 0, 0, 0]), fk.un_network(4))
    spectrum = fk.reduced_density(w4, [0, 1]).spectrum()
    checks.append(_abs("c09_w4_half_cut_lambda_0", spectrum[0], 0.5, 1e-12))
    checks.append(_abs("c09_w4_half_cut_lambda_1", spectrum[1], 0.5, 1e-12))
    return checks


def criterion_10() -> list[Check]:
    checks = []
    for n in (2, 3, 4, 5):
        report = sc.run_cascade(1.0, n)
        checks.append(_abs(f"c10_cascade_n{n}_C1_rest", report.concurrence, 1.0, 1e-10))
        checks.append(_abs(f"c10_cascade_n{n}_labels", report.checks["label_deviation"], 0.0, 1e-12))
    return checks


def criterion_11() -> list[Check]:
    report = sc.run_cswap(br.coherent_state(1.0), br.coherent_state(-1.0))
    expected_p = math.exp(-2.0)
    return [
        _abs("c11_cswap_fidelity", report.fidelity_to_target, 1.0, 1e-10),
        _abs("c11_cswap_input_overlap", report.checks["overlap_abs"], expected_p, 1e-12),
        _abs("c11_cswap_success_probability", report.success_probability, (1.0 - math.exp(-4.0)) / 2.0, 1e-10),
        _abs("c11_cswap_success_probability_decimal", report.success_probability, 0.4908422, 5e-8),
    ]


CRITERIA: dict[int, Callable[[], list[Check]]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
    11: criterion_11,
}


def run_suite(suite: str = "all") -> list[Check]:
    """Run ``all`` criteria or a comma-separated list of criterion numbers."""
    if suite == "all":
        ids = sorted(CRITERIA)
    else:
        try:
            ids = [int(x) for x in suite.split(",") if x.strip()]
        except ValueError as exc:
            raise ValueError(f"suite must be 'all' or criterion numbers, got {suite!r}") from exc
        unknown = [i for i in ids if i not in CRITERIA]
        if unknown or not ids:
            raise ValueError(f"unknown criteria {unknown or suite!r}; valid: 1..{max(CRITERIA)}")
    checks: list[Check] = []
    for i in ids:
        checks.extend(CRITERIA[i]())
    return checks
