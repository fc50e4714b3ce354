"""Exact engine for superpositions of coherent product states.

A :class:`BranchState` is ``sum_b c_b |l_b1> x ... x |l_bM>`` stored as a
coefficient vector and a label matrix. Overlaps are analytic, linear optics acts
as a linear map on labels, and the Kerr gate doubles the branch count.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, DomainError, NullStateError
from .gates import BS50, BSTheta, CurlyB, Displace, Gate, Kerr, Phase, check_modes
from .measures import SchmidtSpectrum

__all__ = [
    "BranchState",
    "coherent_overlap",
    "coherent_state",
    "cat_state",
    "tensor",
    "inner",
    "norm",
    "normalize",
    "canonicalize",
    "apply_linear_optics",
    "apply_kerr",
    "apply_gate",
    "apply_gates",
    "schmidt_across_cut",
    "fidelity",
    "MAX_BRANCHES",
]

MERGE_TOL = 1e-12
PRUNE_TOL = 1e-14
NULL_TOL = 1e-12
RANK_RTOL = 1e-12
MAX_BRANCHES = 4096

_SQRT_HALF = np.sqrt(0.5)


@dataclass(frozen=True, eq=False)
class BranchState:
    """Superposition of products of coherent states.

    ``coeffs`` has shape (B,), ``labels`` has shape (B, M) with one complex
    coherent amplitude per mode. Arrays are read-only.
    """

    coeffs: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        lab = np.array(self.labels, dtype=complex)
        if lab.ndim == 1:
            lab = lab.reshape(c.size, -1)
        if lab.ndim != 2 or lab.shape[0] != c.size or lab.shape[1] < 1:
            raise DomainError(f"labels shape {lab.shape} does not match {c.size} branches")
        if not np.any(np.abs(c) > 0):
            raise NullStateError("branch state has no nonzero coefficient")
        c.setflags(write=False)
        lab.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "labels", lab)

    @classmethod
    def from_branches(cls, branches: Iterable[tuple[complex, Sequence[complex]]]) -> "BranchState":
        branches = list(branches)
        if not branches:
            raise NullStateError("no branches given")
        return cls([b[0] for b in branches], [list(b[1]) for b in branches])

    @property
    def modes(self) -> int:
        return self.labels.shape[1]

    @property
    def n_branches(self) -> int:
        return self.coeffs.size

    def branches(self) -> list[tuple[complex, tuple[complex, ...]]]:
        return [(complex(c), tuple(complex(x) for x in row)) for c, row in zip(self.coeffs, self.labels)]

    def to_dict(self) -> dict:
        """Shared JSON state format."""
        return {
            "modes": int(self.modes),
            "branches": [
                {
                    "coeff": [float(c.real), float(c.imag)],
                    "labels": [[float(x.real), float(x.imag)] for x in row],
                }
                for c, row in zip(self.coeffs, self.labels)
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BranchState":
        try:
            modes = int(data["modes"])
            coeffs = [complex(*b["coeff"]) for b in data["branches"]]
            labels = [[complex(*x) for x in b["labels"]] for b in data["branches"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed branch-state JSON: {exc}") from exc
        if any(len(row) != modes for row in labels):
            raise DomainError(f"every branch must carry {modes} labels")
        return cls(coeffs, np.array(labels, dtype=complex).reshape(len(coeffs), modes))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "BranchState":
        return cls.from_dict(json.loads(text))


def coherent_overlap(alpha, beta):
    """<alpha|beta> = exp(-|alpha|^2/2 - |beta|^2/2 + alpha* beta); broadcasts over arrays."""
    alpha = np.asarray(alpha, dtype=complex)
    beta = np.asarray(beta, dtype=complex)
    out = np.exp(-0.5 * np.abs(alpha) ** 2 - 0.5 * np.abs(beta) ** 2 + np.conj(alpha) * beta)
    return complex(out) if out.ndim == 0 else out


def coherent_state(*labels: complex) -> BranchState:
    """Product coherent state |l_1> x ... x |l_M>."""
    return BranchState([1.0], [list(labels)])


def cat_state(alpha: complex, parity: str = "even") -> BranchState:
    """Normalized single-mode (|alpha> +- |-alpha>)."""
    sign = {"even": 1.0, "odd": -1.0}.get(parity)
    if sign is None:
        raise DomainError(f"parity must be 'even' or 'odd', got {parity!r}")
    if alpha == 0 and sign < 0:
        raise NullStateError("odd cat state is undefined at alpha = 0")
    return normalize(BranchState([1.0, sign], [[alpha], [-alpha]]))


def _log_overlap_matrix(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    # log <L_i|R_j> summed over modes, shape (B_left, B_right)
    nl = 0.5 * np.sum(np.abs(left) ** 2, axis=1)
    nr = 0.5 * np.sum(np.abs(right) ** 2, axis=1)
    return -nl[:, None] - nr[None, :] + np.conj(left) @ right.T


def _gram(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    return np.exp(_log_overlap_matrix(left, right))


def tensor(*states: BranchState) -> BranchState:
    """Tensor product; mode order follows argument order."""
    coeffs = np.array([1.0 + 0j])
    labels = np.zeros((1, 0), dtype=complex)
    for s in states:
        coeffs = np.outer(coeffs, s.coeffs).ravel()
        labels = np.concatenate(
            [np.repeat(labels, s.n_branches, axis=0), np.tile(s.labels, (labels.shape[0], 1))], axis=1
        )
    if coeffs.size > MAX_BRANCHES:
        raise CapacityError(f"tensor product has {coeffs.size} branches (cap {MAX_BRANCHES})")
    return _canonical(coeffs, labels)


def inner(s1: BranchState, s2: BranchState) -> complex:
    """<s1|s2> from analytic overlaps."""
    if s1.modes != s2.modes:
        raise DomainError(f"mode count mismatch: {s1.modes} vs {s2.modes}")
    return complex(np.conj(s1.coeffs) @ _gram(s1.labels, s2.labels) @ s2.coeffs)


def norm(s: BranchState) -> float:
    return float(np.sqrt(max(inner(s, s).real, 0.0)))


def _merge(coeffs: np.ndarray, labels: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    rep_arr = np.empty_like(labels)
    sums = np.zeros(coeffs.size, dtype=complex)
    count = 0
    for c, row in zip(coeffs, labels):
        if count:
            hit = np.flatnonzero(np.all(np.abs(rep_arr[:count] - row) <= MERGE_TOL, axis=1))
            if hit.size:
                sums[hit[0]] += c
                continue
        rep_arr[count] = row
        sums[count] = c
        count += 1
    keep = np.abs(sums[:count]) >= PRUNE_TOL
    return sums[:count][keep], rep_arr[:count][keep]


def _sort(coeffs: np.ndarray, labels: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    keys = []
    for m in range(labels.shape[1] - 1, -1, -1):
        keys.append(labels[:, m].imag)
        keys.append(labels[:, m].real)
    order = np.lexsort(keys) if keys else np.arange(coeffs.size)
    return coeffs[order], labels[order]


def _canonical(coeffs: np.ndarray, labels: np.ndarray) -> BranchState:
    c, lab = _merge(np.asarray(coeffs, dtype=complex), np.asarray(labels, dtype=complex))
    if c.size == 0:
        raise NullStateError("all branches cancel")
    c, lab = _sort(c, lab)
    return BranchState(c, lab)


def canonicalize(s: BranchState) -> BranchState:
    """Merge duplicate labels, drop vanishing branches and sort, without rescaling."""
    return _canonical(s.coeffs, s.labels)


def normalize(s: BranchState) -> BranchState:
    """Merge duplicate labels, drop vanishing branches, and rescale to unit norm."""
    merged = _canonical(s.coeffs, s.labels)
    n = norm(merged)
    if n < NULL_TOL:
        raise NullStateError(f"state norm {n:.3e} is below {NULL_TOL:g}")
    return BranchState(merged.coeffs / n, merged.labels)


def apply_linear_optics(s: BranchState, op: Gate) -> BranchState:
    """Apply a passive linear-optics gate or a displacement as a map on labels."""
    check_modes(op, s.modes)
    lab = np.array(s.labels)
    coeffs = np.array(s.coeffs)
    if isinstance(op, (BS50, CurlyB, BSTheta)):
        x, y = lab[:, op.i].copy(), lab[:, op.j].copy()
        if isinstance(op, BS50):
            lab[:, op.i] = _SQRT_HALF * (x + 1j * y)
            lab[:, op.j] = _SQRT_HALF * (y + 1j * x)
        elif isinstance(op, CurlyB):
            lab[:, op.i] = _SQRT_HALF * (x + y)
            lab[:, op.j] = _SQRT_HALF * (x - y)
        else:
            c, sn = np.cos(op.theta), np.sin(op.theta)
            lab[:, op.i] = c * x + sn * y
            lab[:, op.j] = c * y - sn * x
    elif isinstance(op, Phase):
        lab[:, op.i] = lab[:, op.i] * np.exp(1j * op.theta)
    elif isinstance(op, Displace):
        delta = complex(op.delta)
        old = lab[:, op.i]
        # D(delta)|x> = exp((delta x* - delta* x)/2) |x + delta>
        coeffs = coeffs * np.exp(0.5 * (delta * np.conj(old) - np.conj(delta) * old))
        lab[:, op.i] = old + delta
    else:
        raise DomainError(f"{type(op).__name__} is not a linear-optics gate")
    return _canonical(coeffs, lab)


def apply_kerr(s: BranchState, mode: int, max_branches: int = MAX_BRANCHES) -> BranchState:
    """Kerr gate exp(-i pi n^2/2): |x> -> (|x> + i|-x>)/sqrt2, global phase exp(-i pi/4) dropped."""
    check_modes(Kerr(mode), s.modes)
    if 2 * s.n_branches > max_branches:
        raise CapacityError(f"Kerr would create {2 * s.n_branches} branches (cap {max_branches})")
    flipped = np.array(s.labels)
    flipped[:, mode] = -flipped[:, mode]
    coeffs = np.concatenate([s.coeffs * _SQRT_HALF, s.coeffs * (1j * _SQRT_HALF)])
    labels = np.concatenate([s.labels, flipped])
    return _canonical(coeffs, labels)


def apply_gate(s: BranchState, gate: Gate) -> BranchState:
    if isinstance(gate, Kerr):
        return apply_kerr(s, gate.i)
    return apply_linear_optics(s, gate)


def apply_gates(s: BranchState, gates: Iterable[Gate]) -> BranchState:
    for g in gates:
        s = apply_gate(s, g)
    return s


def _side_factors(labels: np.ndarray) -> np.ndarray:
    """Rows X with <F_i|F_j> = (X^dag X)_ij, from the branch-factor Gram matrix."""
    g = _gram(labels, labels)
    g = 0.5 * (g + g.conj().T)
    w, u = np.linalg.eigh(g)
    keep = w > RANK_RTOL * w.max()
    return np.sqrt(w[keep])[:, None] * u[:, keep].conj().T


def schmidt_across_cut(s: BranchState, cut: Iterable[int]) -> SchmidtSpectrum:
    """Schmidt spectrum of a normalized state across ``cut`` (0-based modes) | rest."""
    side = sorted(set(int(m) for m in cut))
    if not side or len(side) >= s.modes or side[0] < 0 or side[-1] >= s.modes:
        raise DomainError(f"cut {side} is not a nonempty proper subset of {s.modes} modes")
    n = norm(s)
    if abs(n - 1.0) > 1e-10:
        raise DomainError(f"state is not normalized (norm {n:.15g})")
    rest = [m for m in range(s.modes) if m not in side]
    xa = _side_factors(s.labels[:, side])
    xb = _side_factors(s.labels[:, rest])
    coupling = (xa * s.coeffs[None, :]) @ xb.T
    sv = np.linalg.svd(coupling, compute_uv=False)
    return SchmidtSpectrum.from_eigenvalues(sv ** 2, renormalize=True)


def fidelity(s1: BranchState, s2: BranchState) -> float:
    """|<s1|s2>|^2 for normalized states (global phase insensitive)."""
    if s1.modes != s2.modes:
        raise DomainError(f"mode count mismatch: {s1.modes} vs {s2.modes}")
    for s in (s1, s2):
        if abs(norm(s) - 1.0) > 1e-10:
            raise DomainError("fidelity needs normalized states")
    return float(abs(inner(s1, s2)) ** 2)
