"""Truncated Fock-space backend.

Dense amplitudes over ``|n_1 ... n_M>`` with ``0 <= n_m <= cutoffs[m]``; the
flattened vector is row-major with mode 0 most significant. Beam splitters are
exact unitaries on each fixed-total-photon-number block, Kerr-type gates are
exact diagonals, and displacements use exact (untruncated) matrix elements, so
any norm lost to truncation shows up in :attr:`FockStateVector.norm_deficit`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from scipy.stats import poisson

from .branch import BranchState
from .errors import CapacityError, DomainError
from .gates import BS50, BSTheta, CrossKerr, CurlyB, Displace, Gate, Kerr, Phase, check_modes
from .measures import DensityMatrix, reduced_density_pure

__all__ = [
    "FockStateVector",
    "choose_cutoff",
    "coherent_vector",
    "synthesize",
    "basis_state",
    "apply_gate",
    "apply_gates",
    "reduced_density",
    "fock_fidelity",
    "un_network",
    "MAX_DIM",
]

MAX_DIM = 2 ** 26
MAX_KEPT_DIM = 4096
CUSHION = 10


@dataclass(frozen=True, eq=False)
class FockStateVector:
    """Dense truncated multimode Fock amplitudes (tensor with one axis per mode)."""

    cutoffs: tuple[int, ...]
    amps: np.ndarray

    def __post_init__(self):
        cut = tuple(int(c) for c in self.cutoffs)
        if not cut or min(cut) < 0:
            raise DomainError(f"invalid cutoffs {self.cutoffs}")
        shape = tuple(c + 1 for c in cut)
        amps = np.array(self.amps, dtype=complex).reshape(shape)
        amps.setflags(write=False)
        object.__setattr__(self, "cutoffs", cut)
        object.__setattr__(self, "amps", amps)

    @property
    def modes(self) -> int:
        return len(self.cutoffs)

    @property
    def dims(self) -> tuple[int, ...]:
        return self.amps.shape

    @property
    def vector(self) -> np.ndarray:
        return self.amps.reshape(-1)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.vector))

    @property
    def norm_deficit(self) -> float:
        """1 - <v|v>; probability lost to truncation."""
        return float(1.0 - np.vdot(self.vector, self.vector).real)

    def normalized(self) -> "FockStateVector":
        n = self.norm
        if n == 0.0:
            raise DomainError("zero Fock vector")
        return FockStateVector(self.cutoffs, self.amps / n)


def _dimension(cutoffs: Sequence[int]) -> int:
    return int(np.prod([c + 1 for c in cutoffs], dtype=object))


def choose_cutoff(alpha_max: float, tol: float = 1e-14) -> int:
    """Smallest n with Poisson(|alpha_max|^2) mass above n below ``tol``, plus a 10-level cushion."""
    if not 0.0 < tol < 1.0:
        raise DomainError(f"tol must lie in (0, 1), got {tol}")
    mean = abs(alpha_max) ** 2
    n = 0
    while poisson.sf(n, mean) >= tol:
        n += 1
    return n + CUSHION


def coherent_vector(alpha: complex, cutoff: int) -> np.ndarray:
    """Amplitudes alpha^n exp(-|alpha|^2/2) / sqrt(n!) for n = 0..cutoff."""
    out = np.empty(cutoff + 1, dtype=complex)
    out[0] = np.exp(-0.5 * abs(alpha) ** 2)
    for n in range(1, cutoff + 1):
        out[n] = out[n - 1] * alpha / math.sqrt(n)
    return out


def _as_cutoffs(cutoffs: int | Sequence[int], modes: int) -> tuple[int, ...]:
    if isinstance(cutoffs, (int, np.integer)):
        return (int(cutoffs),) * modes
    cut = tuple(int(c) for c in cutoffs)
    if len(cut) != modes:
        raise DomainError(f"{len(cut)} cutoffs given for {modes} modes")
    return cut


def synthesize(s: BranchState, cutoffs: int | Sequence[int] | None = None, tol: float = 1e-14) -> FockStateVector:
    """Expand a branch state in the truncated Fock basis.

    With ``cutoffs=None`` every mode uses :func:`choose_cutoff` of the largest label.
    """
    if cutoffs is None:
        cutoffs = choose_cutoff(float(np.max(np.abs(s.labels))), tol)
    cut = _as_cutoffs(cutoffs, s.modes)
    if _dimension(cut) > MAX_DIM:
        raise CapacityError(f"Fock dimension {_dimension(cut)} exceeds {MAX_DIM}")
    amps = np.zeros(tuple(c + 1 for c in cut), dtype=complex)
    for coeff, row in zip(s.coeffs, s.labels):
        term = np.array(coeff, dtype=complex)
        for label, c in zip(row, cut):
            term = np.multiply.outer(term, coherent_vector(label, c))
        amps += term
    return FockStateVector(cut, amps)


def basis_state(cutoffs: int | Sequence[int], occupations: Sequence[int]) -> FockStateVector:
    """Fock basis vector |n_1 ... n_M>."""
    cut = _as_cutoffs(cutoffs, len(occupations))
    if any(n < 0 or n > c for n, c in zip(occupations, cut)):
        raise DomainError(f"occupations {tuple(occupations)} exceed cutoffs {cut}")
    amps = np.zeros(tuple(c + 1 for c in cut), dtype=complex)
    amps[tuple(occupations)] = 1.0
    return FockStateVector(cut, amps)


@lru_cache(maxsize=256)
def _two_mode_blocks(kind: str, angle: float, dim: int) -> tuple[tuple[np.ndarray, np.ndarray, np.ndarray], ...]:
    """Per-total-photon-number unitaries for a two-mode beam splitter.

    ``kind='exchange'``: exp(i angle (a^+ b + b^+ a)).
    ``kind='rotation'``: exp(angle (a^+ b - b^+ a)).
    Returns (first-mode occupations, second-mode occupations, unitary) per block.
    """
    blocks = []
    for total in range(2 * dim - 1):
        ms = np.arange(max(0, total - dim + 1), min(total, dim - 1) + 1)
        ns = total - ms
        size = ms.size
        gen = np.zeros((size, size), dtype=complex)
        for k in range(size - 1):
            # <m+1, n-1| a^+ b |m, n> = sqrt((m+1) n)
            amp = math.sqrt((ms[k] + 1) * ns[k])
            if kind == "exchange":
                gen[k + 1, k] = amp
                gen[k, k + 1] = amp
            else:
                # i (a^+ b - b^+ a), Hermitian
                gen[k + 1, k] = 1j * amp
                gen[k, k + 1] = -1j * amp
        w, v = np.linalg.eigh(gen)
        phase = angle if kind == "exchange" else -angle
        unitary = (v * np.exp(1j * phase * w)) @ v.conj().T
        blocks.append((ms, ns, unitary))
    return tuple(blocks)


def _apply_two_mode(amps: np.ndarray, i: int, j: int, kind: str, angle: float) -> np.ndarray:
    if amps.shape[i] != amps.shape[j]:
        raise DomainError(f"two-mode gate needs equal cutoffs on modes {i} and {j}")
    moved = np.moveaxis(amps, (i, j), (-2, -1)).copy()
    out = np.empty_like(moved)
    for ms, ns, unitary in _two_mode_blocks(kind, float(angle), amps.shape[i]):
        out[..., ms, ns] = moved[..., ms, ns] @ unitary.T
    return np.moveaxis(out, (-2, -1), (i, j))


def _scale_axis(amps: np.ndarray, axis: int, factors: np.ndarray) -> np.ndarray:
    shape = [1] * amps.ndim
    shape[axis] = factors.size
    return amps * factors.reshape(shape)


def displacement_matrix(delta: complex, cutoff: int) -> np.ndarray:
    """Exact <m|D(delta)|n> for m, n <= cutoff (a sub-block of the infinite unitary)."""
    dim = cutoff + 1
    d = np.zeros((dim, dim), dtype=complex)
    d[:, 0] = coherent_vector(delta, cutoff)
    sq = np.sqrt(np.arange(dim))
    for n in range(1, dim):
        # <m|D|n> = (sqrt(m) <m-1|D|n-1> - delta* <m|D|n-1>) / sqrt(n)
        d[1:, n] = (sq[1:] * d[:-1, n - 1] - np.conj(delta) * d[1:, n - 1]) / sq[n]
        d[0, n] = -np.conj(delta) * d[0, n - 1] / sq[n]
    return d


def apply_gate(v: FockStateVector, gate: Gate) -> FockStateVector:
    check_modes(gate, v.modes)
    amps = v.amps
    if isinstance(gate, Phase):
        n = np.arange(amps.shape[gate.i])
        out = _scale_axis(amps, gate.i, np.exp(1j * gate.theta * n))
    elif isinstance(gate, Kerr):
        n = np.arange(amps.shape[gate.i])
        # exp(-i pi n^2/2) is 1 for even n and -i for odd n
        out = _scale_axis(amps, gate.i, np.where(n % 2 == 0, 1.0 + 0j, -1j))
    elif isinstance(gate, CrossKerr):
        ni = np.arange(amps.shape[gate.i])
        nj = np.arange(amps.shape[gate.j])
        sign = np.where(np.outer(ni, nj) % 2 == 0, 1.0, -1.0)
        moved = np.moveaxis(amps, (gate.i, gate.j), (-2, -1)) * sign
        out = np.moveaxis(moved, (-2, -1), (gate.i, gate.j))
    elif isinstance(gate, BS50):
        out = _apply_two_mode(amps, gate.i, gate.j, "exchange", math.pi / 4)
    elif isinstance(gate, BSTheta):
        out = _apply_two_mode(amps, gate.i, gate.j, "rotation", gate.theta)
    elif isinstance(gate, CurlyB):
        for g in (Phase(gate.j, -math.pi / 2), BS50(gate.i, gate.j), Phase(gate.j, -math.pi / 2)):
            v = apply_gate(v, g)
        return v
    elif isinstance(gate, Displace):
        mat = displacement_matrix(complex(gate.delta), v.cutoffs[gate.i])
        out = np.moveaxis(np.tensordot(mat, amps, axes=([1], [gate.i])), 0, gate.i)
    else:
        raise DomainError(f"unsupported gate {gate!r}")
    return FockStateVector(v.cutoffs, out)


def apply_gates(v: FockStateVector, gates: Iterable[Gate]) -> FockStateVector:
    for g in gates:
        v = apply_gate(v, g)
    return v


def reduced_density(v: FockStateVector, keep: Iterable[int]) -> DensityMatrix:
    """Reduced state on ``keep`` (0-based modes), computed from the renormalized vector."""
    keep = sorted(set(int(k) for k in keep))
    if not keep or len(keep) >= v.modes or keep[0] < 0 or keep[-1] >= v.modes:
        raise DomainError(f"keep set {keep} is not a nonempty proper subset of {v.modes} modes")
    kept_dim = int(np.prod([v.dims[k] for k in keep]))
    if kept_dim > MAX_KEPT_DIM:
        raise CapacityError(f"kept dimension {kept_dim} exceeds {MAX_KEPT_DIM}")
    rho = reduced_density_pure(v.normalized().vector, v.dims, keep)
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(rho / np.trace(rho).real)


def fock_fidelity(v1: FockStateVector, v2: FockStateVector) -> float:
    """|<v1|v2>|^2 between the renormalized vectors."""
    if v1.dims != v2.dims:
        raise DomainError(f"dimension mismatch {v1.dims} vs {v2.dims}")
    return float(abs(np.vdot(v1.normalized().vector, v2.normalized().vector)) ** 2)


def un_network(n: int, convention: str = "uniform") -> list[BSTheta]:
    """Beam-splitter cascade spreading mode 0 uniformly over ``n`` modes, in application order.

    Gates act on neighbouring pairs (0,1), (1,2), ..., (n-2,n-1). ``convention``:

    - ``"uniform"`` (default): angles chosen so U (sqrt(n) a_0^+) U^dag = sum_k a_k^+,
      hence U |sqrt(n) x, 0, ..., 0> = |x, ..., x> and U |1, 0, ..., 0> = |W_n>.
      Step k uses theta = -arccos(1/sqrt(n - k)).
    - ``"literal"``: theta = arcsin(1/sqrt(n - k)) with the rotation exp[theta(a^+ b - b^+ a)].
    - ``"negated"``: theta = -arcsin(1/sqrt(n - k)).

    Only ``"uniform"`` produces the uniform spread; the other two are kept for inspection.
    """
    if n < 2:
        raise DomainError("un_network needs n >= 2")
    gates = []
    for k in range(n - 1):
        remaining = n - k
        if convention == "uniform":
            theta = -math.acos(1.0 / math.sqrt(remaining))
        elif convention == "literal":
            theta = math.asin(1.0 / math.sqrt(remaining))
        elif convention == "negated":
            theta = -math.asin(1.0 / math.sqrt(remaining))
        else:
            raise DomainError(f"unknown convention {convention!r}")
        gates.append(BSTheta(k, k + 1, theta))
    return gates
