"""Entanglement measures: Schmidt spectra, entropy, concurrence, CKW monogamy.

All functions are pure; inputs are never modified.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, UnsupportedMeasureError

__all__ = [
    "SchmidtSpectrum",
    "DensityMatrix",
    "SIGMA_Y",
    "two_branch_spectrum",
    "entanglement_entropy",
    "concurrence_pure_two_qubit",
    "concurrence_from_spectrum",
    "wootters_concurrence",
    "reduced_density_pure",
    "ckw_residual",
    "w_state",
]

# eigenvalues in [-CLIP_TOL, 0) are numerical noise and clipped to zero
CLIP_TOL = 1e-10
SUM_TOL = 1e-12
RANK_TOL = 1e-12

# sigma_y = i(|1><0| - |0><1|)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_YY = np.kron(SIGMA_Y, SIGMA_Y)


def _clip_eigenvalues(values: np.ndarray) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if values.size and values.min() < -CLIP_TOL:
        raise DomainError(f"eigenvalue {values.min():.3e} is below -{CLIP_TOL:g}")
    return np.where(values < 0.0, 0.0, values)


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Squared Schmidt coefficients, sorted in descending order."""

    lambdas: tuple[float, ...]

    def __post_init__(self):
        lam = _clip_eigenvalues(np.asarray(self.lambdas, dtype=float))
        if lam.size == 0:
            raise DomainError("empty spectrum")
        if abs(lam.sum() - 1.0) > SUM_TOL:
            raise DomainError(f"spectrum sums to {lam.sum():.15g}, not 1")
        object.__setattr__(self, "lambdas", tuple(float(x) for x in np.sort(lam)[::-1]))

    @classmethod
    def from_eigenvalues(cls, values: Iterable[float], renormalize: bool = False) -> "SchmidtSpectrum":
        """Build a spectrum from raw eigenvalues, applying the clipping rule.

        With ``renormalize=True`` the clipped values are rescaled to sum to one,
        which absorbs floating-point drift from long numerical pipelines.
        """
        lam = _clip_eigenvalues(np.asarray(list(values), dtype=float))
        if renormalize:
            total = lam.sum()
            if total <= 0.0:
                raise DomainError("spectrum has zero weight")
            lam = lam / total
        return cls(tuple(lam))

    @property
    def rank(self) -> int:
        return int(sum(1 for x in self.lambdas if x > RANK_TOL))

    def __len__(self) -> int:
        return len(self.lambdas)

    def __iter__(self):
        return iter(self.lambdas)

    def __getitem__(self, i):
        return self.lambdas[i]


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite operator on a kept subsystem."""

    data: np.ndarray

    def __post_init__(self):
        rho = np.array(self.data, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise DomainError(f"density matrix must be square, got shape {rho.shape}")
        if np.max(np.abs(rho - rho.conj().T), initial=0.0) > 1e-12:
            raise DomainError("density matrix is not Hermitian")
        if abs(np.trace(rho) - 1.0) > 1e-12:
            raise DomainError(f"density matrix trace is {np.trace(rho).real:.15g}")
        rho = 0.5 * (rho + rho.conj().T)
        _clip_eigenvalues(np.linalg.eigvalsh(rho))
        rho.setflags(write=False)
        object.__setattr__(self, "data", rho)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return _clip_eigenvalues(np.linalg.eigvalsh(self.data))[::-1]

    def spectrum(self) -> SchmidtSpectrum:
        """Eigenvalue spectrum; for a reduced pure state this is the Schmidt spectrum."""
        return SchmidtSpectrum.from_eigenvalues(self.eigenvalues(), renormalize=True)


def two_branch_spectrum(adN1N2_modulus: float) -> SchmidtSpectrum:
    """Eigenvalues 1/2 +- sqrt(1 - 4x^2)/2 of the reduced state of a two-branch state.

    ``x`` is ``|a d N1 N2|`` of the normalized state; ``x = 1/2`` is maximal entanglement.
    """
    x = float(adN1N2_modulus)
    if x < 0.0 or x > 0.5 + 1e-12:
        raise DomainError(f"|a d N1 N2| = {x!r} outside [0, 0.5]; state is not normalized")
    root = np.sqrt(max(0.0, 1.0 - 4.0 * x * x))
    return SchmidtSpectrum((0.5 + 0.5 * root, 0.5 - 0.5 * root))


def entanglement_entropy(spectrum: SchmidtSpectrum | Sequence[float]) -> float:
    """Von Neumann entropy in ebits (log base 2), with 0 log 0 = 0."""
    if not isinstance(spectrum, SchmidtSpectrum):
        spectrum = SchmidtSpectrum(tuple(spectrum))
    lam = np.array([x for x in spectrum.lambdas if x > 0.0])
    return float(-np.sum(lam * np.log2(lam))) if lam.size else 0.0


def concurrence_pure_two_qubit(a: complex, b: complex, c: complex, d: complex) -> float:
    """Concurrence ``2|ad - bc|`` of a|00> + b|01> + c|10> + d|11>."""
    norm = abs(a) ** 2 + abs(b) ** 2 + abs(c) ** 2 + abs(d) ** 2
    if abs(norm - 1.0) > 1e-10:
        raise DomainError(f"two-qubit state has squared norm {norm:.15g}")
    return float(2.0 * abs(a * d - b * c))


def concurrence_from_spectrum(spectrum: SchmidtSpectrum | Sequence[float]) -> float:
    """``2 sqrt(l+ l-)`` for a cut of Schmidt rank at most two."""
    if not isinstance(spectrum, SchmidtSpectrum):
        spectrum = SchmidtSpectrum(tuple(spectrum))
    if spectrum.rank > 2:
        raise UnsupportedMeasureError(
            f"concurrence undefined for Schmidt rank {spectrum.rank}; use entanglement_entropy"
        )
    lam = list(spectrum.lambdas) + [0.0, 0.0]
    return float(min(1.0, 2.0 * np.sqrt(lam[0] * lam[1])))


def wootters_concurrence(rho: DensityMatrix | np.ndarray) -> float:
    """Two-qubit mixed-state concurrence max(0, m1 - m2 - m3 - m4).

    The m_i are the square roots of the eigenvalues of rho (Y rho* Y). They are
    computed as singular values of W^T (Y) W with rho = W W^dag over the
    numerically nonzero eigenvectors; this avoids square-rooting eigenvalue
    noise near zero.
    """
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(np.asarray(rho))
    if rho.dim != 4:
        raise DomainError(f"Wootters concurrence needs a 4x4 density matrix, got {rho.dim}")
    w, v = np.linalg.eigh(rho.data)
    w = _clip_eigenvalues(w)
    keep = w > 1e-13 * max(1.0, w.max())
    W = v[:, keep] * np.sqrt(w[keep])
    mus = np.linalg.svd(W.T @ _YY @ W, compute_uv=False)
    mus = np.concatenate([np.sort(mus)[::-1], np.zeros(4)])[:4]
    return float(max(0.0, mus[0] - mus[1] - mus[2] - mus[3]))


def reduced_density_pure(psi: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Partial trace of |psi><psi| onto ``keep`` (0-based subsystem indices, kept in order).

    Subsystem 0 is the most significant index of the flattened vector.
    """
    dims = tuple(int(d) for d in dims)
    keep = sorted(set(int(k) for k in keep))
    if not keep or any(k < 0 or k >= len(dims) for k in keep):
        raise DomainError(f"invalid kept subsystems {keep} for {len(dims)} subsystems")
    traced = [k for k in range(len(dims)) if k not in keep]
    tensor = np.asarray(psi, dtype=complex).reshape(dims)
    mat = np.transpose(tensor, keep + traced).reshape(int(np.prod([dims[k] for k in keep])), -1)
    return mat @ mat.conj().T


def ckw_residual(state: np.ndarray, focus: int = 0) -> float:
    """|sum_k C^2(focus, k) - C^2(focus | rest)| for an N-qubit pure state.

    ``focus`` is a 0-based qubit index. Pairwise terms use Wootters' formula on
    two-qubit reductions; the cut term uses the single-qubit reduced spectrum.
    """
    psi = np.asarray(state, dtype=complex).ravel()
    n = int(round(np.log2(psi.size)))
    if 2 ** n != psi.size or n < 2:
        raise DomainError(f"state length {psi.size} is not 2**N with N >= 2")
    if abs(np.vdot(psi, psi).real - 1.0) > 1e-10:
        raise DomainError("state is not normalized")
    if not 0 <= focus < n:
        raise DomainError(f"focus qubit {focus} out of range for {n} qubits")
    dims = (2,) * n
    pair_sum = 0.0
    for k in range(n):
        if k == focus:
            continue
        rho = reduced_density_pure(psi, dims, [focus, k])
        pair_sum += wootters_concurrence(_as_density(rho)) ** 2
    cut = _as_density(reduced_density_pure(psi, dims, [focus])).spectrum()
    return float(abs(pair_sum - concurrence_from_spectrum(cut) ** 2))


def _as_density(rho: np.ndarray) -> DensityMatrix:
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(rho / np.trace(rho).real)


def w_state(n: int) -> np.ndarray:
    """Uniform single-excitation state of ``n`` qubits (qubit 0 most significant)."""
    if n < 1:
        raise DomainError("W state needs at least one qubit")
    psi = np.zeros(2 ** n, dtype=complex)
    for k in range(n):
        psi[1 << (n - 1 - k)] = 1.0
    return psi / np.sqrt(n)
