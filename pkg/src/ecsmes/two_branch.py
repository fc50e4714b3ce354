"""Closed-form analytics for two-branch and four-term nonorthogonal states.

A two-branch state is ``mu |A>|B> + nu |C>|D>`` with normalized local states;
only the overlaps ``p1 = <A|C>`` and ``p2 = <D|B>`` enter its entanglement.
Multipartite states with two product branches reduce to this form across any
bipartition (:func:`multipartite_cut_reduce`).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateBasisError, DomainError, NullStateError
from .measures import concurrence_pure_two_qubit

__all__ = [
    "TwoBranchDescriptor",
    "FourTermDescriptor",
    "TwoQubitAmplitudes",
    "normalization_constant",
    "qubit_embedding",
    "concurrence_closed_form",
    "mes_condition",
    "build_family",
    "four_term_analysis",
    "cross_kerr_descriptor",
    "cross_kerr_concurrence",
    "multipartite_cut_reduce",
    "cut_overlaps",
]

CONDITION_TOL = 1e-10
IDENTITY_TOL = 1e-12
NULL_TOL = 1e-12


def _check_overlap(p: complex, name: str) -> complex:
    p = complex(p)
    if abs(p) > 1.0 + IDENTITY_TOL:
        raise DomainError(f"|{name}| = {abs(p):.15g} exceeds 1")
    return p


def _residual_norm(p: complex) -> float:
    # sqrt(1 - |p|^2) without the catastrophic cancellation near |p| = 1
    m = min(abs(p), 1.0)
    return math.sqrt((1.0 - m) * (1.0 + m))


@dataclass(frozen=True)
class TwoBranchDescriptor:
    """``mu |A>|B> + nu |C>|D>`` reduced to amplitudes and the overlaps ``<A|C>``, ``<D|B>``."""

    mu: complex
    nu: complex
    p1: complex
    p2: complex

    def __post_init__(self):
        object.__setattr__(self, "mu", complex(self.mu))
        object.__setattr__(self, "nu", complex(self.nu))
        object.__setattr__(self, "p1", _check_overlap(self.p1, "p1"))
        object.__setattr__(self, "p2", _check_overlap(self.p2, "p2"))
        if self.mu == 0 and self.nu == 0:
            raise DomainError("mu and nu cannot both vanish")

    @property
    def N1(self) -> float:
        return _residual_norm(self.p1)

    @property
    def N2(self) -> float:
        return _residual_norm(self.p2)


@dataclass(frozen=True)
class TwoQubitAmplitudes:
    """Amplitudes of a|00> + b|01> + c|10> + d|11> in an orthonormal qubit basis."""

    a00: complex
    a01: complex
    a10: complex
    a11: complex

    def __post_init__(self):
        norm = sum(abs(x) ** 2 for x in self.as_tuple())
        if abs(norm - 1.0) > IDENTITY_TOL:
            raise DomainError(f"two-qubit amplitudes have squared norm {norm:.15g}")

    def as_tuple(self) -> tuple[complex, complex, complex, complex]:
        return (self.a00, self.a01, self.a10, self.a11)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple(), dtype=complex)

    def concurrence(self) -> float:
        return concurrence_pure_two_qubit(*self.as_tuple())


@dataclass(frozen=True)
class FourTermDescriptor:
    """``a|A>|B> + b|A>|D> + c|C>|B> + d|C>|D>`` with ``p1 = <A|C>``, ``p2 = <D|B>``.

    Normalization is checked, not imposed; use :meth:`normalized` to rescale.
    """

    a: complex
    b: complex
    c: complex
    d: complex
    p1: complex
    p2: complex

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, complex(getattr(self, name)))
        object.__setattr__(self, "p1", _check_overlap(self.p1, "p1"))
        object.__setattr__(self, "p2", _check_overlap(self.p2, "p2"))
        norm = self.norm_squared()
        if abs(norm - 1.0) > CONDITION_TOL:
            raise DomainError(
                f"four-term state has squared norm {norm:.15g}; use FourTermDescriptor.normalized"
            )

    def norm_squared(self) -> float:
        return _four_term_norm_squared(self.a, self.b, self.c, self.d, self.p1, self.p2)

    @classmethod
    def normalized(cls, a, b, c, d, p1, p2) -> "FourTermDescriptor":
        """Rescale the amplitudes so the state has unit norm under its Gram form."""
        norm = _four_term_norm_squared(a, b, c, d, complex(p1), complex(p2))
        if norm < NULL_TOL ** 2:
            raise NullStateError("four-term state has zero norm")
        s = 1.0 / math.sqrt(norm)
        return cls(a * s, b * s, c * s, d * s, p1, p2)

    @property
    def N1(self) -> float:
        return _residual_norm(self.p1)

    @property
    def N2(self) -> float:
        return _residual_norm(self.p2)


def _four_term_norm_squared(a, b, c, d, p1, p2) -> float:
    # Gram matrix of (AB, AD, CB, CD) is kron(<A|A> <A|C>; <C|A> <C|C>) x (<B|B> <B|D>; <D|B> <D|D>)
    g1 = np.array([[1.0, p1], [np.conj(p1), 1.0]])
    g2 = np.array([[1.0, np.conj(p2)], [p2, 1.0]])
    v = np.array([a, b, c, d], dtype=complex)
    return float(np.real(np.vdot(v, np.kron(g1, g2) @ v)))


def normalization_constant(d: TwoBranchDescriptor) -> float:
    """Norm ``N12`` of ``mu |A>|B> + nu |C>|D>``."""
    cross = 2.0 * (d.mu * np.conj(d.nu) * np.conj(d.p1) * d.p2).real
    sq = abs(d.mu) ** 2 + abs(d.nu) ** 2 + cross
    if sq < NULL_TOL ** 2:
        raise NullStateError("two-branch state has zero norm (branches cancel)")
    return math.sqrt(sq)


def qubit_embedding(d: TwoBranchDescriptor) -> TwoQubitAmplitudes:
    """Rewrite the normalized state in the orthonormal bases built from (A, C) and (D, B)."""
    if abs(d.p1) > 1.0 - IDENTITY_TOL or abs(d.p2) > 1.0 - IDENTITY_TOL:
        raise DegenerateBasisError("|p1| or |p2| is 1: local branch states are parallel")
    n12 = normalization_constant(d)
    a = d.mu / n12
    dd = d.nu / n12
    return TwoQubitAmplitudes(a * d.p2 + dd * d.p1, a * d.N2, dd * d.N1, 0.0)


def concurrence_closed_form(d: TwoBranchDescriptor) -> float:
    """Concurrence ``2|mu||nu| N1 N2 / N12^2`` of the normalized two-branch state.

    Returns 0 when either overlap has unit modulus (product state up to phase).
    """
    n12 = normalization_constant(d)
    value = 2.0 * abs(d.mu) * abs(d.nu) * d.N1 * d.N2 / (n12 * n12)
    return float(min(value, 1.0))


def mes_condition(d: TwoBranchDescriptor, tol: float = CONDITION_TOL) -> bool:
    """True when ``mu = -nu`` (up to a global phase) and ``p1 = p2``.

    This is a sufficient condition for unit concurrence, not a necessary one.
    """
    if d.mu == 0 or d.nu == 0:
        return False
    phase = abs(d.mu) / d.mu
    mu = d.mu * phase
    nu = d.nu * phase
    return abs(nu + mu) <= tol * max(1.0, abs(mu)) and abs(d.p1 - d.p2) <= tol


def build_family(kind: str, overlap: complex | None = None, alpha: complex | None = None) -> TwoBranchDescriptor:
    """Named two-branch families.

    ``antisymmetric``: |A>|B> - |B>|A> with ``overlap = <A|B>``.
    ``symmetric``: |A>|B> + |B>|A>.
    ``conjugate_pair``: |alpha>|alpha*> - |alpha*>|alpha> for coherent alpha, where
    ``<alpha|alpha*> = exp(|alpha|^2 (exp(-2i theta) - 1))``.
    """
    if kind == "conjugate_pair":
        if alpha is None:
            raise DomainError("conjugate_pair needs alpha")
        a = complex(alpha)
        p = cmath.exp(abs(a) ** 2 * (cmath.exp(-2j * cmath.phase(a)) - 1.0))
        return TwoBranchDescriptor(1.0, -1.0, p, p)
    if overlap is None:
        raise DomainError(f"{kind} family needs an overlap")
    p = complex(overlap)
    if abs(p) > 1.0 + IDENTITY_TOL:
        raise DomainError(f"|overlap| = {abs(p):.15g} exceeds 1")
    if kind == "antisymmetric":
        return TwoBranchDescriptor(1.0, -1.0, p, p)
    if kind == "symmetric":
        return TwoBranchDescriptor(1.0, 1.0, p, p)
    raise DomainError(f"unknown family {kind!r}")


def four_term_analysis(f: FourTermDescriptor) -> tuple[TwoQubitAmplitudes, float]:
    """Qubit-basis amplitudes of a four-term state and its concurrence ``2 N1 N2 |ad - bc|``."""
    if abs(f.p1) > 1.0 - IDENTITY_TOL or abs(f.p2) > 1.0 - IDENTITY_TOL:
        raise DegenerateBasisError("|p1| or |p2| is 1: local branch states are parallel")
    a, b, c, d, p1, p2 = f.a, f.b, f.c, f.d, f.p1, f.p2
    n1, n2 = f.N1, f.N2
    amps = TwoQubitAmplitudes(
        a * p2 + b + c * p1 * p2 + d * p1,
        n2 * (a + c * p1),
        n1 * (d + c * p2),
        c * n1 * n2,
    )
    return amps, float(2.0 * n1 * n2 * abs(a * d - b * c))


def cross_kerr_descriptor(alpha: complex, beta: complex) -> FourTermDescriptor:
    """State produced by exp(-i pi n1 n2) acting on |alpha>|beta>, as a four-term descriptor.

    Output is (|a>+|-a>)|b>/2 + (|a>-|-a>)|-b>/2; with A=a, C=-a, B=b, D=-b.
    """
    p1 = math.exp(-2.0 * abs(alpha) ** 2)
    p2 = math.exp(-2.0 * abs(beta) ** 2)
    return FourTermDescriptor(0.5, 0.5, 0.5, -0.5, p1, p2)


def cross_kerr_concurrence(alpha: complex, beta: complex) -> float:
    """``sqrt((1 - exp(-4|alpha|^2)) (1 - exp(-4|beta|^2)))``."""
    return float(math.sqrt(-math.expm1(-4.0 * abs(alpha) ** 2) * -math.expm1(-4.0 * abs(beta) ** 2)))


# per-mode overlaps <branch1_k | branch2_k> of the two product branches
def _family_mode_overlaps(family: str, params: dict) -> np.ndarray:
    if family == "ecs_pm":
        alpha, n = complex(params["alpha"]), int(params["n"])
        if n < 2:
            raise DomainError("ecs_pm needs at least two modes")
        return np.full(n, math.exp(-2.0 * abs(alpha) ** 2), dtype=complex)
    if family == "even_pair":
        p, n = complex(params["overlap"]), int(params["n"])
        if n < 1:
            raise DomainError("even_pair needs n >= 1 (2n modes)")
        if abs(p) > 1.0 + IDENTITY_TOL:
            raise DomainError("|overlap| exceeds 1")
        # branch 1 = A..A B..B, branch 2 = B..B A..A
        return np.concatenate([np.full(n, p), np.full(n, np.conj(p))])
    if family == "odd_scaled":
        alpha, n = complex(params["alpha"]), int(params["n"])
        if n < 1:
            raise DomainError("odd_scaled needs n >= 1 (2n+1 modes)")
        first = math.exp(-2.0 * abs(alpha) ** 2)
        rest = math.exp(-2.0 * abs(alpha) ** 2 / (2 * n))
        return np.concatenate([[first], np.full(2 * n, rest)]).astype(complex)
    if family == "mode_overlaps":
        return np.asarray(params["overlaps"], dtype=complex)
    raise DomainError(f"unknown multipartite family {family!r}")


def cut_overlaps(mode_overlaps: Sequence[complex], cut: Iterable[int]) -> tuple[complex, complex]:
    """``(p1, p2)`` for branches ``|A>|B>``, ``|C>|D>`` split at ``cut`` (0-based modes on side 1)."""
    q = np.asarray(mode_overlaps, dtype=complex)
    side = sorted(set(int(k) for k in cut))
    if not side or len(side) >= q.size or side[0] < 0 or side[-1] >= q.size:
        raise DomainError(f"cut {side} is not a nonempty proper subset of {q.size} modes")
    rest = [k for k in range(q.size) if k not in side]
    p1 = complex(np.prod(q[side]))
    p2 = complex(np.prod(np.conj(q[rest])))
    return p1, p2


def multipartite_cut_reduce(family: str, params: dict, cut: Iterable[int]) -> TwoBranchDescriptor:
    """Reduce a two-product-branch multipartite state to a bipartite descriptor.

    Families (modes are 0-based):

    - ``ecs_pm``: |a>^n - |-a>^n; params ``alpha``, ``n``.
    - ``even_pair``: |A..A B..B> - |B..B A..A> on 2n modes; params ``overlap = <A|B>``, ``n``.
    - ``odd_scaled``: |a>|a/sqrt(2n)>^(2n) - |-a>|-a/sqrt(2n)>^(2n); params ``alpha``, ``n``.
    - ``mode_overlaps``: explicit per-mode overlaps <branch1_k|branch2_k>; param ``overlaps``.
    """
    p1, p2 = cut_overlaps(_family_mode_overlaps(family, params), cut)
    return TwoBranchDescriptor(1.0, -1.0, p1, p2)
