"""Gate vocabulary shared by the coherent-branch engine and the Fock backend.

Mode indices are 0-based. Conventions, stated as actions on a coherent product state:

- ``BS50(i, j)``: exp(i pi/4 (a_i^+ a_j + a_j^+ a_i)); (x, y) -> ((x + i y)/sqrt2, (y + i x)/sqrt2).
- ``CurlyB(i, j)``: Phase(j, -pi/2) BS50(i, j) Phase(j, -pi/2); (x, y) -> ((x + y)/sqrt2, (x - y)/sqrt2).
- ``BSTheta(i, j, theta)``: exp[theta (a_i^+ a_j - a_j^+ a_i)];
  (x, y) -> (x cos + y sin, y cos - x sin).
- ``Phase(i, theta)``: exp(i theta n_i); x -> x e^{i theta}.
- ``Displace(i, delta)``: exp(delta a_i^+ - delta* a_i).
- ``Kerr(i)``: exp(-i pi n_i^2 / 2).
- ``CrossKerr(i, j)``: exp(-i pi n_i n_j).
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["Gate", "BS50", "CurlyB", "BSTheta", "Phase", "Displace", "Kerr", "CrossKerr"]


class Gate:
    @property
    def modes(self) -> tuple[int, ...]:
        raise NotImplementedError


@dataclass(frozen=True)
class _TwoMode(Gate):
    i: int
    j: int

    @property
    def modes(self) -> tuple[int, ...]:
        return (self.i, self.j)


@dataclass(frozen=True)
class BS50(_TwoMode):
    pass


@dataclass(frozen=True)
class CurlyB(_TwoMode):
    pass


@dataclass(frozen=True)
class BSTheta(Gate):
    i: int
    j: int
    theta: float

    @property
    def modes(self) -> tuple[int, ...]:
        return (self.i, self.j)


@dataclass(frozen=True)
class Phase(Gate):
    i: int
    theta: float

    @property
    def modes(self) -> tuple[int, ...]:
        return (self.i,)


@dataclass(frozen=True)
class Displace(Gate):
    i: int
    delta: complex

    @property
    def modes(self) -> tuple[int, ...]:
        return (self.i,)


@dataclass(frozen=True)
class Kerr(Gate):
    i: int

    @property
    def modes(self) -> tuple[int, ...]:
        return (self.i,)


@dataclass(frozen=True)
class CrossKerr(_TwoMode):
    pass


def check_modes(gate: Gate, n_modes: int) -> None:
    from .errors import DomainError

    modes = gate.modes
    if any(m < 0 or m >= n_modes for m in modes):
        raise DomainError(f"{gate} addresses a mode outside 0..{n_modes - 1}")
    if len(modes) == 2 and modes[0] == modes[1]:
        raise DomainError(f"{gate} needs two distinct modes")
