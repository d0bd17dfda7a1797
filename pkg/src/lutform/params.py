"""Luttinger parameters, operator exponents and finite-size energies.

A gapless 1D liquid is characterised here by a single dimensionless number
``xi`` together with the sound velocity ``u``.  Two model maps are provided:
the XXZ chain (anisotropy ``delta = cos(eta)``) and the two-branch fermion
model with density-density coupling ``lam``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError, UnsupportedOperatorError

__all__ = [
    "OperatorKind",
    "KleinSector",
    "OperatorSpec",
    "ExponentPair",
    "LuttingerParameters",
    "xi_from_xxz",
    "params_from_coupling",
    "params_from_xxz",
    "exponents_for_operator",
    "finite_size_energy",
    "excitation_energy",
]


class OperatorKind(str, enum.Enum):
    SPIN_LOWERING = "spin_lowering"
    DENSITY = "density"
    BOSE_FIELD = "bose_field"
    FERMI_FIELD_RIGHT = "fermi_field_right"
    FERMI_FIELD_LEFT = "fermi_field_left"

    @property
    def is_fermi(self) -> bool:
        return self in (OperatorKind.FERMI_FIELD_RIGHT, OperatorKind.FERMI_FIELD_LEFT)


class KleinSector(str, enum.Enum):
    """Which Fermi point lost the particle in the lowest fermion state."""

    LAMBDA1 = "lambda1"
    LAMBDA2 = "lambda2"


@dataclass(frozen=True)
class OperatorSpec:
    kind: OperatorKind
    harmonic: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", OperatorKind(self.kind))
        if int(self.harmonic) != self.harmonic or self.harmonic < 0:
            raise ValueError(f"harmonic must be a non-negative integer, got {self.harmonic!r}")


@dataclass(frozen=True)
class ExponentPair:
    """Right-branch exponent ``a`` and left-branch exponent ``c``."""

    a: float
    c: float


@dataclass(frozen=True)
class LuttingerParameters:
    """Single-parameter description of a Luttinger liquid on a ring.

    ``damping`` is the dimensionless series regulator eps; it stands for
    ``2*pi*alpha/L`` with alpha the ultraviolet cutoff length.
    """

    xi: float
    u: float = 1.0
    length: float = 1.0
    damping: float = 0.0

    def __post_init__(self):
        if not (self.xi > 0 and math.isfinite(self.xi)):
            raise DomainError(f"xi must be positive and finite, got {self.xi!r}")
        if not (self.u > 0 and math.isfinite(self.u)):
            raise DomainError(f"u must be positive and finite, got {self.u!r}")
        if not (self.length > 0 and math.isfinite(self.length)):
            raise DomainError(f"length must be positive and finite, got {self.length!r}")
        if not (self.damping >= 0 and math.isfinite(self.damping)):
            raise DomainError(f"damping must be non-negative, got {self.damping!r}")

    def with_damping(self, damping: float) -> "LuttingerParameters":
        return LuttingerParameters(self.xi, self.u, self.length, damping)


def xi_from_xxz(delta: float) -> float:
    """Luttinger parameter of the XXZ chain, ``2*(pi - arccos(delta))/pi``.

    The endpoints ``|delta| >= 1`` are rejected, not clamped.
    """
    if not (-1.0 < delta < 1.0):
        raise DomainError(f"XXZ anisotropy must satisfy |delta| < 1, got delta={delta!r}")
    eta = math.acos(delta)
    return 2.0 * (math.pi - eta) / math.pi


def params_from_xxz(delta: float, length: float = 1.0, u: float = 1.0,
                    damping: float = 0.0) -> LuttingerParameters:
    # The velocity of the XXZ chain is not fixed by the xi map; callers pass it.
    return LuttingerParameters(xi_from_xxz(delta), u, length, damping)


def params_from_coupling(lam: float, length: float = 1.0,
                         damping: float = 0.0) -> LuttingerParameters:
    """Parameters of the two-branch model with density coupling ``lam``.

    >>> p = params_from_coupling(0.6)
    >>> round(p.xi, 12), round(p.u, 12)
    (2.0, 0.8)
    """
    if not (-1.0 < lam < 1.0):
        raise DomainError(f"coupling must satisfy |lambda| < 1, got lambda={lam!r}")
    xi = math.sqrt((1.0 + lam) / (1.0 - lam))
    u = math.sqrt(1.0 - lam * lam)
    return LuttingerParameters(xi, u, length, damping)


def exponents_for_operator(spec: OperatorSpec, xi: float,
                           klein_sector: KleinSector | str | None = None) -> ExponentPair:
    """Resolve the (a, c) exponents entering the right/left formfactors.

    Fermi fields need a Klein sector; both Fermi kinds resolve identically
    for a given sector.  Only the leading harmonic has tabulated exponents.
    """
    if not xi > 0:
        raise DomainError(f"xi must be positive, got {xi!r}")
    kind = spec.kind
    if kind.is_fermi:
        if klein_sector is None:
            raise UnsupportedOperatorError(f"{kind.value} requires a Klein sector")
        klein_sector = KleinSector(klein_sector)
    elif klein_sector is not None:
        raise UnsupportedOperatorError(f"{kind.value} takes no Klein sector")
    if spec.harmonic != 0:
        raise UnsupportedOperatorError(
            f"no tabulated exponents for {kind.value} at harmonic {spec.harmonic}")

    s = math.sqrt(xi)
    pair = _resolve(kind, klein_sector, s)
    # normalise -0.0 so printed tables stay clean
    return ExponentPair(pair.a + 0.0, pair.c + 0.0)


def _resolve(kind: OperatorKind, klein_sector, s: float) -> ExponentPair:
    if kind in (OperatorKind.SPIN_LOWERING, OperatorKind.BOSE_FIELD):
        return ExponentPair(-s / 2, s / 2)
    if kind is OperatorKind.DENSITY:
        return ExponentPair(1 / s, -1 / s)
    if klein_sector is KleinSector.LAMBDA1:
        return ExponentPair(-(s + 1 / s) / 2, (s - 1 / s) / 2)
    return ExponentPair(-(s - 1 / s) / 2, (s + 1 / s) / 2)


def finite_size_energy(dN: int, dQ: int, params: LuttingerParameters) -> float:
    """Zero-mode energy ``(pi/2L) u [xi dN^2 + dQ^2/xi]``."""
    return (math.pi / (2.0 * params.length)) * params.u * (
        params.xi * dN * dN + dQ * dQ / params.xi)


def excitation_energy(state, params: LuttingerParameters) -> float:
    """Boson energy ``u (2 pi / L) m`` of a particle-hole state with momentum m."""
    from .excitations import state_momentum

    return params.u * (2.0 * math.pi / params.length) * state_momentum(state)
