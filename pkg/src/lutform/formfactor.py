"""Closed-form particle-hole formfactors.

A state's formfactor is a Cauchy determinant times one vertex factor per
particle and per hole.  Every vertex factor is a ratio of Gamma functions
which we evaluate as a finite Pochhammer product, so it is a polynomial in the
exponent and never meets a pole, even at integer exponents.

Results are ratios to the lowest formfactor of the operator; the absolute
normalisation comes from the scaling relations in :mod:`lutform.series`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DegenerateInputError
from .excitations import Branch, ParticleHoleState, TwoBranchState, check_state
from .params import ExponentPair

__all__ = [
    "FormFactorValue",
    "vertex_plus_right",
    "vertex_minus_right",
    "vertex_plus_left",
    "vertex_minus_left",
    "cauchy_det",
    "cauchy_det_signed_log",
    "formfactor_right",
    "formfactor_left",
    "formfactor_two_branch",
]


@dataclass(frozen=True)
class FormFactorValue:
    """Signed value with its log-magnitude; ``sign == 0`` marks an exact zero."""

    value: float
    log_magnitude: float
    sign: int

    @classmethod
    def from_signed_log(cls, sign: int, log_magnitude: float) -> "FormFactorValue":
        if sign == 0:
            return cls(0.0, -math.inf, 0)
        return cls(sign * math.exp(log_magnitude), log_magnitude, sign)

    @property
    def squared(self) -> float:
        """``|F|^2`` evaluated from the log-magnitude (no intermediate overflow)."""
        return 0.0 if self.sign == 0 else math.exp(2.0 * self.log_magnitude)

    def __mul__(self, other: "FormFactorValue") -> "FormFactorValue":
        return FormFactorValue.from_signed_log(self.sign * other.sign,
                                               self.log_magnitude + other.log_magnitude)


def _require_int(name: str, value: int) -> int:
    if isinstance(value, bool) or int(value) != value:
        raise ValueError(f"{name} must be an integer, got {value!r}")
    return int(value)


def vertex_plus_right(p: int, a: float) -> float:
    """``Gamma(p+a)/(Gamma(p) Gamma(a)) = a (a+1)...(a+p-1)/(p-1)!`` for p >= 1."""
    p = _require_int("p", p)
    if p < 1:
        raise ValueError(f"right-branch particle momentum must be >= 1, got {p}")
    value = a
    for j in range(1, p):
        value *= (a + j) / j
    return value


def vertex_minus_right(q: int, a: float) -> float:
    """``Gamma(1-q-a)/(Gamma(1-q) Gamma(1-a)) = prod_{j=1..k} (j-a)/j`` with k = -q."""
    q = _require_int("q", q)
    if q > 0:
        raise ValueError(f"right-branch hole momentum must be <= 0, got {q}")
    value = 1.0
    for j in range(1, -q + 1):
        value *= (j - a) / j
    return value


def vertex_plus_left(p: int, c: float) -> float:
    """``Gamma(-p-c)/(Gamma(-p) Gamma(1-c)) = prod_{j=1..k-1} (j-c)/j`` with k = -p."""
    p = _require_int("p", p)
    if p > -1:
        raise ValueError(f"left-branch particle momentum must be <= -1, got {p}")
    value = 1.0
    for j in range(1, -p):
        value *= (j - c) / j
    return value


def vertex_minus_left(q: int, c: float) -> float:
    """``Gamma(1+q+c)/(Gamma(1+q) Gamma(c)) = c (c+1)...(c+q)/q!`` for q >= 0."""
    q = _require_int("q", q)
    if q < 0:
        raise ValueError(f"left-branch hole momentum must be >= 0, got {q}")
    value = c
    for j in range(1, q + 1):
        value *= (c + j) / j
    return value


def cauchy_det_signed_log(particles: Sequence[int],
                          holes: Sequence[int]) -> tuple[int, float]:
    """Sign and log-magnitude of ``det[1/(p_i - q_j)]`` from the Cauchy product.

    ``det = prod_{i<j} (p_i - p_j)(q_j - q_i) / prod_{i,j} (p_i - q_j)``
    """
    n = len(particles)
    if len(holes) != n:
        raise ValueError(f"need as many holes as particles, got {n} and {len(holes)}")
    sign = 1
    log_mag = 0.0
    for i in range(n):
        for j in range(n):
            d = particles[i] - holes[j]
            if d == 0:
                raise DegenerateInputError(
                    f"particle {particles[i]} coincides with hole {holes[j]}")
            if d < 0:
                sign = -sign
            log_mag -= math.log(abs(d))
    for i in range(n):
        for j in range(i + 1, n):
            dp = particles[i] - particles[j]
            dq = holes[j] - holes[i]
            if dp == 0 or dq == 0:
                return 0, -math.inf
            if (dp < 0) != (dq < 0):
                sign = -sign
            log_mag += math.log(abs(dp)) + math.log(abs(dq))
    return sign, log_mag


def cauchy_det(particles: Sequence[int], holes: Sequence[int]) -> float:
    sign, log_mag = cauchy_det_signed_log(particles, holes)
    return 0.0 if sign == 0 else sign * math.exp(log_mag)


def _accumulate(sign: int, log_mag: float, factor: float) -> tuple[int, float]:
    if factor == 0.0 or sign == 0:
        return 0, -math.inf
    if factor < 0:
        sign = -sign
    return sign, log_mag + math.log(abs(factor))


def formfactor_right(state: ParticleHoleState, a: float) -> FormFactorValue:
    """Right-branch formfactor ``F_a`` relative to the lowest formfactor.

    >>> from lutform.excitations import ParticleHoleState
    >>> round(formfactor_right(ParticleHoleState("right", (2, 1), (0, -1)), -0.5).value, 15)
    -0.015625
    """
    check_state(state, Branch.RIGHT)
    sign, log_mag = cauchy_det_signed_log(state.particles, state.holes)
    for p in state.particles:
        sign, log_mag = _accumulate(sign, log_mag, vertex_plus_right(p, a))
    for q in state.holes:
        sign, log_mag = _accumulate(sign, log_mag, vertex_minus_right(q, a))
    return FormFactorValue.from_signed_log(sign, log_mag)


def formfactor_left(state: ParticleHoleState, c: float) -> FormFactorValue:
    """Left-branch formfactor ``F_c`` relative to the lowest formfactor."""
    check_state(state, Branch.LEFT)
    sign, log_mag = cauchy_det_signed_log(state.particles, state.holes)
    for p in state.particles:
        sign, log_mag = _accumulate(sign, log_mag, vertex_plus_left(p, c))
    for q in state.holes:
        sign, log_mag = _accumulate(sign, log_mag, vertex_minus_left(q, c))
    return FormFactorValue.from_signed_log(sign, log_mag)


def formfactor(state: ParticleHoleState, exponent: float) -> FormFactorValue:
    """Dispatch on the state's branch."""
    if state.branch is Branch.RIGHT:
        return formfactor_right(state, exponent)
    return formfactor_left(state, exponent)


def formfactor_two_branch(state: TwoBranchState, exps: ExponentPair) -> FormFactorValue:
    return formfactor_right(state.right, exps.a) * formfactor_left(state.left, exps.c)
