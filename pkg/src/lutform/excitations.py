"""Particle-hole configurations near one Fermi point.

Momenta are integers in units of ``2*pi/L``.  On the right branch particles
sit at ``p >= 1`` and holes at ``q <= 0``; the left branch is the mirror image
(``p <= -1``, ``q >= 0``).  The hole index 0 is the Fermi-point orbital itself.

Configurations at total momentum ``m`` are in bijection with the partitions
of ``m`` through Frobenius coordinates ``(alpha | beta)``:
``p_i = alpha_i + 1`` and ``q_i = -beta_i`` on the right branch.
"""

from __future__ import annotations

import enum
import functools
import os
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import EnumerationCapError, InvalidStateError

__all__ = [
    "Branch",
    "ParticleHoleState",
    "TwoBranchState",
    "Violation",
    "DEFAULT_ENUMERATION_CAP",
    "validate_state",
    "check_state",
    "state_momentum",
    "mirror",
    "partitions",
    "frobenius_coordinates",
    "partition_count",
    "enumerate_states",
]

DEFAULT_ENUMERATION_CAP = 10**6
CAP_ENV_VAR = "LUTFORM_ENUMERATION_CAP"


class Branch(str, enum.Enum):
    RIGHT = "right"
    LEFT = "left"

    @property
    def sign(self) -> int:
        return 1 if self is Branch.RIGHT else -1


@dataclass(frozen=True)
class ParticleHoleState:
    """Particles and holes on one branch, stored in canonical order.

    Canonical order lists particles from the outermost inwards and holes from
    the Fermi point outwards, e.g. right ``p=(2, 1), q=(0, -1)`` and left
    ``p=(-2, -1), q=(0, 1)``.  The order fixes the sign of the Cauchy
    determinant and hence of the formfactor.
    """

    branch: Branch
    particles: tuple[int, ...] = ()
    holes: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "branch", Branch(self.branch))
        object.__setattr__(self, "particles", tuple(self.particles))
        object.__setattr__(self, "holes", tuple(self.holes))

    @property
    def n(self) -> int:
        return len(self.particles)

    @classmethod
    def empty(cls, branch: Branch | str = Branch.RIGHT) -> "ParticleHoleState":
        return cls(Branch(branch))

    def to_record(self) -> dict:
        return {"branch": self.branch.value,
                "particles": list(self.particles),
                "holes": list(self.holes)}

    @classmethod
    def from_record(cls, record: dict) -> "ParticleHoleState":
        return cls(Branch(record["branch"]),
                   tuple(record.get("particles", ())), tuple(record.get("holes", ())))


@dataclass(frozen=True)
class TwoBranchState:
    right: ParticleHoleState
    left: ParticleHoleState

    def __post_init__(self):
        if self.right.branch is not Branch.RIGHT:
            raise InvalidStateError("TwoBranchState.right must be a right-branch state")
        if self.left.branch is not Branch.LEFT:
            raise InvalidStateError("TwoBranchState.left must be a left-branch state")


@dataclass(frozen=True)
class Violation:
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


def _strictly_ordered(values: Sequence[int], descending: bool) -> bool:
    if descending:
        return all(x > y for x, y in zip(values, values[1:]))
    return all(x < y for x, y in zip(values, values[1:]))


def validate_state(state: ParticleHoleState) -> Optional[Violation]:
    """Return the first violated invariant of ``state``, or None when valid."""
    p, q = state.particles, state.holes
    if len(p) != len(q):
        return Violation("length_mismatch",
                         f"{len(p)} particles but {len(q)} holes")
    for v in p + q:
        if isinstance(v, bool) or not isinstance(v, int):
            return Violation("non_integer", f"momentum {v!r} is not an integer")

    right = state.branch is Branch.RIGHT
    for v in p:
        if (right and v < 1) or (not right and v > -1):
            side = ">= 1" if right else "<= -1"
            return Violation("particle_wrong_side",
                             f"particle {v} on wrong side of Fermi point (need {side})")
    for v in q:
        if (right and v > 0) or (not right and v < 0):
            side = "<= 0" if right else ">= 0"
            return Violation("hole_wrong_side",
                             f"hole {v} on wrong side of Fermi point (need {side})")

    if len(set(p)) != len(p):
        return Violation("duplicate_particle", f"duplicate particle in {p}")
    if len(set(q)) != len(q):
        return Violation("duplicate_hole", f"duplicate hole in {q}")

    # right: both descending; left: both ascending
    if not _strictly_ordered(p, descending=right):
        return Violation("particle_order",
                         f"particles {p} not in canonical order "
                         f"({'descending' if right else 'ascending'})")
    if not _strictly_ordered(q, descending=right):
        return Violation("hole_order",
                         f"holes {q} not in canonical order "
                         f"({'descending' if right else 'ascending'})")

    n = len(p)
    if abs(sum(p) - sum(q)) < n * n:
        return Violation("momentum_bound", f"momentum below minimal packing n^2={n * n}")
    return None


def check_state(state: ParticleHoleState, branch: Branch | None = None) -> None:
    """Raise InvalidStateError unless ``state`` is valid (and on ``branch``)."""
    if branch is not None and state.branch is not Branch(branch):
        raise InvalidStateError(
            f"expected a {Branch(branch).value}-branch state, got {state.branch.value}")
    violation = validate_state(state)
    if violation is not None:
        raise InvalidStateError(str(violation))


def state_momentum(state: ParticleHoleState) -> int:
    return abs(sum(state.particles) - sum(state.holes))


def mirror(state: ParticleHoleState) -> ParticleHoleState:
    """Reflect all momenta and swap the branch tag; order is preserved."""
    other = Branch.LEFT if state.branch is Branch.RIGHT else Branch.RIGHT
    return ParticleHoleState(other,
                             tuple(-v for v in state.particles),
                             tuple(-v for v in state.holes))


def partitions(m: int) -> Iterator[tuple[int, ...]]:
    """Yield the partitions of ``m`` as weakly decreasing tuples."""
    if m < 0:
        return
    if m == 0:
        yield ()
        return
    # Iterative generation in reverse lexicographic order.
    parts = [m]
    while True:
        yield tuple(parts)
        # pop trailing ones
        ones = 0
        while parts and parts[-1] == 1:
            parts.pop()
            ones += 1
        if not parts:
            return
        k = parts[-1] - 1
        parts[-1] = k
        rest = ones + 1
        while rest > k:
            parts.append(k)
            rest -= k
        if rest:
            parts.append(rest)


def frobenius_coordinates(partition: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Arm and leg lengths ``(alpha, beta)`` of the diagonal boxes.

    >>> frobenius_coordinates((4, 2, 1))
    ((3, 0), (2, 0))
    """
    lam = list(partition)
    d = sum(1 for i, part in enumerate(lam, start=1) if part >= i)
    conj = [sum(1 for part in lam if part >= i) for i in range(1, d + 1)]
    alpha = tuple(lam[i] - (i + 1) for i in range(d))
    beta = tuple(conj[i] - (i + 1) for i in range(d))
    return alpha, beta


@functools.lru_cache(maxsize=None)
def partition_count(m: int) -> int:
    """Number of partitions of ``m`` (Euler pentagonal recurrence)."""
    if m < 0:
        return 0
    counts = [1] + [0] * m
    for n in range(1, m + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * counts[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * counts[n - g2]
            k += 1
        counts[n] = total
    return counts[m]


def _cap_from_env() -> int:
    raw = os.environ.get(CAP_ENV_VAR)
    return int(raw) if raw else DEFAULT_ENUMERATION_CAP


def _right_state(partition: Sequence[int]) -> ParticleHoleState:
    alpha, beta = frobenius_coordinates(partition)
    particles = tuple(a + 1 for a in alpha)
    holes = tuple(sorted((-b for b in beta), reverse=True))
    return ParticleHoleState(Branch.RIGHT, particles, holes)


@functools.lru_cache(maxsize=128)
def _enumerate(branch: Branch, m: int) -> tuple[ParticleHoleState, ...]:
    if branch is Branch.LEFT:
        return tuple(mirror(s) for s in _enumerate(Branch.RIGHT, m))
    states = [_right_state(lam) for lam in partitions(m)]
    states.sort(key=lambda s: (s.n, s.particles, s.holes))
    return tuple(states)


def enumerate_states(branch: Branch | str, m: int,
                     cap: int | None = None) -> tuple[ParticleHoleState, ...]:
    """All states on ``branch`` with total momentum ``m``, each exactly once.

    Ordering is by number of pairs, then lexicographic on (particles, holes)
    in the right-branch frame; the left-branch list is the element-wise
    mirror of the right-branch list.  ``cap`` defaults to the
    ``LUTFORM_ENUMERATION_CAP`` environment variable or 10**6.
    """
    if int(m) != m or m < 0:
        raise ValueError(f"momentum must be a non-negative integer, got {m!r}")
    m = int(m)
    cap = _cap_from_env() if cap is None else cap
    count = partition_count(m)
    if count > cap:
        raise EnumerationCapError(
            f"momentum sector m={m} holds {count} states, above the cap of {cap}")
    return _enumerate(Branch(branch), m)
