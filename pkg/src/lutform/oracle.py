"""Independent cross-checks for the production paths.

* vertex factors from their Fourier-integral representations, by quadrature;
* Cauchy determinants by pivoted elimination on the explicit matrix;
* particle-hole states by generate-and-filter;
* partition numbers from the product generating function.

None of these routines call into :mod:`lutform.formfactor` or
:mod:`lutform.excitations` enumeration code.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from .errors import ConvergenceError, DegenerateInputError
from .excitations import Branch, ParticleHoleState

__all__ = [
    "QuadratureConfig",
    "fourier_coefficient",
    "vertex_plus_right_quadrature",
    "vertex_minus_right_quadrature",
    "vertex_plus_left_quadrature",
    "vertex_minus_left_quadrature",
    "vertex_left_quadrature",
    "cauchy_det_lu",
    "brute_force_states",
    "partition_numbers",
    "random_configuration",
]


@dataclass(frozen=True)
class QuadratureConfig:
    """Panel rule settings.

    ``nodes`` is the per-panel node count of the first pass, doubled until two
    passes agree to ``tolerance``.  ``singularity_offset`` is the width (in
    radians) of each endpoint panel that carries the algebraic weight.
    """

    nodes: int = 32
    tolerance: float = 1e-10
    singularity_offset: float = 0.05
    max_doublings: int = 4

    def __post_init__(self):
        if self.nodes < 16:
            raise ValueError(f"nodes must be >= 16, got {self.nodes}")
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if not 0 < self.singularity_offset < 0.1:
            raise ValueError(f"singularity_offset must lie in (0, 0.1), got {self.singularity_offset}")


DEFAULT_QUADRATURE = QuadratureConfig()


@functools.lru_cache(maxsize=64)
def _jacobi(n: int, s: float):
    return roots_jacobi(n, 0.0, s)


@functools.lru_cache(maxsize=16)
def _legendre(n: int):
    return roots_legendre(n)


def _panel_edges(delta: float) -> list[float]:
    edges = [delta]
    while 2 * edges[-1] < math.pi:
        edges.append(2 * edges[-1])
    edges.append(math.pi)
    mirrored = [2 * math.pi - e for e in reversed(edges[:-1])]
    return edges + mirrored


def _integrate(k: int, s: float, n: int, delta: float) -> complex:
    """``(1/2pi) int_0^{2pi} e^{-iky} (1 - e^{iy})^s dy`` with n nodes per panel."""
    two_pi = 2 * math.pi

    def smooth_left(y):
        # integrand divided by y^s; principal branch arg(1 - e^{iy}) = (y - pi)/2
        return np.exp(-1j * k * y) * (2 * np.sin(y / 2) / y) ** s * np.exp(0.5j * s * (y - math.pi))

    def smooth_right(y):
        return (np.exp(-1j * k * y) * (2 * np.sin(y / 2) / (two_pi - y)) ** s
                * np.exp(0.5j * s * (y - math.pi)))

    def full(y):
        return np.exp(-1j * k * y) * (2 * np.sin(y / 2)) ** s * np.exp(0.5j * s * (y - math.pi))

    # Endpoint panels: y^s g(y) with g smooth.  The value g(0) is integrated
    # exactly and the remainder y^(s+1) (g(y) - g(0))/y by Gauss-Jacobi with
    # exponent s + 1; scipy's rules lose accuracy when the exponent nears -1.
    xj, wj = _jacobi(min(n, 32), s + 1)
    t = delta * (1 + xj) / 2
    exact = delta ** (s + 1) / (s + 1)
    scale = (delta / 2) ** (s + 2)
    g0 = np.exp(-0.5j * s * math.pi)
    total = g0 * exact + scale * np.sum(wj * (smooth_left(t) - g0) / t)
    g0 = np.exp(0.5j * s * math.pi)
    total += g0 * exact + scale * np.sum(wj * (smooth_right(two_pi - t) - g0) / t)

    xl, wl = _legendre(n)
    edges = _panel_edges(delta)
    for lo, hi in zip(edges, edges[1:]):
        half = (hi - lo) / 2
        total += half * np.sum(wl * full(lo + half * (1 + xl)))
    return complex(total) / two_pi


def _quadrature(k: int, s: float, cfg: QuadratureConfig) -> complex:
    n = cfg.nodes
    previous = _integrate(k, s, n, cfg.singularity_offset)
    for _ in range(cfg.max_doublings):
        n *= 2
        current = _integrate(k, s, n, cfg.singularity_offset)
        if abs(current - previous) <= cfg.tolerance:
            return current
        previous = current
    raise ConvergenceError(
        f"quadrature for k={k}, s={s} did not settle below {cfg.tolerance} with {n} nodes")


def fourier_coefficient(k: int, s: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """``(1/2pi) int_0^{2pi} e^{-iky} (1 - e^{iy})^s dy`` for integer k >= 0.

    The integral converges for ``s > -1``.  Below that it is continued
    analytically by integrating by parts, which gives
    ``J_s(k) = J_{s+1}(k) (s + 1 - k) / (s + 1)``.  Negative integer ``s``
    (a pole, not a branch point) is rejected.
    """
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if s <= -1 and float(s).is_integer():
        raise ValueError(f"exponent {s} is a negative integer; no branch-point integral")
    factor = 1.0
    while s <= -1:
        factor *= (s + 1 - k) / (s + 1)
        s += 1
    value = _quadrature(k, s, cfg)
    if abs(value.imag) > cfg.tolerance:
        raise ConvergenceError(f"imaginary residue {value.imag:.3e} exceeds {cfg.tolerance}")
    return factor * value.real


def vertex_plus_right_quadrature(p: int, a: float,
                                 cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if a == 0:
        return 0.0
    return a * fourier_coefficient(p - 1, -(a + 1), cfg)


def vertex_minus_right_quadrature(q: int, a: float,
                                  cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    if q > 0:
        raise ValueError(f"q must be <= 0, got {q}")
    return fourier_coefficient(-q, a - 1, cfg)


def vertex_plus_left_quadrature(p: int, c: float,
                                cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    # y -> 2pi - y turns (1 - e^{-iy}) into (1 - e^{iy})
    if p > -1:
        raise ValueError(f"p must be <= -1, got {p}")
    return fourier_coefficient(-p - 1, c - 1, cfg)


def vertex_minus_left_quadrature(q: int, c: float,
                                 cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    if q < 0:
        raise ValueError(f"q must be >= 0, got {q}")
    if c == 0:
        return 0.0
    return c * fourier_coefficient(q, -(c + 1), cfg)


def vertex_left_quadrature(momentum: int, c: float,
                           cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Left-branch vertex factor; ``momentum <= -1`` is a particle, ``>= 0`` a hole."""
    if momentum <= -1:
        return vertex_plus_left_quadrature(momentum, c, cfg)
    return vertex_minus_left_quadrature(momentum, c, cfg)


def cauchy_det_lu(particles: Sequence[int], holes: Sequence[int]) -> float:
    """Determinant of ``[1/(p_i - q_j)]`` by partial-pivot elimination.

    Elimination runs in exact rational arithmetic: Cauchy matrices are badly
    conditioned and a floating-point LU only resolves them to ~1e-7.
    """
    n = len(particles)
    if len(holes) != n:
        raise ValueError("particles and holes must have equal length")
    if any(p == q for p in particles for q in holes):
        raise DegenerateInputError("a particle coincides with a hole")
    rows = [[Fraction(1, p - q) for q in holes] for p in particles]
    det = Fraction(1)
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(rows[r][col]))
        if rows[pivot][col] == 0:
            return 0.0
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        head = rows[col]
        det *= head[col]
        for r in range(col + 1, n):
            f = rows[r][col] / head[col]
            if f:
                row = rows[r]
                for j in range(col + 1, n):
                    row[j] -= f * head[j]
    return float(det)


def random_configuration(rng: random.Random, max_n: int = 8,
                         bound: int = 30) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Distinct integers in ``[-bound, bound]`` split into particles and holes."""
    n = rng.randint(1, max_n)
    values = rng.sample(range(-bound, bound + 1), 2 * n)
    return tuple(values[:n]), tuple(values[n:])


def brute_force_states(branch: Branch | str, m: int) -> list[ParticleHoleState]:
    """Generate-and-filter enumeration of all states with momentum ``m`` (m <= 12)."""
    branch = Branch(branch)
    if not 0 <= m <= 12:
        raise ValueError(f"brute force is limited to 0 <= m <= 12, got {m}")
    if branch is Branch.RIGHT:
        particle_range = range(1, m + 1)
        hole_range = range(-m, 1)
    else:
        particle_range = range(-m, 0)
        hole_range = range(0, m + 1)
    found = []
    for n in range(m + 1):
        for ps in itertools.combinations(particle_range, n):
            for qs in itertools.combinations(hole_range, n):
                if abs(sum(ps) - sum(qs)) != m:
                    continue
                reverse = branch is Branch.RIGHT
                found.append(ParticleHoleState(branch, tuple(sorted(ps, reverse=reverse)),
                                               tuple(sorted(qs, reverse=reverse))))
    return found


def partition_numbers(limit: int) -> list[int]:
    """``p(0..limit)`` from the coefficients of ``prod_k 1/(1 - x^k)``."""
    counts = [1] + [0] * limit
    for part in range(1, limit + 1):
        for total in range(part, limit + 1):
            counts[total] += counts[total - part]
    return counts


# -- suites used by the CLI ---------------------------------------------------

def _case(name: str, expected: float, got: float, tol: float, relative: bool = False) -> dict:
    err = abs(got - expected)
    if relative and expected != 0:
        err /= abs(expected)
    return {"case": name, "expected": expected, "got": got, "error": err,
            "tolerance": tol, "passed": bool(err <= tol)}


def quadrature_suite(exponents: Sequence[float] = (-0.9, -0.5, 0.3, 0.7), max_p: int = 10,
                     tol: float = 1e-7,
                     cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> list[dict]:
    from .formfactor import (vertex_minus_left, vertex_minus_right, vertex_plus_left,
                             vertex_plus_right)

    pairs: list[tuple[str, Callable, Callable, int]] = []
    for k in range(1, max_p + 1):
        pairs.append(("plus_right", vertex_plus_right, vertex_plus_right_quadrature, k))
        pairs.append(("plus_left", vertex_plus_left, vertex_plus_left_quadrature, -k))
    for k in range(0, max_p + 1):
        pairs.append(("minus_right", vertex_minus_right, vertex_minus_right_quadrature, -k))
        pairs.append(("minus_left", vertex_minus_left, vertex_minus_left_quadrature, k))
    cases = []
    for e in exponents:
        for name, exact, quad, mom in pairs:
            cases.append(_case(f"{name}({mom}, {e})", exact(mom, e), quad(mom, e, cfg), tol))
    return cases


def determinant_suite(seed: int = 0, count: int = 1000, max_n: int = 8, bound: int = 30,
                      tol: float = 1e-11) -> list[dict]:
    from .formfactor import cauchy_det

    rng = random.Random(seed)
    cases = []
    for i in range(count):
        p, q = random_configuration(rng, max_n, bound)
        cases.append(_case(f"#{i} p={list(p)} q={list(q)}", cauchy_det_lu(p, q),
                           cauchy_det(p, q), tol, relative=True))
    return cases


def enumeration_suite(max_m: int = 12) -> list[dict]:
    from .excitations import enumerate_states

    cases = []
    for branch in Branch:
        for m in range(max_m + 1):
            brute = set(brute_force_states(branch, m))
            fast = enumerate_states(branch, m)
            ok = brute == set(fast) and len(fast) == len(set(fast))
            cases.append({"case": f"{branch.value} m={m}", "expected": len(brute),
                          "got": len(fast), "passed": ok})
    return cases
