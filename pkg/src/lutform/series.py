"""Sum rules, formfactor-series correlators and prefactor scaling relations.

The central identity: summing ``|F_a|^2`` over every state of momentum ``m``
gives the Pochhammer coefficient ``(a^2)_m / m!``, so the generating series
``sum_m (a^2)_m/m! z^m`` reproduces ``(1 - z)^(-a^2)``.  Series are evaluated
at ``z = exp(-eps) exp(+-i theta)``, where ``theta = 2 pi x / L`` and ``eps``
is the damping regulator.

Every :class:`SeriesResult` carries a rigorous bound on the truncated tail.
"""

from __future__ import annotations

import cmath
import functools
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import mpmath

from .errors import (DomainError, InconsistentPrefactorError, MissingPrefactorError,
                     SingularityError, UnsupportedOperatorError)
from .excitations import Branch, enumerate_states, partition_count
from .formfactor import formfactor
from .params import LuttingerParameters, OperatorKind, OperatorSpec

__all__ = [
    "SeriesResult",
    "PrefactorSet",
    "sumrule_rhs",
    "sumrule_lhs",
    "series_tail_bound",
    "wynn_limit",
    "generating_correlator_closed",
    "generating_correlator_series",
    "two_branch_series",
    "spin_correlator_reconstruct",
    "density_correlator_reconstruct",
    "scaling_spin",
    "scaling_density",
    "scaling_appendix_a",
    "asymptotic_correlator",
]


@dataclass(frozen=True)
class SeriesResult:
    partial_sum: complex
    target: complex
    abs_error: float
    rel_error: float
    terms_used: int
    momentum_cutoff: int
    tail_bound: float = math.inf
    #: Wynn-epsilon limit of the momentum-ordered partial sums, if requested.
    extrapolated: complex | None = None

    @classmethod
    def compare(cls, partial_sum: complex, target: complex, terms_used: int,
                momentum_cutoff: int, tail_bound: float = math.inf,
                extrapolated: complex | None = None) -> "SeriesResult":
        abs_error = abs(partial_sum - target)
        rel_error = abs_error / abs(target) if target != 0 else math.nan
        return cls(complex(partial_sum), complex(target), abs_error, rel_error,
                   terms_used, momentum_cutoff, tail_bound,
                   None if extrapolated is None else complex(extrapolated))

    @property
    def within_tail_bound(self) -> bool:
        return self.abs_error <= self.tail_bound

    @property
    def extrapolated_rel_error(self) -> float:
        if self.extrapolated is None or self.target == 0:
            return math.nan
        return abs(self.extrapolated - self.target) / abs(self.target)

    def to_record(self) -> dict:
        def cplx(z: complex):
            return {"re": z.real, "im": z.imag}

        return {
            "partial_sum": cplx(self.partial_sum),
            "target": cplx(self.target),
            "abs_error": self.abs_error,
            "rel_error": None if math.isnan(self.rel_error) else self.rel_error,
            "tail_bound": None if math.isinf(self.tail_bound) else self.tail_bound,
            "terms_used": self.terms_used,
            "momentum_cutoff": self.momentum_cutoff,
            "extrapolated": None if self.extrapolated is None else cplx(self.extrapolated),
        }


@dataclass(frozen=True)
class PrefactorSet:
    """Non-universal amplitudes of a correlator's power-law harmonics.

    ``values`` maps harmonic index m to C_m (Bose/spin), B_m (Fermi) or
    A_m (density).  For the density correlator A_1 plays the role of the
    ``cos(2 p_F x)`` amplitude C_10.
    """

    operator: OperatorSpec
    values: Mapping[int, float] = field(default_factory=dict)
    fermi_momentum: float = math.pi / 2
    density: float = 0.5

    def __post_init__(self):
        values = {int(k): float(v) for k, v in dict(self.values).items()}
        if any(k < 0 for k in values):
            raise ValueError("harmonic indices must be non-negative")
        if not self.fermi_momentum > 0:
            raise ValueError(f"fermi_momentum must be positive, got {self.fermi_momentum!r}")
        object.__setattr__(self, "values", values)

    def get(self, m: int) -> float:
        try:
            return self.values[m]
        except KeyError:
            raise MissingPrefactorError(
                f"no prefactor for harmonic {m} of {self.operator.kind.value}") from None

    @classmethod
    def from_record(cls, record: Mapping) -> "PrefactorSet":
        """Build from the flat JSON form ``{operator, p_F, rho0, values}``."""
        op = record["operator"]
        if isinstance(op, Mapping):
            spec = OperatorSpec(OperatorKind(op["kind"]), int(op.get("harmonic", 0)))
        else:
            spec = OperatorSpec(_operator_alias(op))
        return cls(spec, {int(k): float(v) for k, v in record.get("values", {}).items()},
                   float(record.get("p_F", math.pi / 2)), float(record.get("rho0", 0.5)))

    @classmethod
    def load(cls, path: str | Path) -> "PrefactorSet":
        return cls.from_record(json.loads(Path(path).read_text()))

    def to_record(self) -> dict:
        return {"operator": self.operator.kind.value, "p_F": self.fermi_momentum,
                "rho0": self.density,
                "values": {str(k): v for k, v in sorted(self.values.items())}}


_ALIASES = {
    "spin": OperatorKind.SPIN_LOWERING,
    "sigma-": OperatorKind.SPIN_LOWERING,
    "bose": OperatorKind.BOSE_FIELD,
    "fermi": OperatorKind.FERMI_FIELD_RIGHT,
    "density": OperatorKind.DENSITY,
}


def _operator_alias(name: str) -> OperatorKind:
    try:
        return _ALIASES[name]
    except KeyError:
        return OperatorKind(name)


# -- sum rule ---------------------------------------------------------------

def sumrule_rhs(a: float, m: int) -> float:
    """``Gamma(a^2+m)/(Gamma(m+1) Gamma(a^2))`` as the product ``(a^2)_m / m!``."""
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    a2 = a * a
    value = 1.0
    for j in range(m):
        value *= (a2 + j) / (j + 1)
    return value


@functools.lru_cache(maxsize=4096)
def _sumrule_lhs(a: float, m: int, branch: Branch) -> float:
    states = enumerate_states(branch, m, cap=math.inf)
    return math.fsum(formfactor(s, a).squared for s in states)


def sumrule_lhs(a: float, m: int, branch: Branch | str = Branch.RIGHT,
                cap: int | None = None) -> float:
    """Exact sum of ``|F|^2`` over all states of momentum ``m`` on ``branch``.

    The exponent is ``a`` on the right branch and ``c`` on the left.
    """
    branch = Branch(branch)
    enumerate_states(branch, m, cap)  # cap check
    return _sumrule_lhs(float(a), int(m), branch)


def _n_states(cutoff: int) -> int:
    return sum(partition_count(m) for m in range(cutoff + 1))


def series_tail_bound(a: float, cutoff: int, damping: float, theta: float) -> float:
    """Upper bound on ``|sum_{m>M} (a^2)_m/m! z^m|`` for ``|z| = exp(-damping)``.

    Combines a geometric bound (coefficient ratios are at most
    ``max(1, (a^2+M+1)/(M+2))`` beyond the cutoff) with the Abel summation
    bound ``b_{M+1}/|sin(theta/2)|``, valid when ``b_m = c_m r^m`` decreases
    to zero.  Returns ``inf`` if neither applies.
    """
    a2 = a * a
    r = math.exp(-damping)
    c_next = sumrule_rhs(a, cutoff + 1)
    if c_next == 0.0:
        return 0.0
    b_next = c_next * r ** (cutoff + 1)
    ratio = r * max(1.0, (a2 + cutoff + 1) / (cutoff + 2))
    bounds = [math.inf]
    if ratio < 1.0:
        bounds.append(b_next / (1.0 - ratio))
    if ratio <= 1.0 and (r < 1.0 or a2 < 1.0):
        s = abs(math.sin(theta / 2))
        if s > 0:
            bounds.append(b_next / s)
    return min(bounds)


def wynn_limit(partial_sums: Sequence[complex]) -> complex:
    """Limit of a sequence of partial sums by Wynn's epsilon algorithm.

    Undamped series on the unit circle converge only like ``m^(a^2-1)``, but
    their partial sums oscillate with the phase ``e^{i m theta}``, which is
    the case the iterated Shanks transform removes efficiently.
    """
    if not partial_sums:
        raise ValueError("need at least one partial sum")
    if len(partial_sums) < 3:
        return complex(partial_sums[-1])
    with mpmath.workdps(30):
        table = mpmath.shanks([mpmath.mpc(v) for v in partial_sums])
        return complex(table[-1][-1])


def _z(branch: Branch, theta: float, damping: float) -> complex:
    return cmath.exp(complex(-damping, branch.sign * theta))


def generating_correlator_closed(exponent: float, branch: Branch | str, theta: float,
                                 damping: float = 0.0) -> complex:
    """``(1 - z)^(-exponent^2)`` on the principal branch.

    ``z = e^{-eps} e^{i theta}`` on the right branch and its conjugate on the
    left.
    """
    if damping < 0:
        raise ValueError(f"damping must be non-negative, got {damping!r}")
    if exponent == 0:
        return 1 + 0j
    w = 1 - _z(Branch(branch), theta, damping)
    if abs(w) == 0.0 or (damping == 0 and math.remainder(theta, 2 * math.pi) == 0):
        raise SingularityError("generating correlator evaluated at z = 1")
    return w ** (-(exponent * exponent))


def generating_correlator_series(exponent: float, branch: Branch | str, theta: float,
                                 damping: float, cutoff: int, *,
                                 use_sum_rule: bool = False,
                                 extrapolate: bool = False,
                                 cap: int | None = None) -> SeriesResult:
    """Damped formfactor series ``sum_{m<=M} sum_states |F|^2 z^m`` vs closed form.

    With ``use_sum_rule`` the per-sector ``|F|^2`` sums are replaced by the
    Pochhammer coefficients (no enumeration).  An undamped series is only
    accepted for ``exponent^2 < 1``, where it converges conditionally.
    ``extrapolate`` also records the Wynn-epsilon limit of the partial sums.
    """
    branch = Branch(branch)
    if damping < 0:
        raise ValueError(f"damping must be non-negative, got {damping!r}")
    if damping == 0 and exponent * exponent >= 1:
        raise DomainError("undamped series needs exponent^2 < 1; pass damping > 0")
    total = 0j
    partials = []
    for m in range(cutoff + 1):
        coeff = sumrule_rhs(exponent, m) if use_sum_rule else sumrule_lhs(exponent, m, branch, cap)
        total += coeff * _z(branch, m * theta, m * damping)
        partials.append(total)
    target = generating_correlator_closed(exponent, branch, theta, damping)
    terms = cutoff + 1 if use_sum_rule else _n_states(cutoff)
    return SeriesResult.compare(total, target, terms, cutoff,
                                series_tail_bound(exponent, cutoff, damping, theta),
                                wynn_limit(partials) if extrapolate else None)


def two_branch_series(a: float, c: float, theta: float, damping: float,
                      cutoff: int, cap: int | None = None, *,
                      extrapolate: bool = False) -> SeriesResult:
    """Product of the right-branch series at ``a`` and left-branch series at ``c``.

    The bound uses ``|S_R S_L - T_R T_L| <= b_R (|T_L| + b_L) + |T_R| b_L``.
    """
    right = generating_correlator_series(a, Branch.RIGHT, theta, damping, cutoff,
                                         extrapolate=extrapolate, cap=cap)
    left = generating_correlator_series(c, Branch.LEFT, theta, damping, cutoff,
                                        extrapolate=extrapolate, cap=cap)
    bound = (right.tail_bound * (abs(left.target) + left.tail_bound)
             + abs(right.target) * left.tail_bound)
    extrapolated = right.extrapolated * left.extrapolated if extrapolate else None
    return SeriesResult.compare(right.partial_sum * left.partial_sum,
                                right.target * left.target,
                                right.terms_used + left.terms_used, cutoff, bound,
                                extrapolated)


def _scaled(result: SeriesResult, factor: complex, shift: complex = 0) -> SeriesResult:
    extrapolated = None if result.extrapolated is None else result.extrapolated * factor + shift
    return SeriesResult.compare(result.partial_sum * factor + shift,
                                result.target * factor + shift,
                                result.terms_used, result.momentum_cutoff,
                                result.tail_bound * abs(factor), extrapolated)


def _check_position(x: float, length: float) -> None:
    if not 0 < x < length:
        raise ValueError(f"position must satisfy 0 < x < L={length}, got x={x!r}")


def spin_correlator_reconstruct(params: LuttingerParameters, prefactors: PrefactorSet,
                                x: float, damping: float | None = None,
                                cutoff: int = 30, *, lattice: bool = False,
                                extrapolate: bool = True,
                                cap: int | None = None) -> SeriesResult:
    """Spin (or Bose) correlator rebuilt from right/left particle-hole sums.

    ``partial_sum = C^2 S_R(a) S_L(c)`` with ``a = -sqrt(xi)/2``,
    ``c = sqrt(xi)/2`` and ``C^2 = scaling_spin(C_0)``.  The target is the same
    product with the closed-form generating correlators; at zero damping it
    equals ``C_0 / (L sin(pi x/L))^(xi/2)``.  ``lattice=True`` applies the
    staggering ``(-1)^x`` when ``x`` is an integer.  With ``extrapolate``
    (the default) the result also carries the Wynn-epsilon sum of each
    branch's momentum-ordered partial sums, which is what makes the undamped
    series usable at a cutoff of a few tens.
    """
    _check_position(x, params.length)
    eps = params.damping if damping is None else damping
    c2 = scaling_spin(prefactors.get(0), params)
    half = math.sqrt(params.xi) / 2
    theta = 2 * math.pi * x / params.length
    factor = c2
    if lattice and float(x).is_integer():
        factor *= -1 if int(x) % 2 else 1
    series = two_branch_series(-half, half, theta, eps, cutoff, cap, extrapolate=extrapolate)
    return _scaled(series, factor)


def density_correlator_reconstruct(params: LuttingerParameters, prefactors: PrefactorSet,
                                   x: float, damping: float | None = None,
                                   cutoff: int = 30, *, extrapolate: bool = True,
                                   cap: int | None = None) -> SeriesResult:
    """Density correlator: smooth term plus the ``2 p_F`` harmonic from the series.

    The harmonic is ``e^{2 i p_F x} C_1^2 S + h.c.`` with exponents
    ``a = 1/sqrt(xi)``, ``c = -1/sqrt(xi)`` and ``C_1^2 = scaling_density(A_1)``.
    """
    _check_position(x, params.length)
    eps = params.damping if damping is None else damping
    c1sq = scaling_density(prefactors.get(1), params)
    inv = 1 / math.sqrt(params.xi)
    theta = 2 * math.pi * x / params.length
    smooth = prefactors.density ** 2 - _density_smooth(x, params)
    phase = cmath.exp(2j * prefactors.fermi_momentum * x)
    series = two_branch_series(inv, -inv, theta, eps, cutoff, cap, extrapolate=extrapolate)

    def assemble(value: complex) -> float:
        # h.c. doubles the real part; the bound doubles with it
        return smooth + 2 * c1sq * (phase * value).real

    extrapolated = None if series.extrapolated is None else assemble(series.extrapolated)
    return SeriesResult.compare(assemble(series.partial_sum), assemble(series.target),
                                series.terms_used, cutoff, 2 * c1sq * series.tail_bound,
                                extrapolated)


# -- scaling relations --------------------------------------------------------

def scaling_spin(c0: float, params: LuttingerParameters) -> float:
    """Lowest spin formfactor squared: ``C^2 = (2/L)^(xi/2) C_0``."""
    if not c0 > 0:
        raise ValueError(f"prefactor C0 must be positive, got {c0!r}")
    return (2 / params.length) ** (params.xi / 2) * c0


def scaling_density(c10: float, params: LuttingerParameters) -> float:
    """Lowest density formfactor squared: ``C_1^2 = (1/2)(2/L)^(2/xi) C_10``."""
    if not c10 > 0:
        raise ValueError(f"prefactor C10 must be positive, got {c10!r}")
    return 0.5 * (2 / params.length) ** (2 / params.xi) * c10


def scaling_appendix_a(spec: OperatorSpec, prefactor: float,
                       params: LuttingerParameters) -> float:
    """``|<lambda(m)|O(0)|t>|^2`` of the harmonic ``spec.harmonic``.

    The ``(-1)^m`` signs are applied as printed; a negative outcome means the
    prefactor's sign does not fit the harmonic and raises.  The density
    operator has no m = 0 harmonic.
    """
    m = spec.harmonic
    xi, scale = params.xi, 2 / params.length
    kind = spec.kind
    if kind in (OperatorKind.SPIN_LOWERING, OperatorKind.BOSE_FIELD):
        value = (-1) ** m * prefactor / (1 if m == 0 else 2) * scale ** (xi / 2 + 2 * m * m / xi)
    elif kind.is_fermi:
        value = (-1) ** m * prefactor / 2 * scale ** (xi / 2 + (2 * m + 1) ** 2 / (2 * xi))
    elif kind is OperatorKind.DENSITY:
        if m < 1:
            raise UnsupportedOperatorError("density harmonics start at m = 1")
        value = prefactor / 2 * scale ** (2 * m * m / xi)
    else:  # pragma: no cover
        raise UnsupportedOperatorError(kind)
    if value < 0:
        raise InconsistentPrefactorError(
            f"prefactor {prefactor!r} gives a negative |formfactor|^2 at harmonic {m}")
    return value


# -- asymptotic correlators --------------------------------------------------

def _chord(x: float, length: float) -> float:
    return length * math.sin(math.pi * x / length)


def _density_smooth(x: float, params: LuttingerParameters) -> float:
    return 1 / (2 * params.xi * _chord(x, params.length) ** 2)


def asymptotic_correlator(spec: OperatorSpec, prefactors: PrefactorSet, x: float,
                          params: LuttingerParameters,
                          harmonics: Iterable[int] | None = None) -> float:
    """Truncated power-law expansion of the equal-time correlator of ``spec``.

    ``harmonics`` defaults to every harmonic present in ``prefactors``; naming
    a harmonic without a prefactor raises MissingPrefactorError.
    """
    _check_position(x, params.length)
    if spec.kind.is_fermi != prefactors.operator.kind.is_fermi or (
            (spec.kind is OperatorKind.DENSITY) != (prefactors.operator.kind is OperatorKind.DENSITY)):
        raise UnsupportedOperatorError(
            f"prefactors for {prefactors.operator.kind.value} do not fit {spec.kind.value}")
    ms = sorted(prefactors.values) if harmonics is None else sorted(set(harmonics))
    xi, pf = params.xi, prefactors.fermi_momentum
    chord = _chord(x, params.length)
    terms = []
    if spec.kind in (OperatorKind.SPIN_LOWERING, OperatorKind.BOSE_FIELD):
        for m in ms:
            terms.append(prefactors.get(m) * math.cos(2 * pf * m * x)
                         / chord ** (xi / 2 + 2 * m * m / xi))
    elif spec.kind.is_fermi:
        for m in ms:
            k = 2 * m + 1
            terms.append(prefactors.get(m) * math.sin(k * pf * x)
                         / chord ** (xi / 2 + k * k / (2 * xi)))
    else:
        terms.append(prefactors.density ** 2)
        terms.append(-_density_smooth(x, params))
        for m in ms:
            if m < 1:
                raise UnsupportedOperatorError("density harmonics start at m = 1")
            terms.append(prefactors.get(m) * math.cos(2 * pf * m * x)
                         / chord ** (2 * m * m / xi))
    return math.fsum(terms)
