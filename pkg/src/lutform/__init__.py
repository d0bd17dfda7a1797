"""Particle-hole formfactors of one-dimensional quantum liquids.

Closed-form Cauchy-determinant formfactors for the low-lying excitations of a
Luttinger liquid, their momentum-resolved sum rules, and the scaling
relations linking lowest formfactors to correlator prefactors.
"""

from .excitations import (Branch, ParticleHoleState, TwoBranchState, enumerate_states,
                          state_momentum, validate_state)
from .formfactor import (FormFactorValue, cauchy_det, formfactor_left, formfactor_right,
                         formfactor_two_branch)
from .params import (ExponentPair, KleinSector, LuttingerParameters, OperatorKind,
                     OperatorSpec, exponents_for_operator, params_from_coupling, xi_from_xxz)
from .series import (PrefactorSet, SeriesResult, asymptotic_correlator,
                     generating_correlator_closed, generating_correlator_series,
                     density_correlator_reconstruct, scaling_density, scaling_spin,
                     spin_correlator_reconstruct, sumrule_lhs, sumrule_rhs, wynn_limit)

__version__ = "0.1.0"
