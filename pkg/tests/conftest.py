import math

import pytest

from lutform.params import LuttingerParameters


@pytest.fixture
def xx_params():
    """XX chain (xi = 1) on a ring of 100 sites."""
    return LuttingerParameters(xi=1.0, u=1.0, length=100.0)


def gamma_ratio(num, *den):
    """Gamma(num) / prod Gamma(den) via log-Gamma, with signs."""
    sign = 1.0
    log = 0.0
    for x, s in [(num, 1)] + [(d, -1) for d in den]:
        lg = math.lgamma(x)
        if x < 0 and math.floor(x) % 2 == 1:
            sign = -sign
        log += s * lg
    return sign * math.exp(log)
