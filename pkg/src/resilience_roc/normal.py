"""Standard normal cdf and quantile.

Backed by the standard library: ``math.erfc`` for the cdf and
``statistics.NormalDist.inv_cdf`` (Wichura's AS241, ~1e-16 relative) for
the quantile, followed by one Newton step on the cdf.
"""
from __future__ import annotations

import math
from statistics import NormalDist

import numpy as np
from scipy import special

from .errors import DomainError

_STD = NormalDist()
_SQRT2 = math.sqrt(2.0)
_SQRT2PI = math.sqrt(2.0 * math.pi)


def normal_cdf(z: float) -> float:
    return 0.5 * math.erfc(-z / _SQRT2)


def normal_pdf(z: float) -> float:
    return math.exp(-0.5 * z * z) / _SQRT2PI


def normal_quantile(p: float) -> float:
    p = float(p)
    if not 0.0 < p < 1.0:
        raise DomainError(f"normal quantile needs p in (0, 1), got {p}")
    if p > 0.5:
        # 1 - p is exact here; the Newton step is only well conditioned in the lower tail
        return -normal_quantile(1.0 - p)
    z = _STD.inv_cdf(p)
    dens = normal_pdf(z)
    if dens > 0.0:
        z -= (normal_cdf(z) - p) / dens
    return z


def upper_quantile(alpha: float) -> float:
    """z such that P(Z > z) = alpha."""
    return -normal_quantile(alpha)


def two_sided_p(z: float) -> float:
    return math.erfc(abs(z) / _SQRT2)


# array versions for curve evaluation
def normal_cdf_array(z) -> np.ndarray:
    return special.ndtr(np.asarray(z, dtype=float))


def normal_quantile_array(p) -> np.ndarray:
    return special.ndtri(np.asarray(p, dtype=float))
