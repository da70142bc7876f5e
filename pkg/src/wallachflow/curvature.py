"""Curvature functionals of diagonal invariant metrics and their gradients.

Two families of quadratic forms govern positivity of the curvature:

* ``sectional_form(k, m)`` evaluates
  ``(x_i - x_j)^2 + 2 x_k (x_i + x_j) - 3 x_k^2`` with distinguished index
  ``k`` and complementary pair ``{i, j}``.  Simultaneous positivity of the
  three forms characterizes positive sectional curvature on the Wallach
  spaces (a = 1/6, 1/8, 1/9).

* ``ricci_form(k, m, params)`` evaluates
  ``x_i x_j + a (x_k^2 - x_i^2 - x_j^2)``.  Simultaneous positivity
  characterizes positive Ricci curvature for every a in (0, 1/2), since
  each principal Ricci curvature satisfies ``2 V r_k = ricci_form_k`` on
  the equal-parameter spaces (V the volume).

Both families are homogeneous of degree two, so sign classification is
scale invariant.  All evaluators broadcast over arrays whose last axis has
length 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import Metric, SpaceParams, Tolerances, other_indices

__all__ = [
    "CurvatureLabel",
    "CurvatureSigns",
    "sectional_form",
    "ricci_form",
    "principal_ricci",
    "scalar_curvature",
    "sectional_form_gradient",
    "ricci_form_gradient",
    "volume_gradient",
    "classify",
]


def _split(m, k: int):
    """Distinguished coordinate and the complementary pair (ascending order)."""
    x = np.asarray(m, dtype=float)
    i, j = other_indices(k)
    return x[..., k - 1], x[..., i - 1], x[..., j - 1]


def sectional_form(k: int, m):
    """Sectional-positivity form with distinguished index ``k``.

    Zero level sets are the cones bounding the set of positively curved
    metrics; the sign is what matters, the normalization follows the
    classical description of that set.
    """
    xk, xi, xj = _split(m, k)
    return (xi - xj) ** 2 + 2.0 * xk * (xi + xj) - 3.0 * xk**2


def ricci_form(k: int, m, params: SpaceParams):
    """Ricci-positivity form ``x_i x_j + a (x_k^2 - x_i^2 - x_j^2)``."""
    xk, xi, xj = _split(m, k)
    a = params.a
    # Grouping the squares keeps the form bit-exactly symmetric in (i, j).
    return xi * xj + a * (xk**2 - (xi**2 + xj**2))


def principal_ricci(k: int, m, params: SpaceParams):
    """Principal Ricci curvature of the module with index ``k``.

    Computed as ``1/(2 x_k) + (a_k / 2) (x_k/(x_i x_j) - x_j/(x_k x_i)
    - x_i/(x_k x_j))``.  With equal parameters this satisfies the exact
    identity ``2 * volume * principal_ricci(k) == ricci_form(k)``, which is
    what makes the quadratic form a faithful positivity test.
    """
    xk, xi, xj = _split(m, k)
    ak = params.a_triple[k - 1]
    return 1.0 / (2.0 * xk) + 0.5 * ak * (
        xk / (xi * xj) - xj / (xk * xi) - xi / (xk * xj)
    )


def scalar_curvature(m, params: SpaceParams):
    """Scalar curvature ``d1 r1 + d2 r2 + d3 r3``; requires dimensions."""
    dims = params.require_dims()
    return sum(dims[k - 1] * principal_ricci(k, m, params) for k in (1, 2, 3))


def sectional_form_gradient(k: int, m) -> np.ndarray:
    """Gradient of ``sectional_form(k, .)`` with respect to (x1, x2, x3)."""
    x = np.asarray(m, dtype=float)
    i, j = other_indices(k)
    xk, xi, xj = x[..., k - 1], x[..., i - 1], x[..., j - 1]
    grad = np.empty_like(x)
    grad[..., k - 1] = 2.0 * (-3.0 * xk + xi + xj)
    grad[..., i - 1] = 2.0 * (xk + xi - xj)
    grad[..., j - 1] = 2.0 * (xk + xj - xi)
    return grad


def ricci_form_gradient(k: int, m, params: SpaceParams) -> np.ndarray:
    """Gradient of ``ricci_form(k, ., params)`` with respect to (x1, x2, x3)."""
    x = np.asarray(m, dtype=float)
    i, j = other_indices(k)
    xk, xi, xj = x[..., k - 1], x[..., i - 1], x[..., j - 1]
    a = params.a
    grad = np.empty_like(x)
    grad[..., k - 1] = 2.0 * a * xk
    grad[..., i - 1] = xj - 2.0 * a * xi
    grad[..., j - 1] = xi - 2.0 * a * xj
    return grad


def volume_gradient(m) -> np.ndarray:
    """Gradient of the volume, ``(x2 x3, x1 x3, x1 x2)``.

    On the unit-volume surface this equals ``(1/x1, 1/x2, 1/x3)``.
    """
    x = np.asarray(m, dtype=float)
    grad = np.empty_like(x)
    grad[..., 0] = x[..., 1] * x[..., 2]
    grad[..., 1] = x[..., 0] * x[..., 2]
    grad[..., 2] = x[..., 0] * x[..., 1]
    return grad


class CurvatureLabel(str, Enum):
    POSITIVE_SECTIONAL = "PositiveSectional"
    POSITIVE_RICCI_ONLY = "PositiveRicciOnly"
    MIXED_RICCI = "MixedRicci"
    BOUNDARY = "Boundary"


# |form value| at or below this counts as lying on a boundary cone; exact
# zeros occur only analytically, so the cutoff is generous but tiny.
BOUNDARY_TOL = 1e-9


@dataclass(frozen=True)
class CurvatureSigns:
    """Sign classification of one metric: form values and derived labels."""

    sectional: tuple[float, float, float]
    ricci: tuple[float, float, float]
    sec_positive: bool
    ricci_positive: bool
    label: CurvatureLabel


def classify(
    m: Metric,
    params: SpaceParams,
    tol: Tolerances | None = None,
    boundary_tol: float = BOUNDARY_TOL,
) -> CurvatureSigns:
    """Evaluate both form families and label the metric.

    ``Boundary`` wins whenever any form vanishes within ``boundary_tol``;
    otherwise the label records whether all sectional forms, only all Ricci
    forms, or not even those are positive.
    """
    del tol  # classification thresholds are the explicit boundary_tol
    gammas = tuple(float(sectional_form(k, m)) for k in (1, 2, 3))
    lambdas = tuple(float(ricci_form(k, m, params)) for k in (1, 2, 3))
    sec_positive = min(gammas) > 0.0
    ricci_positive = min(lambdas) > 0.0
    if min(abs(g) for g in gammas) <= boundary_tol or min(abs(l) for l in lambdas) <= boundary_tol:
        label = CurvatureLabel.BOUNDARY
    elif sec_positive:
        label = CurvatureLabel.POSITIVE_SECTIONAL
    elif ricci_positive:
        label = CurvatureLabel.POSITIVE_RICCI_ONLY
    else:
        label = CurvatureLabel.MIXED_RICCI
    return CurvatureSigns(gammas, lambdas, sec_positive, ricci_positive, label)
