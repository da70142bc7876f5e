"""Fixed points of the reduced flow on the unit-volume surface.

For every a in (0, 1/2) except 1/4 the reduced system has four fixed
points on Sigma: the symmetric point ``o0 = (1, 1, 1)`` and the three
permutations ``o_k`` of ``(q, q, q * kappa)`` with
``kappa = (1 - 2a)/(2a)`` and ``q = kappa**(-1/3)``.  At a = 1/4 the four
merge into the single point (1, 1, 1).

Stability is decided by restricting the linearization to the tangent
plane of Sigma.  Because the volume is a first integral, its gradient is
a left null vector of the Jacobian at a fixed point, so the tangent plane
(the orthogonal complement of the volume gradient) is invariant and the
restriction is an honest 2x2 problem.  The radial direction always
carries the trivial zero eigenvalue of the homogeneous field.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import (
    Metric,
    NotAnEquilibriumError,
    SpaceParams,
    Tolerances,
)
from .curvature import ricci_form, sectional_form, volume_gradient
from .flow import flow_field
from .regions import sigma_positive_ricci, sigma_positive_sectional

__all__ = [
    "EquilibriumKind",
    "Equilibrium",
    "equilibrium_stretch",
    "fixed_points",
    "flow_jacobian",
    "classify_fixed_point",
    "region_report",
    "RegionReportEntry",
    "EquilibriaRegionReport",
]

# Field norm above this disqualifies a point from classification.
FIELD_NORM_TOL = 1e-10


class EquilibriumKind(str, Enum):
    STABLE_NODE = "StableNode"
    UNSTABLE_NODE = "UnstableNode"
    HYPERBOLIC_SADDLE = "HyperbolicSaddle"
    DEGENERATE_LINEAR_ZERO = "DegenerateLinearZero"
    FOCUS = "Focus"  # never expected for this system; flagged if it appears


@dataclass(frozen=True)
class Equilibrium:
    """A classified fixed point on the unit-volume surface."""

    m: Metric
    name: str | None
    restricted_eigenvalues: tuple[complex, complex]
    kind: EquilibriumKind
    eigvectors: tuple[tuple[float, float, float], tuple[float, float, float]]


def equilibrium_stretch(params: SpaceParams | float) -> float:
    """The stretch factor ``(1 - 2a) / (2a)`` of the non-symmetric fixed points."""
    a = params.a if isinstance(params, SpaceParams) else float(params)
    return (1.0 - 2.0 * a) / (2.0 * a)


def _fixed_point_coords(params: SpaceParams) -> list[tuple[str, Metric]]:
    kappa = equilibrium_stretch(params)
    points = [("o0", Metric(1.0, 1.0, 1.0))]
    if kappa == 1.0:
        return points
    q = float(np.cbrt(1.0 / kappa))
    stretched = q * kappa
    for k in (1, 2, 3):
        coords = [q, q, q]
        coords[k - 1] = stretched
        points.append((f"o{k}", Metric(*coords)))
    return points


def flow_jacobian(m, params: SpaceParams) -> np.ndarray:
    """Analytic Jacobian of the reduced field at a point.

    Homogeneity of degree zero gives the Euler relation ``J @ x == 0``.
    """
    x = np.asarray(m, dtype=float)
    a = params.a
    jac = np.empty((3, 3))
    for row, (i, j, k) in enumerate(((0, 1, 2), (1, 0, 2), (2, 0, 1))):
        xi, xj, xk = x[i], x[j], x[k]
        jac[row, i] = 1.0 / xj + 1.0 / xk - 8.0 * a * xi / (xj * xk)
        jac[row, j] = -xi / xj**2 + 2.0 * a * (1.0 / xk - xk / xj**2 + 2.0 * xi**2 / (xj**2 * xk))
        jac[row, k] = -xi / xk**2 + 2.0 * a * (1.0 / xj - xj / xk**2 + 2.0 * xi**2 / (xj * xk**2))
    return jac / 3.0


def _tangent_basis(m) -> np.ndarray:
    """Orthonormal basis (2 x 3) of the tangent plane of Sigma at a point."""
    normal = volume_gradient(m)
    normal = normal / np.linalg.norm(normal)
    seed = np.zeros(3)
    seed[int(np.argmin(np.abs(normal)))] = 1.0
    u = seed - np.dot(seed, normal) * normal
    u /= np.linalg.norm(u)
    v = np.cross(normal, u)
    return np.vstack([u, v])


def classify_fixed_point(
    m: Metric,
    params: SpaceParams,
    tolerances: Tolerances | None = None,
) -> Equilibrium:
    """Classify a fixed point by its linearization restricted to Sigma."""
    tol = tolerances or Tolerances()
    residual = float(np.linalg.norm(flow_field(m, params)))
    if residual > FIELD_NORM_TOL:
        raise NotAnEquilibriumError(
            f"field norm {residual:.3g} exceeds {FIELD_NORM_TOL:g} at {m.coords}"
        )
    basis = _tangent_basis(m)
    jac = flow_jacobian(m, params)
    restricted = basis @ jac @ basis.T
    eigvals, eigvecs_2d = np.linalg.eig(restricted)
    order = np.argsort(eigvals.real)
    eigvals = eigvals[order]
    eigvecs_3d = (basis.T @ eigvecs_2d[:, order]).T
    eigvecs_3d = np.real_if_close(eigvecs_3d, tol=1000)

    cleaned = []
    for value in eigvals:
        cleaned.append(complex(value.real, 0.0) if abs(value.imag) <= tol.eig_tol else complex(value))
    lo, hi = cleaned
    if min(abs(lo), abs(hi)) <= tol.eig_tol:
        kind = EquilibriumKind.DEGENERATE_LINEAR_ZERO
    elif lo.imag != 0.0 or hi.imag != 0.0:
        kind = EquilibriumKind.FOCUS
    elif hi.real < 0.0:
        kind = EquilibriumKind.STABLE_NODE
    elif lo.real > 0.0:
        kind = EquilibriumKind.UNSTABLE_NODE
    else:
        kind = EquilibriumKind.HYPERBOLIC_SADDLE

    name = None
    for candidate, point in _fixed_point_coords(params):
        if np.allclose(point.as_array(), m.as_array(), rtol=0.0, atol=1e-8):
            name = candidate
            break
    vectors = tuple(tuple(float(c) for c in np.real(vec)) for vec in eigvecs_3d)
    return Equilibrium(m, name, (lo, hi), kind, vectors)


def fixed_points(params: SpaceParams, tolerances: Tolerances | None = None) -> list[Equilibrium]:
    """All fixed points on Sigma, classified.

    Returns ``[o0, o1, o2, o3]`` in that order, or the single degenerate
    point ``(1, 1, 1)`` when the stretch factor equals one (a = 1/4).
    """
    return [classify_fixed_point(point, params, tolerances) for _, point in _fixed_point_coords(params)]


@dataclass(frozen=True)
class RegionReportEntry:
    name: str
    m: Metric
    ricci_values: tuple[float, float, float]
    sectional_values: tuple[float, float, float]
    in_sigma_ricci: bool
    in_sigma_sectional: bool
    own_sectional_value: float | None


@dataclass(frozen=True)
class EquilibriaRegionReport:
    """Where the fixed points sit relative to the positivity sets.

    Every fixed point has all Ricci forms positive for every admissible a.
    The stretched points ``o_k`` satisfy
    ``sectional_form(k, o_k) = q^2 kappa (4 - 3 kappa)``, which is positive
    exactly for a > 3/14 and vanishes at the critical value a = 3/14.
    """

    a: float
    stretch: float
    entries: tuple[RegionReportEntry, ...]
    min_ricci_value: float
    own_sectional_identity: float | None


def region_report(params: SpaceParams) -> EquilibriaRegionReport:
    entries = []
    kappa = equilibrium_stretch(params)
    for name, point in _fixed_point_coords(params):
        lambdas = tuple(float(ricci_form(k, point, params)) for k in (1, 2, 3))
        gammas = tuple(float(sectional_form(k, point)) for k in (1, 2, 3))
        own = None
        if name != "o0":
            own = gammas[int(name[1]) - 1]
        entries.append(
            RegionReportEntry(
                name,
                point,
                lambdas,
                gammas,
                bool(sigma_positive_ricci(point, params)),
                bool(sigma_positive_sectional(point)),
                own,
            )
        )
    identity = None
    if kappa != 1.0:
        q2 = float(np.cbrt(1.0 / kappa)) ** 2
        identity = q2 * kappa * (4.0 - 3.0 * kappa)
    return EquilibriaRegionReport(
        a=params.a,
        stretch=kappa,
        entries=tuple(entries),
        min_ricci_value=min(min(e.ricci_values) for e in entries),
        own_sectional_identity=identity,
    )
