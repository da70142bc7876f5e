"""Membership predicates for the curvature positivity sets and their audits.

``S`` denotes the open set where all three sectional forms are positive
(positive sectional curvature on the Wallach spaces) and ``R`` the set
where all three Ricci forms are positive (positive Ricci curvature for
any a in (0, 1/2)).  Their intersections with the unit-volume surface are
the planar-looking regions the boundary curves of :mod:`wallachflow.curves`
enclose.

The inclusion ``S`` inside ``R`` is audited two ways: along the generator
lines of the sectional boundary cones, where the distinguished Ricci form
reduces to an explicit positive quadratic in the generator slope, and by
seeded brute-force sampling.  Reports record the seed so runs are
repeatable bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DomainError, Metric, SpaceParams, Tolerances
from .curvature import ricci_form, sectional_form

__all__ = [
    "positive_sectional",
    "positive_ricci",
    "sigma_positive_sectional",
    "sigma_positive_ricci",
    "ConeGenerator",
    "cone_generator",
    "generator_inclusion_margin",
    "InclusionReport",
    "inclusion_report",
    "ConeIntersectionReport",
    "cone_intersection_report",
]


def _forms_min(m, evaluate) -> np.ndarray:
    values = np.stack([np.asarray(evaluate(k, m), dtype=float) for k in (1, 2, 3)], axis=-1)
    return values.min(axis=-1)


def positive_sectional(m):
    """All three sectional forms strictly positive (scale invariant)."""
    result = _forms_min(m, sectional_form) > 0.0
    return bool(result) if np.isscalar(result) or result.shape == () else result


def positive_ricci(m, params: SpaceParams):
    """All three Ricci forms strictly positive (scale invariant)."""
    result = _forms_min(m, lambda k, x: ricci_form(k, x, params)) > 0.0
    return bool(result) if np.isscalar(result) or result.shape == () else result


def _on_sigma(m, tol: float):
    x = np.asarray(m, dtype=float)
    v = x[..., 0] * x[..., 1] * x[..., 2]
    return np.abs(v - 1.0) <= tol


def sigma_positive_sectional(m, tolerances: Tolerances | None = None):
    """Membership in the unit-volume slice of the sectional set."""
    tol = (tolerances or Tolerances()).sigma_tol
    result = np.logical_and(_on_sigma(m, tol), _forms_min(m, sectional_form) > 0.0)
    return bool(result) if result.shape == () else result


def sigma_positive_ricci(m, params: SpaceParams, tolerances: Tolerances | None = None):
    """Membership in the unit-volume slice of the Ricci set."""
    tol = (tolerances or Tolerances()).sigma_tol
    result = np.logical_and(
        _on_sigma(m, tol), _forms_min(m, lambda k, x: ricci_form(k, x, params)) > 0.0
    )
    return bool(result) if result.shape == () else result


@dataclass(frozen=True)
class ConeGenerator:
    """A generator ray of a sectional boundary cone.

    The ray ``t * direction`` for t > 0 lies on the zero set of the
    distinguished sectional form: the slopes satisfy
    ``mu = 1 - nu + 2 sqrt(nu (nu - 1))`` for nu > 1.  The distinguished
    index carries ``nu``; of the complementary pair, the smaller index
    carries ``mu`` (the forms do not distinguish the two).
    """

    k: int
    nu: float
    mu: float
    direction: tuple[float, float, float]

    def point(self, t: float) -> np.ndarray:
        return t * np.asarray(self.direction)


def cone_generator(k: int, nu: float) -> ConeGenerator:
    if not nu > 1.0:
        raise DomainError(f"generator slope nu must exceed 1, got {nu!r}")
    mu = 1.0 - nu + 2.0 * np.sqrt(nu * (nu - 1.0))
    from .core import other_indices

    lo, hi = other_indices(k)
    direction = [0.0, 0.0, 0.0]
    direction[k - 1] = nu
    direction[lo - 1] = mu
    direction[hi - 1] = 1.0
    return ConeGenerator(k, float(nu), float(mu), tuple(direction))


def generator_inclusion_margin(nu, a: float) -> np.ndarray:
    """The quadratic ``p(nu) = 8 a nu^2 - (2a + 3)(2a - 1) nu + (2a - 1)^2``.

    Positivity of ``p`` for nu > 1 is what makes the distinguished Ricci
    form positive along every generator of the sectional boundary cone;
    both roots of ``p`` are negative for every a in (0, 1/2).
    """
    nu = np.asarray(nu, dtype=float)
    return 8.0 * a * nu**2 - (2.0 * a + 3.0) * (2.0 * a - 1.0) * nu + (2.0 * a - 1.0) ** 2


@dataclass(frozen=True)
class InclusionReport:
    """Audit of the inclusion of the sectional set in the Ricci set."""

    a: float
    seed: int
    n_random: int
    n_inside_sectional: int
    violations: tuple[tuple[float, float, float], ...]
    min_ricci_on_cones: float
    min_margin_polynomial: float
    n_rays: int
    passed: bool


def inclusion_report(
    params: SpaceParams,
    n_samples: int = 100_000,
    seed: int = 0,
    n_rays: int = 200,
    box: tuple[float, float] = (0.05, 20.0),
) -> InclusionReport:
    """Three-part audit that the sectional set sits inside the Ricci set.

    (a) the distinguished Ricci form is positive at sampled points of every
    boundary-cone generator ray; (b) the margin polynomial is positive on a
    log grid of slopes; (c) seeded uniform samples inside the sectional set
    all lie in the Ricci set.  Violations are collected, not raised; any
    would falsify the inclusion.
    """
    a = params.a
    nus = np.geomspace(1.0 + 1e-9, 1e3, n_rays)
    min_lambda = np.inf
    for k in (1, 2, 3):
        mus = 1.0 - nus + 2.0 * np.sqrt(nus * (nus - 1.0))
        from .core import other_indices

        lo, hi = other_indices(k)
        base = np.empty((n_rays, 3))
        base[:, k - 1] = nus
        base[:, lo - 1] = mus
        base[:, hi - 1] = 1.0
        for t in (0.1, 1.0, 10.0):
            values = np.asarray(ricci_form(k, t * base, params))
            min_lambda = min(min_lambda, float(values.min()))

    margin = generator_inclusion_margin(np.geomspace(1.0 + 1e-9, 1e3, 10_000), a)
    min_margin = float(margin.min())

    rng = np.random.default_rng(seed)
    points = rng.uniform(box[0], box[1], size=(n_samples, 3))
    inside_sectional = _forms_min(points, sectional_form) > 0.0
    candidates = points[inside_sectional]
    inside_ricci = _forms_min(candidates, lambda k, x: ricci_form(k, x, params)) > 0.0
    violations = tuple(map(tuple, candidates[~inside_ricci][:16]))

    passed = min_lambda > 0.0 and min_margin > 0.0 and len(violations) == 0
    return InclusionReport(
        a=a,
        seed=seed,
        n_random=n_samples,
        n_inside_sectional=int(inside_sectional.sum()),
        violations=violations,
        min_ricci_on_cones=min_lambda,
        min_margin_polynomial=min_margin,
        n_rays=n_rays,
        passed=passed,
    )


@dataclass(frozen=True)
class ConeIntersectionReport:
    """How the boundary cones of a pair of indices meet (or avoid) each other."""

    i: int
    j: int
    ricci_line_direction: tuple[float, float, float]
    ricci_line_max_residual: float
    sigma_crossing: Metric
    sectional_min_separation: float


def cone_intersection_report(
    i: int,
    j: int,
    params: SpaceParams,
    n_line: int = 20,
    grid: int = 300,
    box: tuple[float, float] = (0.05, 20.0),
) -> ConeIntersectionReport:
    """Check the interior common line of two Ricci cones and search for
    (absent) interior intersections of two sectional cones.

    The Ricci cones with distinguished indices ``i`` and ``j`` meet along
    the interior ray with ``a`` at those indices and 1 at the remaining
    one; it pierces the unit-volume surface exactly at the common boundary
    point of the curves ``r_i`` and ``r_j``.  The sectional cones share no
    interior point: the report carries the smallest value of the ``j`` form
    found on a grid over the ``i`` cone (after local refinement), which
    stays bounded away from zero.
    """
    if i == j or i not in (1, 2, 3) or j not in (1, 2, 3):
        raise DomainError(f"need two distinct indices in 1..3, got {(i, j)!r}")
    a = params.a
    k = 6 - i - j
    direction = [0.0, 0.0, 0.0]
    direction[i - 1] = a
    direction[j - 1] = a
    direction[k - 1] = 1.0
    vs = np.geomspace(0.25, 4.0, n_line)
    line_pts = vs[:, None] * np.asarray(direction)[None, :]
    residual = max(
        float(np.abs(np.asarray(ricci_form(i, line_pts, params))).max()),
        float(np.abs(np.asarray(ricci_form(j, line_pts, params))).max()),
    )
    v0 = a ** (-2.0 / 3.0)
    crossing = Metric(*(v0 * np.asarray(direction)))

    def min_other_form(lo: float, hi_: float, n: int, lo2=None, hi2=None) -> tuple[float, float, float]:
        from .core import other_indices

        oi, oj = other_indices(i)
        u = np.geomspace(lo, hi_, n)
        w = np.geomspace(lo2 if lo2 else lo, hi2 if hi2 else hi_, n)
        uu, ww = np.meshgrid(u, w)
        # Solve the i form = 0 for the distinguished coordinate (positive sheet).
        xi = (uu + ww + 2.0 * np.sqrt(uu**2 - uu * ww + ww**2)) / 3.0
        pts = np.empty(uu.shape + (3,))
        pts[..., i - 1] = xi
        pts[..., oi - 1] = uu
        pts[..., oj - 1] = ww
        other = np.abs(np.asarray(sectional_form(j, pts)))
        flat = int(np.argmin(other))
        return float(other.flat[flat]), float(uu.flat[flat]), float(ww.flat[flat])

    best, bu, bw = min_other_form(box[0], box[1], grid)
    # One local refinement around the coarse minimizer.
    spread = (box[1] / box[0]) ** (1.0 / grid)
    refined, _, _ = min_other_form(
        bu / spread**2, bu * spread**2, 60, bw / spread**2, bw * spread**2
    )
    separation = min(best, refined)

    return ConeIntersectionReport(
        i=i,
        j=j,
        ricci_line_direction=tuple(direction),
        ricci_line_max_residual=residual,
        sigma_crossing=crossing,
        sectional_min_separation=separation,
    )
