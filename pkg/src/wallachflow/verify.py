"""Named verification suites aggregating the library's numerical claims.

Each suite runs a list of checks with explicit thresholds and returns a
:class:`VerifyReport` carrying the measured residuals.  Reports contain no
timestamps and all sampling is driven by an explicit seed, so identical
inputs produce byte-identical serialized reports.

Suite names follow the command-line contract: ``theorem1`` covers the
sectional boundary curves, ``theorem2`` the Ricci boundary curves and the
fixed points, ``inclusion`` the containment of the sectional set in the
Ricci set, ``kahler`` the separatrix identities at a = 1/6 and
``asymptotics`` the small-parameter expansions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import curves, equilibria, regions
from .core import BlowUpError, DomainError, Metric, SpaceParams, normalize_to_sigma
from .curvature import ricci_form, sectional_form, sectional_form_gradient, volume_gradient
from .flow import IntegratorOptions, detect_crossings, flow_field, integrate

__all__ = ["CheckResult", "VerifyReport", "run_suite", "SUITE_NAMES"]

SUITE_NAMES = ("all", "theorem1", "theorem2", "inclusion", "kahler", "asymptotics")

_DEFAULT_SWEEP = (0.05, 1.0 / 6.0, 0.3, 0.45)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    threshold: float
    note: str = ""


@dataclass
class VerifyReport:
    suite: str
    a_values: tuple[float, ...]
    seed: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, measured: float, threshold: float, *, larger_ok: bool = False, note: str = "") -> None:
        measured = float(measured)
        ok = measured > threshold if larger_ok else measured <= threshold
        self.checks.append(CheckResult(name, bool(ok), measured, float(threshold), note))

    def extend(self, other: "VerifyReport") -> None:
        self.checks.extend(other.checks)


def _log_ts(lo: float, hi: float, n: int) -> np.ndarray:
    return np.geomspace(lo, hi, n)


def _volume_residual(points: np.ndarray) -> float:
    v = points[:, 0] * points[:, 1] * points[:, 2]
    return float(np.abs(v - 1.0).max())


def suite_theorem1(seed: int = 0) -> VerifyReport:
    """Sectional boundary curves: residuals, contact point, disjointness."""
    report = VerifyReport("theorem1", (), seed)
    ts = _log_ts(1e-3, 1e3, 1000)
    worst_gamma = 0.0
    worst_volume = 0.0
    for k in (1, 2, 3):
        pts = curves.sample_curve(curves.CurveId(curves.Family.S, k), ts)
        worst_gamma = max(worst_gamma, float(np.abs(sectional_form(k, pts)).max()))
        worst_volume = max(worst_volume, _volume_residual(pts))
    report.add("s_curves_defining_residual", worst_gamma, 1e-10)
    report.add("s_curves_volume_residual", worst_volume, 1e-13)

    p0 = curves.SECTIONAL_CONTACT_SCALE
    report.add("scale_profile_contact_value", abs(float(curves.sectional_scale(1.0)) - p0), 1e-13)

    root = _bisect(lambda p: (4.0 * p**3 - 3.0) / p**4, 0.1, 10.0)
    report.add("contact_root_bisection", abs(root - p0), 1e-12)
    grid = np.linspace(0.1, 10.0, 1_000_000)
    signs = np.sign(4.0 * grid**3 - 3.0)
    report.add("contact_root_unique", float(np.sum(signs[:-1] != signs[1:])), 1.0)

    sample_ts = _log_ts(1e-2, 1e2, 200)
    mins = []
    for ki in (1, 2, 3):
        for kj in (1, 2, 3):
            if ki >= kj:
                continue
            pi = curves.sample_curve(curves.CurveId(curves.Family.S, ki), sample_ts)
            pj = curves.sample_curve(curves.CurveId(curves.Family.S, kj), sample_ts)
            dists = np.linalg.norm(pi[:, None, :] - pj[None, :, :], axis=-1)
            mins.append(float(dists.min()))
    report.add("s_curves_pairwise_separation", min(mins), 0.0, larger_ok=True)

    ps = _log_ts(0.2, 50.0, 200)
    scale = np.maximum(np.maximum(ps, 1.0 / ps) ** 4, 1.0)
    worst = 0.0
    for k in (1, 2, 3):
        pts = curves.sample_curve(curves.CurveId(curves.Family.I, k), ps)
        for other in (1, 2, 3):
            if other == k:
                continue
            values = np.asarray(sectional_form(other, pts))
            worst = max(worst, float((np.abs(values - ps ** (-4.0)) / scale).max()))
    report.add("invariant_curve_gamma_identity_scaled", worst, 1e-13)

    rng = np.random.default_rng(seed)
    pts = rng.uniform(0.1, 10.0, size=(500, 3))
    distinct = np.min(
        [np.abs(pts[:, 0] - pts[:, 1]), np.abs(pts[:, 1] - pts[:, 2]), np.abs(pts[:, 0] - pts[:, 2])],
        axis=0,
    )
    pts = pts[distinct > 1e-3]
    min_cross = np.inf
    for k in (1, 2, 3):
        cross = np.cross(volume_gradient(pts), sectional_form_gradient(k, pts))
        min_cross = min(min_cross, float(np.linalg.norm(cross, axis=-1).min()))
    report.add("transversality_min_cross_norm", min_cross, 0.0, larger_ok=True)
    return report


def suite_theorem2(a_values: tuple[float, ...] = _DEFAULT_SWEEP, seed: int = 0) -> VerifyReport:
    """Ricci boundary curves, their intersections and the fixed points."""
    report = VerifyReport("theorem2", tuple(a_values), seed)
    worst_lambda = 0.0
    worst_volume = 0.0
    worst_point = 0.0
    worst_gap = 0.0
    for a in a_values:
        params = SpaceParams(a)
        ts = _log_ts(a * 1e-3, a, 1000)
        for k in (1, 2, 3):
            for branch in (curves.Branch.TOWARD_I, curves.Branch.TOWARD_J):
                pts = curves.sample_curve(curves.CurveId(curves.Family.R, k, branch), ts, params)
                worst_lambda = max(worst_lambda, float(np.abs(ricci_form(k, pts, params)).max()))
                worst_volume = max(worst_volume, _volume_residual(pts))
        for i, j in ((1, 2), (1, 3), (2, 3)):
            point = curves.ricci_intersection_point(i, j, params)
            worst_point = max(
                worst_point,
                abs(float(ricci_form(i, point, params))),
                abs(float(ricci_form(j, point, params))),
            )
        m, big = curves.ricci_domain_gap(params)
        worst_gap = max(worst_gap, abs(m * big - 1.0))
        if not a < m:
            report.add("gap_contains_trimmed_range", m - a, 0.0, larger_ok=True, note=f"a={a}")
    report.add("r_curves_defining_residual", worst_lambda, 1e-10)
    report.add("r_curves_volume_residual", worst_volume, 1e-13)
    report.add("pairwise_point_ricci_residual", worst_point, 1e-12)
    report.add("gap_product_identity", worst_gap, 1e-14)

    # Coordinate coincidences on the untrimmed branch happen at t = a and
    # t = 1/a, the roots of a t^2 - (a^2 + 1) t + a.
    worst_root = 0.0
    for a in a_values:
        poly = lambda t, aa=a: aa * t * t - (aa * aa + 1.0) * t + aa  # noqa: E731
        lo = _bisect(poly, a * 0.5, np.sqrt(a * (1.0 / a)) * 0.99)
        hi = _bisect(poly, np.sqrt(a * (1.0 / a)) * 1.01, 2.0 / a)
        worst_root = max(worst_root, abs(lo - a), abs(hi - 1.0 / a))
    report.add("untrimmed_coincidence_roots", worst_root, 1e-10)

    ps = _log_ts(0.2, 50.0, 200)
    worst_identity = 0.0
    for a in a_values:
        params = SpaceParams(a)
        for k in (1, 2, 3):
            pts = curves.sample_curve(curves.CurveId(curves.Family.I, k), ps)
            for other in (1, 2, 3):
                expected = (
                    (1.0 - 2.0 * a) * ps**2 + a * ps ** (-4.0)
                    if other == k
                    else (ps**3 - a) * ps ** (-4.0)
                )
                values = np.asarray(ricci_form(other, pts, params))
                scale = np.maximum(1.0, np.abs(expected))
                worst_identity = max(worst_identity, float((np.abs(values - expected) / scale).max()))
    report.add("invariant_curve_lambda_identities", worst_identity, 1e-12)

    worst_norm = 0.0
    min_lambda = np.inf
    for a in a_values:
        params = SpaceParams(a)
        rep = equilibria.region_report(params)
        min_lambda = min(min_lambda, rep.min_ricci_value)
        for entry in rep.entries:
            worst_norm = max(worst_norm, float(np.linalg.norm(flow_field(entry.m, params))))
    report.add("fixed_point_field_norm", worst_norm, 1e-12)
    report.add("fixed_points_min_ricci_form", min_lambda, 0.0, larger_ok=True)

    worst_line = 0.0
    for a in a_values:
        params = SpaceParams(a)
        for i, j in ((1, 2), (1, 3), (2, 3)):
            rep = regions.cone_intersection_report(i, j, params, grid=40)
            worst_line = max(worst_line, rep.ricci_line_max_residual)
    report.add("ricci_cone_common_line_residual", worst_line, 1e-12)
    return report


def suite_inclusion(
    a_values: tuple[float, ...] = _DEFAULT_SWEEP,
    seed: int = 0,
    n_samples: int = 100_000,
) -> VerifyReport:
    """Containment of the sectional set in the Ricci set."""
    report = VerifyReport("inclusion", tuple(a_values), seed)
    for a in a_values:
        params = SpaceParams(a)
        audit = regions.inclusion_report(params, n_samples=n_samples, seed=seed)
        report.add(
            f"random_inclusion_violations_a_{a:.6g}",
            float(len(audit.violations)),
            0.0,
            note=f"{audit.n_inside_sectional} of {audit.n_random} samples inside",
        )
        report.add(f"cone_ray_min_ricci_a_{a:.6g}", audit.min_ricci_on_cones, 0.0, larger_ok=True)
        report.add(f"margin_polynomial_min_a_{a:.6g}", audit.min_margin_polynomial, 0.0, larger_ok=True)
        roots = np.roots([8.0 * a, -(2.0 * a + 3.0) * (2.0 * a - 1.0), (2.0 * a - 1.0) ** 2])
        report.add(f"margin_polynomial_roots_negative_a_{a:.6g}", float(roots.real.max()), 0.0)
    return report


# Evaluating the forms far out along the unbounded spikes of the region is
# meaningless in double precision (the true margin shrinks like p**-3); the
# trajectory checks are asserted inside this trusted coordinate window.
KAHLER_TRUST_WINDOW = (1e-2, 1e2)


def suite_kahler(a: float = curves.ONE_SIXTH, seed: int = 0, n_trajectories: int = 20) -> VerifyReport:
    """Separatrix identities and Ricci-positivity trapping at a = 1/6."""
    if a != curves.ONE_SIXTH:
        raise DomainError("the kahler suite is defined only for a = 1/6")
    params = SpaceParams(a)
    report = VerifyReport("kahler", (a,), seed)

    o3 = curves.sample_kahler_curve(3, 1.0).m.as_array()
    expected = np.array([2.0 ** (-1.0 / 3.0), 2.0 ** (-1.0 / 3.0), 2.0 ** (2.0 / 3.0)])
    report.add("saddle_point_on_curve", float(np.abs(o3 - expected).max()), 1e-14)

    ts = _log_ts(0.05, 20.0, 1000)
    worst_relation = 0.0
    for k in (1, 2, 3):
        pts = curves.sample_curve(curves.CurveId(curves.Family.L, k), ts)
        i, j = [idx for idx in (1, 2, 3) if idx != k]
        relation = pts[:, k - 1] - pts[:, i - 1] - pts[:, j - 1]
        worst_relation = max(worst_relation, float(np.abs(relation).max()))
        report.add(f"l{k}_volume_residual", _volume_residual(pts), 1e-13)
    report.add("kahler_relation_residual", worst_relation, 1e-12)

    ts_field = np.concatenate([_log_ts(0.05, 0.94, 50), _log_ts(1.07, 20.0, 50)])
    pts = curves.sample_curve(curves.CurveId(curves.Family.L, 3), ts_field)
    fields = flow_field(pts, params)
    f1_expected = -(2.0 / 9.0) * (2.0 * ts_field + 1.0) * (ts_field - 1.0) / (ts_field * (ts_field + 1.0))
    report.add("separatrix_field_component", float(np.abs(fields[:, 0] - f1_expected).max()), 1e-11)
    ratio2 = -ts_field * (ts_field + 2.0) / (2.0 * ts_field + 1.0)
    ratio3 = -(ts_field**2 - 1.0) / (2.0 * ts_field + 1.0)
    report.add(
        "separatrix_field_ratios",
        max(
            float(np.abs(fields[:, 1] / fields[:, 0] - ratio2).max()),
            float(np.abs(fields[:, 2] / fields[:, 0] - ratio3).max()),
        ),
        1e-10,
    )

    grid = _log_ts(0.05, 20.0, 50)
    worst_proj = 0.0
    for k, name in ((1, "k1p"), (2, "k2p"), (3, "k3p")):
        pts = curves.sample_curve(curves.CurveId(curves.Family.L, k), grid)
        res = curves.projection_residual(name, pts[:, 0], pts[:, 1])
        worst_proj = max(worst_proj, float(np.abs(res).max()))
    report.add("kahler_projection_residual", worst_proj, 1e-10)

    rng = np.random.default_rng(seed)
    lo, hi = KAHLER_TRUST_WINDOW
    worst_min_form = np.inf
    lambda_events = 0
    count = 0
    while count < n_trajectories:
        start = normalize_to_sigma(Metric(*np.exp(rng.uniform(-0.15, 0.15, 3))))
        x = start.as_array()
        inside = all(x[k - 1] < x.sum() - x[k - 1] - 0.05 for k in (1, 2, 3))
        if not inside or not regions.positive_ricci(start, params):
            continue
        count += 1
        try:
            traj = integrate(start, params, IntegratorOptions(t_end=50.0, rel_tol=1e-8, abs_tol=1e-8))
        except BlowUpError as err:
            traj = err.trajectory
        states = traj.states
        mask = (states.max(axis=1) <= hi) & (states.min(axis=1) >= lo)
        trusted = states[mask]
        values = np.stack([np.asarray(ricci_form(k, trusted, params)) for k in (1, 2, 3)], axis=-1)
        worst_min_form = min(worst_min_form, float(values.min()))
        clipped = traj
        if mask.sum() >= 2:
            from .flow import Trajectory

            clipped = Trajectory(traj.times[mask], trusted, traj.max_volume_drift)
            lambda_events += sum(1 for e in detect_crossings(clipped, params) if e.kind == "lambda_zero")
    report.add("trapped_trajectories_min_ricci_form", worst_min_form, 0.0, larger_ok=True)
    report.add("trapped_trajectories_lambda_events", float(lambda_events), 0.0)
    return report


def suite_asymptotics(a: float = curves.ONE_SIXTH) -> VerifyReport:
    """Small-parameter expansion orders of the boundary curves."""
    params = SpaceParams(a)
    report = VerifyReport("asymptotics", (a,), seed=0)
    ts = _log_ts(1e-4, 1e-2, 25)

    exact_s = curves.sample_curve(curves.CurveId(curves.Family.S, 3), ts)
    approx_s = np.array([curves.sectional_boundary_asymptote(t).coords for t in ts])
    err_s = np.abs(exact_s[:, 1] - approx_s[:, 1])
    slope_s = float(np.polyfit(np.log(ts), np.log(err_s), 1)[0])
    report.add("s3_carrier_error_slope", abs(slope_s - 8.0 / 3.0), 0.1, note=f"slope={slope_s:.4f}")
    report.add("s3_carrier_error_constant", float((err_s / ts ** (8.0 / 3.0)).max()), 10.0)

    exact_r = curves.sample_curve(
        curves.CurveId(curves.Family.R, 1, curves.Branch.TOWARD_J), ts, params
    )
    err_lead = np.abs(exact_r[:, 1] - ts ** (2.0 / 3.0))
    slope_lead = float(np.polyfit(np.log(ts), np.log(err_lead), 1)[0])
    report.add("r1_carrier_leading_error_slope", abs(slope_lead - 5.0 / 3.0), 0.1, note=f"slope={slope_lead:.4f}")

    approx_r = np.array([curves.ricci_boundary_asymptote(t, params).coords for t in ts])
    err_two = np.abs(exact_r[:, 1] - approx_r[:, 1])
    slope_two = float(np.polyfit(np.log(ts), np.log(err_two), 1)[0])
    report.add("r1_carrier_two_term_error_slope", abs(slope_two - 8.0 / 3.0), 0.1, note=f"slope={slope_two:.4f}")

    err_plain = np.abs(exact_r[:, 2] - approx_r[:, 2])
    slope_plain = float(np.polyfit(np.log(ts), np.log(err_plain), 1)[0])
    report.add("r1_plain_error_slope", abs(slope_plain - 5.0 / 3.0), 0.1, note=f"slope={slope_plain:.4f}")
    return report


def _bisect(func, lo: float, hi: float, iterations: int = 200) -> float:
    flo = func(lo)
    fhi = func(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise DomainError(f"no sign change on [{lo}, {hi}]")
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        fm = func(mid)
        if fm == 0.0:
            return mid
        if (fm > 0.0) == (flo > 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo <= 1e-15 * max(1.0, abs(lo)):
            break
    return 0.5 * (lo + hi)


def run_suite(name: str, a_values: tuple[float, ...] | None = None, seed: int = 0) -> VerifyReport:
    """Run one named suite (or all of them) and return the merged report."""
    if name not in SUITE_NAMES:
        raise DomainError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    if name == "theorem1":
        return suite_theorem1(seed=seed)
    if name == "theorem2":
        return suite_theorem2(tuple(a_values) if a_values else _DEFAULT_SWEEP, seed=seed)
    if name == "inclusion":
        return suite_inclusion(tuple(a_values) if a_values else _DEFAULT_SWEEP, seed=seed)
    if name == "kahler":
        if a_values and tuple(a_values) != (curves.ONE_SIXTH,):
            raise DomainError("the kahler suite requires a = 1/6")
        return suite_kahler(seed=seed)
    if name == "asymptotics":
        a = a_values[0] if a_values else curves.ONE_SIXTH
        return suite_asymptotics(a)
    merged = VerifyReport("all", tuple(a_values) if a_values else _DEFAULT_SWEEP, seed)
    merged.extend(suite_theorem1(seed=seed))
    merged.extend(suite_theorem2(tuple(a_values) if a_values else _DEFAULT_SWEEP, seed=seed))
    merged.extend(suite_inclusion(tuple(a_values) if a_values else _DEFAULT_SWEEP, seed=seed))
    merged.extend(suite_kahler(seed=seed))
    merged.extend(suite_asymptotics())
    return merged
