"""Normalized Ricci flow vector fields and trajectory integration.

The general diagonal form of the volume-normalized flow is

    dx_k/dt = -2 x_k r_k + 2 x_k S / n,

with principal Ricci curvatures ``r_k``, scalar curvature ``S`` and total
dimension ``n``; it needs module dimensions and conserves the weighted
volume ``x1^d1 x2^d2 x3^d3``.  With equal parameters it reduces to the
closed form

    dx_k/dt = (1/3) [ x_k/x_i + x_k/x_j
              + 2a (x_i/x_j + x_j/x_i - 2 x_k^2/(x_i x_j)) - 2 ],

a degree-zero homogeneous field whose first integral is the plain volume
``x1 x2 x3``; at equal dimensions the two fields coincide exactly.

Integration uses an embedded Dormand-Prince 5(4) pair by default (fixed
fourth-order Runge-Kutta is available for reproducible step grids).  The
volume drift along a run is the accuracy witness and is always reported;
projection back onto the unit-volume surface is opt-in per step so that
the drift is never silently masked.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    BlowUpError,
    DomainError,
    Metric,
    SpaceParams,
    StepFailureError,
    Tolerances,
)
from .curvature import principal_ricci, ricci_form, sectional_form

__all__ = [
    "IntegratorOptions",
    "CrossingEvent",
    "Trajectory",
    "flow_field",
    "flow_field_general",
    "integrate",
    "detect_crossings",
]

# Admissible coordinate window; leaving it raises BlowUpError with the
# partial trajectory attached (trajectories heading to the coordinate
# axes or to infinity terminate cleanly instead of overflowing).
BLOWUP_LO = 1e-12
BLOWUP_HI = 1e12

# Hard floor for the adaptive step size.
MIN_STEP = 1e-14


def flow_field(m, params: SpaceParams) -> np.ndarray:
    """Right-hand side of the reduced equal-parameter system.

    This is the equal-parameter specialization of the volume-normalized
    flow at its native speed: for equal module dimensions it coincides
    with :func:`flow_field_general` identically, and along the Kahler
    separatrices at a = 1/6 it reproduces their closed-form field values.
    """
    x = np.asarray(m, dtype=float)
    a = params.a
    third = 1.0 / 3.0
    x1, x2, x3 = x[..., 0], x[..., 1], x[..., 2]
    f1 = x1 / x2 + x1 / x3 + 2.0 * a * (x2 / x3 + x3 / x2 - 2.0 * x1 * x1 / (x2 * x3)) - 2.0
    f2 = x2 / x1 + x2 / x3 + 2.0 * a * (x1 / x3 + x3 / x1 - 2.0 * x2 * x2 / (x1 * x3)) - 2.0
    f3 = x3 / x1 + x3 / x2 + 2.0 * a * (x1 / x2 + x2 / x1 - 2.0 * x3 * x3 / (x1 * x2)) - 2.0
    return third * np.stack([f1, f2, f3], axis=-1)


def flow_field_general(m, params: SpaceParams) -> np.ndarray:
    """Diagonal form of the volume-normalized flow, ``-2 x_k r_k + 2 x_k S/n``.

    Requires module dimensions.  With equal parameters and equal dimensions
    the field is parallel to :func:`flow_field` (the reduced system is a
    constant time reparametrization of this one).
    """
    dims = params.require_dims()
    x = np.asarray(m, dtype=float)
    n = float(sum(dims))
    ricci = np.stack([np.asarray(principal_ricci(k, x, params), float) for k in (1, 2, 3)], axis=-1)
    weights = np.array(dims, dtype=float)
    scalar = np.sum(weights * ricci, axis=-1, keepdims=True)
    return -2.0 * x * ricci + 2.0 * x * scalar / n


@dataclass(frozen=True)
class IntegratorOptions:
    """How to drive one integration run."""

    t_end: float
    method: str = "rk45"
    dt: float | None = None
    rel_tol: float = 1e-10
    abs_tol: float = 1e-10
    renormalize_each_step: bool = False
    store_every: int = 1

    def __post_init__(self) -> None:
        if self.method not in ("rk45", "rk4"):
            raise DomainError(f"method must be 'rk45' or 'rk4', got {self.method!r}")
        if not self.t_end > 0.0:
            raise DomainError("t_end must be positive")
        if self.method == "rk4" and (self.dt is None or self.dt <= 0.0):
            raise DomainError("fixed-step rk4 needs a positive dt")
        if self.rel_tol <= 0.0 or self.abs_tol <= 0.0:
            raise DomainError("tolerances must be positive")
        if int(self.store_every) != self.store_every or self.store_every < 1:
            raise DomainError("store_every must be a positive integer")


@dataclass(frozen=True)
class CrossingEvent:
    """A refined boundary crossing along a trajectory."""

    t: float
    kind: str  # "gamma_zero" or "lambda_zero"
    k: int
    m: Metric


@dataclass
class Trajectory:
    """Stored samples of one integration run.

    ``max_volume_drift`` is the largest relative deviation of the volume
    from its reference value seen at any accepted step, measured before any
    per-step renormalization.
    """

    times: np.ndarray
    states: np.ndarray
    max_volume_drift: float
    events: list[CrossingEvent] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.times = np.asarray(self.times, dtype=float)
        self.states = np.asarray(self.states, dtype=float)
        if np.any(np.diff(self.times) <= 0.0):
            raise DomainError("sample times must be strictly increasing")

    def __len__(self) -> int:
        return len(self.times)

    def sample(self, i: int) -> tuple[float, Metric]:
        return float(self.times[i]), Metric(*self.states[i])

    @property
    def final_metric(self) -> Metric:
        return Metric(*self.states[-1])

    def volume_drift_per_sample(self, reference: float | None = None) -> np.ndarray:
        v = self.states[:, 0] * self.states[:, 1] * self.states[:, 2]
        ref = v[0] if reference is None else reference
        return np.abs(v - ref) / ref


# Dormand-Prince 5(4) tableau.
_DP_C = (0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0)
_DP_A = (
    (),
    (1.0 / 5.0,),
    (3.0 / 40.0, 9.0 / 40.0),
    (44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0),
    (19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0),
    (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0),
    (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0),
)
_DP_B5 = (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0)
_DP_B4 = (
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
)
_DP_ERR = tuple(b5 - b4 for b5, b4 in zip(_DP_B5, _DP_B4))


class _Recorder:
    """Accumulates accepted steps, drift and the stored sample grid."""

    def __init__(self, x0: np.ndarray, store_every: int, volume_ref: float) -> None:
        self.times = [0.0]
        self.states = [x0.copy()]
        self.store_every = store_every
        self.volume_ref = volume_ref
        self.max_drift = 0.0
        self.accepted = 0

    def drift_of(self, x: np.ndarray) -> float:
        v = float(x[0] * x[1] * x[2])
        return abs(v - self.volume_ref) / self.volume_ref

    def record(self, t: float, x: np.ndarray, final: bool = False) -> None:
        self.accepted += 1
        self.max_drift = max(self.max_drift, self.drift_of(x))
        if final or self.accepted % self.store_every == 0:
            if t > self.times[-1]:
                self.times.append(t)
                self.states.append(x.copy())

    def trajectory(self) -> Trajectory:
        return Trajectory(np.array(self.times), np.array(self.states), self.max_drift)


def _check_window(x: np.ndarray, t: float, rec: _Recorder) -> None:
    if np.any(x < BLOWUP_LO) or np.any(x > BLOWUP_HI):
        raise BlowUpError(
            f"coordinate left [{BLOWUP_LO:g}, {BLOWUP_HI:g}] at t = {t:.6g}",
            trajectory=rec.trajectory(),
        )


def _renormalize(x: np.ndarray) -> np.ndarray:
    return x / np.cbrt(x[0] * x[1] * x[2])


def _initial_step(x: np.ndarray, f: np.ndarray, rel_tol: float, t_end: float) -> float:
    scale = np.max(np.abs(f) / np.maximum(np.abs(x), 1e-3))
    if scale == 0.0:
        return t_end
    return min(t_end, 0.01 / scale, 1.0)


def integrate(m0: Metric, params: SpaceParams, options: IntegratorOptions) -> Trajectory:
    """Integrate the reduced flow from ``m0`` up to ``options.t_end``.

    Raises :class:`BlowUpError` when a coordinate leaves the admissible
    window and :class:`StepFailureError` on adaptive step underflow; both
    carry the partial trajectory collected so far.
    """
    x = np.asarray(m0, dtype=float).copy()
    volume_ref = float(x[0] * x[1] * x[2])
    if options.renormalize_each_step:
        x = _renormalize(x)
        volume_ref = 1.0
    rec = _Recorder(x, options.store_every, volume_ref)
    rhs = lambda y: flow_field(y, params)  # noqa: E731

    if options.method == "rk4":
        _run_rk4(x, rhs, options, rec)
    else:
        _run_dp45(x, rhs, options, rec)
    return rec.trajectory()


def _run_rk4(x: np.ndarray, rhs, options: IntegratorOptions, rec: _Recorder) -> None:
    t = 0.0
    t_end = options.t_end
    dt = float(options.dt)
    while t < t_end - 1e-15 * t_end:
        h = min(dt, t_end - t)
        k1 = rhs(x)
        k2 = rhs(x + 0.5 * h * k1)
        k3 = rhs(x + 0.5 * h * k2)
        k4 = rhs(x + h * k3)
        x_new = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t_new = t + h
        if not np.all(np.isfinite(x_new)) or np.any(x_new <= 0.0):
            raise BlowUpError(
                f"state left the positive octant at t = {t_new:.6g} (dt too large?)",
                trajectory=rec.trajectory(),
            )
        _check_window(x_new, t_new, rec)
        rec.record(t_new, x_new, final=t_new >= t_end - 1e-15 * t_end)
        if options.renormalize_each_step:
            x_new = _renormalize(x_new)
            if rec.times[-1] == t_new:
                rec.states[-1] = x_new.copy()
        x, t = x_new, t_new


def _run_dp45(x: np.ndarray, rhs, options: IntegratorOptions, rec: _Recorder) -> None:
    t = 0.0
    t_end = options.t_end
    rel, abs_ = options.rel_tol, options.abs_tol
    f0 = rhs(x)
    h = _initial_step(x, f0, rel, t_end)
    stages = np.empty((7, 3))
    while t < t_end - 1e-15 * t_end:
        h = min(h, t_end - t)
        if h < MIN_STEP:
            raise StepFailureError(
                f"step size underflow (h = {h:.3g}) at t = {t:.6g}",
                trajectory=rec.trajectory(),
            )
        stages[0] = rhs(x)
        bad = False
        for s in range(1, 7):
            y = x + h * (np.asarray(_DP_A[s]) @ stages[:s])
            if np.any(y <= 0.0) or not np.all(np.isfinite(y)):
                bad = True
                break
            stages[s] = rhs(y)
        if bad:
            h *= 0.5
            continue
        x_new = x + h * (np.asarray(_DP_B5) @ stages)
        if np.any(x_new <= 0.0) or not np.all(np.isfinite(x_new)):
            h *= 0.5
            continue
        err_vec = h * (np.asarray(_DP_ERR) @ stages)
        tol_scale = abs_ + rel * np.maximum(np.abs(x), np.abs(x_new))
        err = float(np.sqrt(np.mean((err_vec / tol_scale) ** 2)))
        if err > 1.0:
            h *= max(0.2, 0.9 * err ** (-0.2))
            continue
        t_new = t + h
        _check_window(x_new, t_new, rec)
        rec.record(t_new, x_new, final=t_new >= t_end - 1e-15 * t_end)
        if options.renormalize_each_step:
            x_new = _renormalize(x_new)
            if rec.times[-1] == t_new:
                rec.states[-1] = x_new.copy()
        x, t = x_new, t_new
        h *= 5.0 if err == 0.0 else min(5.0, max(0.2, 0.9 * err ** (-0.2)))


_EVENT_FUNCS = tuple(
    [("gamma_zero", k, lambda y, p, kk=k: float(sectional_form(kk, y))) for k in (1, 2, 3)]
    + [("lambda_zero", k, lambda y, p, kk=k: float(ricci_form(kk, y, p))) for k in (1, 2, 3)]
)


def detect_crossings(
    trajectory: Trajectory,
    params: SpaceParams,
    tolerances: Tolerances | None = None,
) -> list[CrossingEvent]:
    """Locate boundary crossings between consecutive stored samples.

    For every sign change of any sectional or Ricci form along the sample
    grid, the crossing is refined by bisection on the straight segment
    between the bracketing samples, so the event point satisfies
    ``|form| <= root_tol * scale``.  Accuracy of the event time is governed
    by the sample density.  Events are returned sorted by time.
    """
    if len(trajectory) < 2:
        raise DomainError("need at least two samples to detect crossings")
    tol = tolerances or Tolerances()
    states = trajectory.states
    times = trajectory.times
    events: list[CrossingEvent] = []
    values = {
        (kind, k): np.array([func(state, params) for state in states])
        for kind, k, func in _EVENT_FUNCS
    }
    for kind, k, func in _EVENT_FUNCS:
        vals = values[(kind, k)]
        for idx in np.nonzero(vals[:-1] * vals[1:] < 0.0)[0]:
            xa, xb = states[idx], states[idx + 1]
            fa = vals[idx]
            lo, hi = 0.0, 1.0
            point = xa
            for _ in range(100):
                mid = 0.5 * (lo + hi)
                point = xa + mid * (xb - xa)
                fm = func(point, params)
                if fm == 0.0:
                    break
                if (fm > 0.0) == (fa > 0.0):
                    lo = mid
                else:
                    hi = mid
            s = 0.5 * (lo + hi)
            point = xa + s * (xb - xa)
            t_event = float(times[idx] + s * (times[idx + 1] - times[idx]))
            events.append(CrossingEvent(t_event, kind, k, Metric(*point)))
    events.sort(key=lambda e: e.t)
    return events
