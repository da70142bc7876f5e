"""Closed-form boundary and separatrix curves on the unit-volume surface.

Twelve named curves live on Sigma (``x1 x2 x3 = 1``):

* ``s_k`` - boundary of the positive-sectional-curvature set, one connected
  curve per index, where ``sectional_form(k, .) = 0``.
* ``r_k`` - boundary of the positive-Ricci set, two connected branches per
  index, where ``ricci_form(k, .) = 0``.
* ``l_k`` - the Kahler locus ``x_k = x_i + x_j`` on Sigma; a saddle
  separatrix of the reduced flow exactly when a = 1/6.
* ``I_k`` - the invariant curves ``x_i = x_j = p``, ``x_k = p**-2``.

Every sampler produces points whose volume is 1 by algebraic cancellation:
each curve is written as ``x_k = 1/(t * rho(t)**2)`` with the complementary
coordinates ``t * rho`` and ``rho`` for a curve-specific scale profile
``rho``.  The coordinate carrying the factor ``t`` is placed at the larger
complementary index; for the two-branch ``r_k`` curves the ``toward_j``
branch swaps the pair.  With that placement, branch ``toward_i`` of ``r_k``
hits the intersection point with ``r_i`` at the trimmed endpoint ``t = a``
(``i`` the larger complementary index, ``j`` the smaller).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import (
    DomainError,
    KahlerParameterError,
    Metric,
    SpaceParams,
    other_indices,
)

__all__ = [
    "Family",
    "Branch",
    "CurveId",
    "CurveSample",
    "SECTIONAL_CONTACT_SCALE",
    "ONE_SIXTH",
    "sectional_scale",
    "ricci_scale",
    "kahler_scale",
    "ricci_domain_gap",
    "sample_sectional_boundary",
    "sample_ricci_boundary",
    "sample_kahler_curve",
    "sample_invariant_curve",
    "sample_curve",
    "ricci_intersection_point",
    "sectional_invariant_intersection",
    "sectional_boundary_asymptote",
    "ricci_boundary_asymptote",
    "projection_residual",
    "PROJECTION_CURVES",
]

#: Parameter value where the invariant curve I_k touches s_k: cbrt(6)/2.
SECTIONAL_CONTACT_SCALE = float(np.cbrt(0.75))

#: The Kahler/separatrix parameter value, kept as the exact double of 1/6.
ONE_SIXTH = 1.0 / 6.0


class Family(str, Enum):
    S = "s"
    R = "r"
    L = "l"
    I = "I"


class Branch(str, Enum):
    TOWARD_I = "toward_i"
    TOWARD_J = "toward_j"


@dataclass(frozen=True)
class CurveId:
    """One of the twelve named curves; ``branch`` only for the r family."""

    family: Family
    k: int
    branch: Branch | None = None

    def __post_init__(self) -> None:
        if self.k not in (1, 2, 3):
            raise DomainError(f"curve index must be 1..3, got {self.k!r}")
        if (self.family is Family.R) != (self.branch is not None):
            raise DomainError("branch must be given exactly for the r family")

    @classmethod
    def from_string(cls, name: str) -> "CurveId":
        text = name.strip()
        fam = text[:1]
        if fam in ("s", "S"):
            return cls(Family.S, _parse_k(text, 2))
        if fam in ("l", "L"):
            return cls(Family.L, _parse_k(text, 2))
        if fam in ("i", "I"):
            return cls(Family.I, _parse_k(text, 2))
        if fam in ("r", "R"):
            if len(text) != 3 or text[2] not in "ijIJ":
                raise DomainError(f"r-curve name must look like 'r1i' or 'r1j', got {name!r}")
            branch = Branch.TOWARD_I if text[2] in "iI" else Branch.TOWARD_J
            return cls(Family.R, int(text[1]), branch)
        raise DomainError(f"unknown curve name {name!r}")

    def __str__(self) -> str:
        if self.family is Family.R:
            suffix = "i" if self.branch is Branch.TOWARD_I else "j"
            return f"r{self.k}{suffix}"
        return f"{self.family.value}{self.k}"


def _parse_k(text: str, expected_len: int) -> int:
    if len(text) != expected_len or text[1] not in "123":
        raise DomainError(f"bad curve name {text!r}")
    return int(text[1])


@dataclass(frozen=True)
class CurveSample:
    """A sampled curve point: parameter value and the metric it maps to."""

    t: float
    m: Metric


def _require_positive(t, what: str = "t"):
    arr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise DomainError(f"{what} must be positive and finite")
    return arr


def sectional_scale(t):
    """Common scale profile of the sectional-boundary parametrization.

    The textbook closed form ``cbrt((-t - 1 + 2 sqrt(t^2 - t + 1)) /
    (t (t-1)^2))`` is 0/0 at t = 1.  Multiplying numerator and denominator
    by the conjugate gives the algebraically identical, everywhere-regular
    expression ``cbrt(3 / (t (t + 1 + 2 sqrt(t^2 - t + 1))))`` used here;
    at t = 1 it evaluates to cbrt(3/4), the contact value with the
    invariant curve.
    """
    t = _require_positive(t)
    root = np.sqrt(t * t - t + 1.0)
    return np.cbrt(3.0 / (t * (t + 1.0 + 2.0 * root)))


def ricci_domain_gap(params: SpaceParams) -> tuple[float, float]:
    """Endpoints ``(m, M)`` of the excluded parameter interval of ``ricci_scale``.

    They are the roots of ``t^2 - t/a + 1``, so ``m * M = 1`` and
    ``0 < a < m < 1 < M < 1/a``.  The small root is computed through the
    conjugate form ``2a / (1 + sqrt(1 - 4 a^2))``, which avoids the
    cancellation the textbook quadratic formula suffers for small ``a``.
    """
    a = params.a
    s = np.sqrt(1.0 - 4.0 * a * a)
    big = (1.0 + s) / (2.0 * a)
    return float(2.0 * a / (1.0 + s)), float(big)


def ricci_scale(t, params: SpaceParams):
    """Scale profile ``(t^4 - t^3/a + t^2) ** (-1/6)`` of the Ricci boundary.

    Defined where the radicand is positive, i.e. for t in (0, m) or
    (M, +inf) with ``(m, M) = ricci_domain_gap(...)``.  The radicand is
    evaluated in the factored form ``t^2 (t - m)(t - M)`` so the excluded
    interval is rejected exactly at its computed endpoints.
    """
    t = _require_positive(t)
    m, big = ricci_domain_gap(params)
    radicand = t * t * (t - m) * (t - big)
    if np.any(radicand <= 0.0):
        raise DomainError(
            f"parameter t lies in the excluded interval [{m:.6g}, {big:.6g}] "
            "where the Ricci boundary profile is undefined"
        )
    return radicand ** (-1.0 / 6.0)


def kahler_scale(t):
    """Scale profile ``(t^2 + t) ** (-1/3)`` of the Kahler curves."""
    t = _require_positive(t)
    return np.cbrt(1.0 / (t * t + t))


def _place(k: int, dist, carrier, plain, swap: bool = False) -> np.ndarray:
    """Assemble coordinates: distinguished slot, t-carrier and plain slot.

    The carrier goes to the larger complementary index unless ``swap``.
    """
    lo, hi = other_indices(k)
    dist, carrier, plain = np.broadcast_arrays(
        np.asarray(dist, float), np.asarray(carrier, float), np.asarray(plain, float)
    )
    out = np.empty(dist.shape + (3,), dtype=float)
    out[..., k - 1] = dist
    if swap:
        out[..., lo - 1] = carrier
        out[..., hi - 1] = plain
    else:
        out[..., hi - 1] = carrier
        out[..., lo - 1] = plain
    return out


def _coords_sectional(k: int, t) -> np.ndarray:
    scale = sectional_scale(t)
    t = np.asarray(t, float)
    return _place(k, 1.0 / (t * scale * scale), t * scale, scale)


def _coords_ricci(k: int, branch: Branch, t, params: SpaceParams, untrimmed: bool) -> np.ndarray:
    t_arr = _require_positive(t)
    if not untrimmed and np.any(t_arr > params.a):
        raise DomainError(
            f"trimmed Ricci-boundary parameter range is (0, a] = (0, {params.a:.6g}]; "
            "pass untrimmed=True for the full domain"
        )
    scale = ricci_scale(t_arr, params)
    return _place(
        k,
        1.0 / (t_arr * scale * scale),
        t_arr * scale,
        scale,
        swap=(branch is Branch.TOWARD_J),
    )


def _coords_kahler(k: int, t) -> np.ndarray:
    scale = kahler_scale(t)
    t = np.asarray(t, float)
    return _place(k, 1.0 / (t * scale * scale), t * scale, scale)


def _coords_invariant(k: int, p) -> np.ndarray:
    p = _require_positive(p, "p")
    return _place(k, p ** (-2.0), p, p)


def _check_kahler_param(a: float, force: bool) -> None:
    if a == ONE_SIXTH:
        return
    if not force:
        raise KahlerParameterError(
            f"Kahler curves are separatrices only at a = 1/6; got a = {a!r} "
            "(pass force=True to sample the locus x_k = x_i + x_j anyway)"
        )
    warnings.warn(
        "sampling the Kahler locus at a != 1/6: the curve is well defined but "
        "is not a separatrix of the flow",
        UserWarning,
        stacklevel=3,
    )


def sample_sectional_boundary(k: int, t: float) -> CurveSample:
    """Point of the sectional boundary curve ``s_k`` at parameter ``t > 0``."""
    coords = _coords_sectional(k, float(t))
    return CurveSample(float(t), Metric(*coords))


def sample_ricci_boundary(
    k: int,
    branch: Branch,
    t: float,
    params: SpaceParams,
    untrimmed: bool = False,
) -> CurveSample:
    """Point of one branch of the Ricci boundary curve ``r_k``.

    The default parameter range is the trimmed interval (0, a], which ends
    exactly at the intersection point shared with the branch's partner
    curve.  With ``untrimmed=True`` the full domain (0, m) + (M, +inf) is
    allowed; the second coordinate-coincidence happens at t = 1/a.
    """
    coords = _coords_ricci(k, Branch(branch), float(t), params, untrimmed)
    return CurveSample(float(t), Metric(*coords))


def sample_kahler_curve(k: int, t: float, a: float = ONE_SIXTH, force: bool = False) -> CurveSample:
    """Point of the Kahler curve ``l_k``; gated on a = 1/6 unless forced."""
    _check_kahler_param(a, force)
    coords = _coords_kahler(k, float(t))
    return CurveSample(float(t), Metric(*coords))


def sample_invariant_curve(k: int, p: float) -> CurveSample:
    """Point of the invariant curve ``I_k``: both complementary coordinates
    equal ``p`` and the distinguished one ``p**-2``."""
    coords = _coords_invariant(k, float(p))
    return CurveSample(float(p), Metric(*coords))


def sample_curve(
    curve: CurveId | str,
    ts,
    params: SpaceParams | None = None,
    untrimmed: bool = False,
    force_kahler: bool = False,
) -> np.ndarray:
    """Vectorized sampler: coordinates of shape ``(len(ts), 3)``."""
    cid = CurveId.from_string(curve) if isinstance(curve, str) else curve
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    if cid.family is Family.S:
        return _coords_sectional(cid.k, ts)
    if cid.family is Family.I:
        return _coords_invariant(cid.k, ts)
    if cid.family is Family.L:
        a = ONE_SIXTH if params is None else params.a
        _check_kahler_param(a, force_kahler)
        return _coords_kahler(cid.k, ts)
    if params is None:
        raise DomainError("Ricci boundary curves need SpaceParams")
    return _coords_ricci(cid.k, cid.branch, ts, params, untrimmed)


def ricci_intersection_point(i: int, j: int, params: SpaceParams) -> Metric:
    """The unique common point of the curves ``r_i`` and ``r_j``.

    Its coordinates are ``a**(1/3)`` at the two given indices and
    ``a**(-2/3)`` at the remaining one; both Ricci forms with distinguished
    indices ``i`` and ``j`` vanish there.
    """
    if i == j or i not in (1, 2, 3) or j not in (1, 2, 3):
        raise DomainError(f"need two distinct indices in 1..3, got {(i, j)!r}")
    k = 6 - i - j
    small = float(np.cbrt(params.a))
    coords = [0.0, 0.0, 0.0]
    coords[i - 1] = small
    coords[j - 1] = small
    coords[k - 1] = 1.0 / (small * small)
    return Metric(*coords)


def sectional_invariant_intersection(k: int) -> Metric:
    """The single point where the invariant curve ``I_k`` meets ``s_k``."""
    return sample_invariant_curve(k, SECTIONAL_CONTACT_SCALE).m


_ASYMPTOTE_T_MAX = 0.1


def sectional_boundary_asymptote(t: float) -> Metric:
    """Leading small-t expansion of the ``s_3`` curve.

    ``x1 = x3 = t**(-1/3)`` and ``x2 = t**(2/3)``; the error of ``x2`` is of
    order ``t**(8/3)`` (its next correction vanishes) and of the other two
    coordinates of order ``t**(5/3)``.  Valid for t in (0, 0.1].
    """
    t = float(t)
    if not 0.0 < t <= _ASYMPTOTE_T_MAX:
        raise DomainError(f"asymptotic regime is t in (0, {_ASYMPTOTE_T_MAX}], got {t!r}")
    lead = t ** (-1.0 / 3.0)
    return Metric(lead, t ** (2.0 / 3.0), lead)


def ricci_boundary_asymptote(t: float, params: SpaceParams) -> Metric:
    """Two-term small-t expansion of the ``r_1`` branch toward ``r_2``.

    ``x1 = t**(-1/3)``, ``x2 = t**(2/3) + t**(5/3)/(6a)`` and
    ``x3 = t**(-1/3) + t**(2/3)/(6a)``.  Dropping the second-order term of
    ``x2`` degrades its error from order ``t**(8/3)`` to ``t**(5/3)``.
    Valid for t in (0, 0.1].
    """
    t = float(t)
    if not 0.0 < t <= _ASYMPTOTE_T_MAX:
        raise DomainError(f"asymptotic regime is t in (0, {_ASYMPTOTE_T_MAX}], got {t!r}")
    a = params.a
    lead = t ** (-1.0 / 3.0)
    second = t ** (2.0 / 3.0) / (6.0 * a)
    return Metric(lead, t ** (2.0 / 3.0) + t ** (5.0 / 3.0) / (6.0 * a), lead + second)


#: Names of the planar projections onto the (x1, x2) coordinate plane.
PROJECTION_CURVES = ("s1p", "s2p", "s3p", "r1p", "r2p", "r3p", "k1p", "k2p", "k3p")


def projection_residual(curve: str, x1, x2, params: SpaceParams | None = None):
    """Residual of the implicit polynomial of a projected boundary curve.

    The twelve space curves project onto the (x1, x2) plane (x3 eliminated
    through the unit-volume relation) as algebraic curves; this evaluates
    the defining polynomial of the named projection at ``(x1, x2)``.  The
    r-family polynomials depend on the space parameter.
    """
    name = curve.lower()
    if name not in PROJECTION_CURVES:
        raise DomainError(f"unknown projection curve {curve!r}")
    u = np.asarray(x1, dtype=float)
    v = np.asarray(x2, dtype=float)
    if np.any(u <= 0.0) or np.any(v <= 0.0):
        raise DomainError("projection coordinates must be positive")
    if name == "s1p":
        return 3 * u**4 * v**2 - 2 * u**3 * v**3 - u**2 * v**4 - 2 * u**2 * v + 2 * u * v**2 - 1
    if name == "s2p":
        return 3 * v**4 * u**2 - 2 * v**3 * u**3 - v**2 * u**4 - 2 * v**2 * u + 2 * v * u**2 - 1
    if name == "s3p":
        return u**4 * v**2 - 2 * u**3 * v**3 + u**2 * v**4 + 2 * u**2 * v + 2 * u * v**2 - 3
    if name == "k1p":
        return u * v * (u - v) - 1.0
    if name == "k2p":
        return u * v * (v - u) - 1.0
    if name == "k3p":
        return u * v * (u + v) - 1.0
    if params is None:
        raise DomainError("r-family projections need SpaceParams")
    a = params.a
    if name == "r1p":
        return a * u**4 * v**2 - a * u**2 * v**4 + u * v**2 - a
    if name == "r2p":
        return a * v**4 * u**2 - a * v**2 * u**4 + v * u**2 - a
    return a * u**4 * v**2 + a * u**2 * v**4 - u**3 * v**3 - a
