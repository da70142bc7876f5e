"""Core domain types: diagonal invariant metrics, space parameters, tolerances.

A metric is a point ``(x1, x2, x3)`` in the positive octant, the three
scaling factors of a diagonal invariant inner product on the isotropy
modules of a generalized Wallach space.  The unit-volume surface
``x1 * x2 * x3 = 1`` (called Sigma throughout the package) is invariant
under the normalized Ricci flow and carries the reduced dynamics.

All reals are 64-bit floats.  Numerical tolerances are centralized in
:class:`Tolerances` and passed explicitly; there are no hidden globals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "WallachFlowError",
    "NonPositiveCoordinateError",
    "MissingDimensionsError",
    "DomainError",
    "KahlerParameterError",
    "NotAnEquilibriumError",
    "StepFailureError",
    "BlowUpError",
    "Metric",
    "SpaceParams",
    "Tolerances",
    "other_indices",
    "validate_metric",
    "volume",
    "normalize_to_sigma",
]


class WallachFlowError(Exception):
    """Base class for all library errors."""


class NonPositiveCoordinateError(WallachFlowError, ValueError):
    """A metric coordinate is not a strictly positive finite number."""

    def __init__(self, index: int, value) -> None:
        self.index = index
        self.value = value
        super().__init__(f"coordinate x{index} must be positive and finite, got {value!r}")


class MissingDimensionsError(WallachFlowError):
    """An operation needs module dimensions d1, d2, d3 but none were given."""


class DomainError(WallachFlowError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class KahlerParameterError(DomainError):
    """Kahler curves are flow separatrices only at a = 1/6."""


class NotAnEquilibriumError(WallachFlowError):
    """A point passed to equilibrium classification is not a fixed point."""


class _IntegrationError(WallachFlowError):
    """Base for integration failures; carries the partial trajectory."""

    def __init__(self, message: str, trajectory=None) -> None:
        self.trajectory = trajectory
        super().__init__(message)


class StepFailureError(_IntegrationError):
    """Adaptive step size underflowed below the hard floor."""


class BlowUpError(_IntegrationError):
    """A coordinate left the admissible window [1e-12, 1e12]."""


def other_indices(k: int) -> tuple[int, int]:
    """Complementary pair of the distinguished 1-based index, in increasing order."""
    if k not in (1, 2, 3):
        raise DomainError(f"index must be 1, 2 or 3, got {k!r}")
    return {1: (2, 3), 2: (1, 3), 3: (1, 2)}[k]


@dataclass(frozen=True)
class Metric:
    """A diagonal invariant metric, i.e. a point in the positive octant."""

    x1: float
    x2: float
    x3: float

    def __post_init__(self) -> None:
        for index, value in enumerate((self.x1, self.x2, self.x3), start=1):
            value = float(value)
            if not math.isfinite(value) or value <= 0.0:
                raise NonPositiveCoordinateError(index, value)
            object.__setattr__(self, f"x{index}", value)

    @property
    def coords(self) -> tuple[float, float, float]:
        return (self.x1, self.x2, self.x3)

    def coordinate(self, k: int) -> float:
        """Coordinate by 1-based index."""
        return self.coords[k - 1]

    def as_array(self) -> np.ndarray:
        return np.array(self.coords, dtype=float)

    def __array__(self, dtype=None, copy=None) -> np.ndarray:
        return np.array(self.coords, dtype=dtype or float)

    def on_sigma(self, tol: float = 1e-10) -> bool:
        """Whether the point lies on the unit-volume surface within ``tol``."""
        return abs(self.x1 * self.x2 * self.x3 - 1.0) <= tol

    def is_generic(self, tol: float = 0.0) -> bool:
        """Pairwise-distinct coordinates (strictly, or beyond ``tol``)."""
        return (
            abs(self.x1 - self.x2) > tol
            and abs(self.x2 - self.x3) > tol
            and abs(self.x1 - self.x3) > tol
        )

    def permuted(self, perm: tuple[int, int, int]) -> "Metric":
        """Metric with coordinates reordered; ``perm`` maps new slot -> old 1-based index."""
        c = self.coords
        return Metric(c[perm[0] - 1], c[perm[1] - 1], c[perm[2] - 1])


@dataclass(frozen=True)
class SpaceParams:
    """Parameters of a generalized Wallach space.

    ``a`` is the common parameter of the reduced equal-parameter system and
    must lie in (0, 1/2).  Per-module values ``a1, a2, a3`` (each in
    (0, 1/2]) default to ``a``; module dimensions ``d1, d2, d3`` are only
    needed by the scalar curvature and the general diagonal flow.
    """

    a: float
    a1: float | None = None
    a2: float | None = None
    a3: float | None = None
    d1: int | None = None
    d2: int | None = None
    d3: int | None = None

    def __post_init__(self) -> None:
        a = float(self.a)
        if not (0.0 < a < 0.5):
            raise DomainError(f"parameter a must lie in (0, 1/2), got {self.a!r}")
        object.__setattr__(self, "a", a)
        for name in ("a1", "a2", "a3"):
            v = getattr(self, name)
            if v is not None and not (0.0 < float(v) <= 0.5):
                raise DomainError(f"{name} must lie in (0, 1/2], got {v!r}")
        dims = (self.d1, self.d2, self.d3)
        given = [d for d in dims if d is not None]
        if given and len(given) != 3:
            raise DomainError("either give all of d1, d2, d3 or none")
        for name, d in zip(("d1", "d2", "d3"), dims):
            if d is not None and (int(d) != d or d < 1):
                raise DomainError(f"{name} must be a positive integer, got {d!r}")

    @property
    def a_triple(self) -> tuple[float, float, float]:
        return (
            self.a if self.a1 is None else float(self.a1),
            self.a if self.a2 is None else float(self.a2),
            self.a if self.a3 is None else float(self.a3),
        )

    @property
    def dims(self) -> tuple[int, int, int] | None:
        if self.d1 is None:
            return None
        return (int(self.d1), int(self.d2), int(self.d3))

    def require_dims(self) -> tuple[int, int, int]:
        dims = self.dims
        if dims is None:
            raise MissingDimensionsError("module dimensions d1, d2, d3 are required here")
        return dims


@dataclass(frozen=True)
class Tolerances:
    """Central tolerance policy threaded through the numerical checks."""

    sigma_tol: float = 1e-10
    root_tol: float = 1e-12
    eig_tol: float = 1e-9
    grad_fd_tol: float = 1e-6

    def __post_init__(self) -> None:
        for name in ("sigma_tol", "root_tol", "eig_tol", "grad_fd_tol"):
            if not getattr(self, name) > 0.0:
                raise DomainError(f"{name} must be strictly positive")


def validate_metric(x1: float, x2: float, x3: float) -> Metric:
    """Build a :class:`Metric`, rejecting non-positive coordinates."""
    return Metric(x1, x2, x3)


def volume(m) -> float:
    """Product of the coordinates; the first integral of the reduced flow."""
    x = np.asarray(m, dtype=float)
    return float(x[..., 0] * x[..., 1] * x[..., 2])


def normalize_to_sigma(m: Metric) -> Metric:
    """Rescale a metric onto the unit-volume surface.

    Each coordinate is divided by the cube root of the volume, so the result
    satisfies ``x1 * x2 * x3 = 1`` up to rounding and the map is idempotent.
    """
    scale = np.cbrt(volume(m))
    return Metric(m.x1 / scale, m.x2 / scale, m.x3 / scale)
