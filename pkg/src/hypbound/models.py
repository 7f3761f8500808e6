"""Points and metrics of the hyperbolic plane in its standard conformal models.

Four models are supported: the unit disc, the upper half-plane, the right
half-plane, and the punctured disc. All distances use the curvature -1
normalization (disc density 2/(1-|z|^2), half-plane density 1/Im).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .errors import DomainError, NumericalError, UnsupportedError, ValidationError

# Points closer than this to a model boundary are rejected: distances to
# such points are numerically meaningless in double precision.
BOUNDARY_MARGIN = 1e-14


class Model(Enum):
    DISC = "disc"
    UPPER_HALF_PLANE = "upper_half_plane"
    RIGHT_HALF_PLANE = "right_half_plane"
    PUNCTURED_DISC = "punctured_disc"


def model_excess(value: complex, model: Model) -> float:
    """How far ``value`` sits outside ``model`` (0.0 for interior points)."""
    if model is Model.DISC:
        return max(0.0, abs(value) - 1.0)
    if model is Model.UPPER_HALF_PLANE:
        return max(0.0, -value.imag)
    if model is Model.RIGHT_HALF_PLANE:
        return max(0.0, -value.real)
    if model is Model.PUNCTURED_DISC:
        return max(0.0, abs(value) - 1.0)  # the puncture is handled separately
    raise ValidationError(f"unknown model {model!r}")


def _validate(value: complex, model: Model) -> None:
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ValidationError(f"non-finite point {value!r}")
    if model is Model.DISC:
        if abs(value) > 1.0 - BOUNDARY_MARGIN:
            raise ValidationError(f"{value!r} is not interior to the unit disc")
    elif model is Model.UPPER_HALF_PLANE:
        if value.imag < BOUNDARY_MARGIN:
            raise ValidationError(f"{value!r} is not interior to the upper half-plane")
    elif model is Model.RIGHT_HALF_PLANE:
        if value.real < BOUNDARY_MARGIN:
            raise ValidationError(f"{value!r} is not interior to the right half-plane")
    elif model is Model.PUNCTURED_DISC:
        r = abs(value)
        if r > 1.0 - BOUNDARY_MARGIN or r < BOUNDARY_MARGIN:
            raise ValidationError(f"{value!r} is not interior to the punctured disc")
    else:
        raise ValidationError(f"unknown model {model!r}")


@dataclass(frozen=True)
class ModelPoint:
    """A point of the hyperbolic plane tagged with the model it lives in."""

    value: complex
    model: Model

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", complex(self.value))
        _validate(self.value, self.model)

    @classmethod
    def disc(cls, value: complex) -> "ModelPoint":
        return cls(value, Model.DISC)

    @classmethod
    def upper(cls, value: complex) -> "ModelPoint":
        return cls(value, Model.UPPER_HALF_PLANE)

    @classmethod
    def right(cls, value: complex) -> "ModelPoint":
        return cls(value, Model.RIGHT_HALF_PLANE)

    @classmethod
    def punctured(cls, value: complex) -> "ModelPoint":
        return cls(value, Model.PUNCTURED_DISC)

    def to_dict(self) -> dict:
        return {"model": self.model.value, "re": self.value.real, "im": self.value.imag}

    @classmethod
    def from_dict(cls, d: dict) -> "ModelPoint":
        return cls(complex(d["re"], d["im"]), Model(d["model"]))


@dataclass(frozen=True)
class HalfDistancePair:
    """sinh and cosh of half the hyperbolic distance between two disc points.

    Satisfies c**2 - s**2 = 1 up to relative 1e-12.
    """

    s: float
    c: float

    def __post_init__(self) -> None:
        if self.s < 0.0 or self.c < 1.0 - 1e-12:
            raise ValidationError(f"invalid half-distance pair ({self.s}, {self.c})")
        if abs(self.c * self.c - self.s * self.s - 1.0) > 1e-12 * max(1.0, self.c * self.c):
            raise ValidationError(
                f"half-distance pair ({self.s}, {self.c}) violates c^2 - s^2 = 1"
            )


def _dist_disc(u: complex, v: complex) -> float:
    # 2*atanh of the Moebius-invariant quotient; stable near the boundary.
    t = abs(u - v) / abs(1.0 - u * v.conjugate())
    if t >= 1.0:
        raise NumericalError("points too close to the boundary for a finite distance")
    return 2.0 * math.atanh(t)


def _dist_upper(u: complex, v: complex) -> float:
    # sinh(d/2) = |u-v| / (2 sqrt(Im u Im v)); asinh keeps small and large
    # separations accurate where the acosh form would lose digits.
    return 2.0 * math.asinh(abs(u - v) / (2.0 * math.sqrt(u.imag * v.imag)))


def dist(u: ModelPoint, v: ModelPoint) -> float:
    """Hyperbolic distance between two points of the same model."""
    if u.model is not v.model:
        raise DomainError(f"model mismatch: {u.model} vs {v.model}")
    if u.model is Model.DISC:
        return _dist_disc(u.value, v.value)
    if u.model is Model.UPPER_HALF_PLANE:
        return _dist_upper(u.value, v.value)
    if u.model is Model.RIGHT_HALF_PLANE:
        # single source of truth: rotate onto the upper half-plane
        return _dist_upper(1j * u.value, 1j * v.value)
    from .covering import punctured_dist  # deferred: covering depends on models

    return punctured_dist(u, v)


def half_sinh_cosh(u: ModelPoint, v: ModelPoint) -> HalfDistancePair:
    """sinh and cosh of half the distance between disc points, by the
    quotient formulas |u-v| and |1-u*conj(v)| over sqrt((1-|u|^2)(1-|v|^2))."""
    if u.model is not Model.DISC or v.model is not Model.DISC:
        raise ValidationError("half_sinh_cosh is defined for disc points only")
    den = math.sqrt((1.0 - abs(u.value) ** 2) * (1.0 - abs(v.value) ** 2))
    s = abs(u.value - v.value) / den
    c = abs(1.0 - u.value * v.value.conjugate()) / den
    return HalfDistancePair(s, c)


def density_punctured(z: ModelPoint) -> float:
    """Riemannian density -1/(|z| log|z|) of the punctured disc; always >= e."""
    if z.model is not Model.PUNCTURED_DISC:
        raise ValidationError("density_punctured needs a punctured-disc point")
    r = abs(z.value)
    return -1.0 / (r * math.log(r))


# Fixed isometries, the upper half-plane as hub.
_TO_UPPER: dict[Model, Callable[[complex], complex]] = {
    Model.UPPER_HALF_PLANE: lambda z: z,
    Model.RIGHT_HALF_PLANE: lambda z: 1j * z,
    Model.DISC: lambda w: 1j * (1.0 + w) / (1.0 - w),
}
_FROM_UPPER: dict[Model, Callable[[complex], complex]] = {
    Model.UPPER_HALF_PLANE: lambda z: z,
    Model.RIGHT_HALF_PLANE: lambda z: -1j * z,
    Model.DISC: lambda z: (z - 1j) / (z + 1j),
}


def convert(p: ModelPoint, target: Model) -> ModelPoint:
    """Move a point to another model by a fixed isometry (Cayley map for
    disc <-> upper half-plane, rotation by i for the right half-plane)."""
    if p.model is target:
        return p
    if target is Model.PUNCTURED_DISC or p.model is Model.PUNCTURED_DISC:
        raise UnsupportedError("no global isometry involves the punctured disc")
    return ModelPoint(_FROM_UPPER[target](_TO_UPPER[p.model](p.value)), target)


def _simpson(f: Callable[[np.ndarray], np.ndarray], a: float, b: float,
             tol: float = 1e-9, max_panels: int = 2 ** 20) -> float:
    """Composite Simpson with panel doubling until two estimates agree."""
    n = 8
    prev = None
    while n <= max_panels:
        t = np.linspace(a, b, n + 1)
        y = f(t)
        h = (b - a) / n
        s = (h / 3.0) * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-1:2].sum())
        if prev is not None and abs(s - prev) < tol:
            return float(s)
        prev = s
        n *= 2
    raise NumericalError("quadrature did not converge within the panel cap")


def _oracle_disc(u: complex, v: complex) -> float:
    # geodesic from u to v pulled through the automorphism sending u to 0;
    # for u = 0 this is the straight radial segment.
    xi = (v - u) / (1.0 - u.conjugate() * v)
    scale = 1.0 - abs(u) ** 2

    def integrand(t: np.ndarray) -> np.ndarray:
        s = t * xi
        den = 1.0 + u.conjugate() * s
        g = (s + u) / den
        dg = xi * scale / (den * den)
        return 2.0 * np.abs(dg) / (1.0 - np.abs(g) ** 2)

    return _simpson(integrand, 0.0, 1.0)


def _oracle_upper(u: complex, v: complex) -> float:
    if abs(u.real - v.real) <= 1e-12 * max(1.0, abs(u), abs(v)):
        # vertical geodesic: straight segment, density 1/Im
        step = v - u

        def integrand(t: np.ndarray) -> np.ndarray:
            return abs(step) / (u + t * step).imag

        return _simpson(integrand, 0.0, 1.0)
    # semicircle centered on the real axis; arc length element r*dtheta and
    # density 1/(r sin theta) cancel the radius exactly
    x0 = (abs(v) ** 2 - abs(u) ** 2) / (2.0 * (v.real - u.real))
    th_u = math.atan2(u.imag, u.real - x0)
    th_v = math.atan2(v.imag, v.real - x0)

    def integrand(t: np.ndarray) -> np.ndarray:
        return 1.0 / np.sin(t)

    return abs(_simpson(integrand, th_u, th_v))


def _oracle_right(u: complex, v: complex) -> float:
    if abs(u.imag - v.imag) <= 1e-12 * max(1.0, abs(u), abs(v)):
        step = v - u

        def integrand(t: np.ndarray) -> np.ndarray:
            return abs(step) / (u + t * step).real

        return _simpson(integrand, 0.0, 1.0)
    # semicircle centered on the imaginary axis, angle measured from Re > 0
    y0 = (abs(v) ** 2 - abs(u) ** 2) / (2.0 * (v.imag - u.imag))
    ph_u = math.atan2(u.imag - y0, u.real)
    ph_v = math.atan2(v.imag - y0, v.real)

    def integrand(t: np.ndarray) -> np.ndarray:
        return 1.0 / np.cos(t)

    return abs(_simpson(integrand, ph_u, ph_v))


def dist_oracle(u: ModelPoint, v: ModelPoint) -> float:
    """Distance by adaptive quadrature of the Riemannian density along the
    geodesic; an independent check of :func:`dist` (punctured disc excluded)."""
    if u.model is not v.model:
        raise DomainError(f"model mismatch: {u.model} vs {v.model}")
    if u.model is Model.PUNCTURED_DISC:
        raise DomainError("no quadrature oracle for the punctured disc")
    if u.value == v.value:
        return 0.0
    if u.model is Model.DISC:
        return _oracle_disc(u.value, v.value)
    if u.model is Model.UPPER_HALF_PLANE:
        return _oracle_upper(u.value, v.value)
    return _oracle_right(u.value, v.value)
