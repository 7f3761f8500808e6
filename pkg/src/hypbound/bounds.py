"""Bound constants and margin checks for the distortion inequalities:
the two-point bound and its sharpened form, the reference-automorphism
variant, the fixed-point bound, and the punctured-disc bound."""

from __future__ import annotations

import math
from typing import Optional

from .covering import punctured_dist
from .errors import PreconditionError
from .holomaps import HoloMap, Identity, PuncturedPower, declared_degree, evaluate
from .mobius import Mobius, apply, is_isometry
from .models import ModelPoint, density_punctured, dist
from .report import DEFAULT_TOLERANCE, BoundReport

MIN_SEPARATION = 1e-9


def constant_two_point(z: ModelPoint, a: ModelPoint, b: ModelPoint,
                       sharp: bool = False) -> float:
    """The function-independent constant of the two-point bound:
    exp(d(z,a) + d(a,b) + d(b,z)) over d(a,b), or over 2*sinh(d(a,b)/2) in
    the sharp form. The sharp constant never exceeds the plain one."""
    dab = dist(a, b)
    if dab < MIN_SEPARATION:
        raise PreconditionError("base points must be separated")
    top = math.exp(dist(z, a) + dab + dist(b, z))
    if sharp:
        return top / (2.0 * math.sinh(0.5 * dab))
    return top / dab


def constant_keu(a: ModelPoint, b: ModelPoint) -> float:
    """The two-point constant with the z-dependence split off: k such that
    the full constant is at most k * exp(2 d(z,a)), namely exp(2 d(a,b))/d(a,b)."""
    dab = dist(a, b)
    if dab < MIN_SEPARATION:
        raise PreconditionError("base points must be separated")
    return math.exp(2.0 * dab) / dab


def check_two_point(f: HoloMap, a: ModelPoint, b: ModelPoint, z: ModelPoint,
                    h: Optional[Mobius] = None, sharp: bool = False,
                    tolerance: float = DEFAULT_TOLERANCE) -> BoundReport:
    """Check d(f(z), h(z)) <= K * (d(f(a), h(a)) + d(f(b), h(b))) with h the
    identity when absent. Holomorphic maps never violate it; the real-part
    contraction is accepted so the designed counterexample runs through the
    same path."""
    constant = constant_two_point(z, a, b, sharp=sharp)
    if h is None:
        hz, ha, hb = z, a, b
        tag = "two_point_sharp" if sharp else "two_point"
    else:
        if h.model is not a.model:
            raise PreconditionError("reference automorphism must act on the points' model")
        if not is_isometry(h):
            raise PreconditionError("reference map must be a model automorphism")
        hz, ha, hb = apply(h, z), apply(h, a), apply(h, b)
        tag = "xjb"
    lhs = dist(evaluate(f, z), hz)
    rhs = constant * (dist(evaluate(f, a), ha) + dist(evaluate(f, b), hb))
    witnesses = {"f": f.to_dict(), "a": a.to_dict(), "b": b.to_dict(), "z": z.to_dict()}
    if h is not None:
        witnesses["h"] = h.to_dict()
    return BoundReport.build(tag, lhs, rhs, constant, witnesses, tolerance)


def check_fixed_point(f: HoloMap, a: ModelPoint, b: ModelPoint, z: ModelPoint,
                      tolerance: float = DEFAULT_TOLERANCE) -> BoundReport:
    """Check d(f(z), z) <= M * d(f(a), a) for a map fixing b, with
    M = exp(d(a,z) + d(z,b)) / (4 sinh(d(a,b)/2)); M is always above 1."""
    dab = dist(a, b)
    if dab < MIN_SEPARATION:
        raise PreconditionError("base points must be separated")
    drift = dist(evaluate(f, b), b)
    if drift > 1e-10:
        raise PreconditionError(f"map moves the fixed point by {drift:.3e}")
    constant = math.exp(dist(a, z) + dist(z, b)) / (4.0 * math.sinh(0.5 * dab))
    lhs = dist(evaluate(f, z), z)
    rhs = constant * dist(evaluate(f, a), a)
    witnesses = {"f": f.to_dict(), "a": a.to_dict(), "b": b.to_dict(), "z": z.to_dict()}
    return BoundReport.build("fixed_point", lhs, rhs, constant, witnesses, tolerance)


def check_punctured(f: HoloMap, h: HoloMap, a: ModelPoint, z: ModelPoint,
                    tolerance: float = DEFAULT_TOLERANCE) -> BoundReport:
    """Check d*(f(z), h(z)) <= L^3 * d*(f(a), h(a)) on the punctured disc for
    a self-covering reference h of the same positive degree, where
    L = 8 * density(a) * exp(d*(z, a))."""
    mf = declared_degree(f)
    mh = declared_degree(h)
    if mf is None or mh is None or mf < 1 or mh < 1:
        raise PreconditionError("both maps need positive degree")
    if mf != mh:
        raise PreconditionError(f"degree mismatch: {mf} vs {mh}")
    if not isinstance(h, (PuncturedPower, Identity)):
        raise PreconditionError("reference map must be a self-covering (power or identity)")
    growth = 8.0 * density_punctured(a) * math.exp(punctured_dist(z, a))
    constant = growth ** 3
    lhs = punctured_dist(evaluate(f, z), evaluate(h, z))
    rhs = constant * punctured_dist(evaluate(f, a), evaluate(h, a))
    witnesses = {"f": f.to_dict(), "h": h.to_dict(), "a": a.to_dict(), "z": z.to_dict(),
                 "L": growth}
    return BoundReport.build("punctured", lhs, rhs, constant, witnesses, tolerance)
