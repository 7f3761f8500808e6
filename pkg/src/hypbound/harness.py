"""Reproducible verification campaigns over the bound checks, plus the
half-plane growth, counterexample, and convergence-transfer demos.

Determinism contract: every sample is rebuilt from (seed, index) through a
fixed seed-splitting rule, and reports aggregate in index order, so a
campaign's output is byte-identical at any worker count.
"""

from __future__ import annotations

import cmath
import csv
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .bounds import check_fixed_point, check_punctured, check_two_point, constant_two_point
from .errors import NumericalError, UsageError
from .holomaps import (
    BlaschkeProduct,
    Composition,
    HalfPlaneTranslate,
    HoloMap,
    MobiusAut,
    PuncturedPower,
    RealPartMap,
    evaluate,
    sample_map,
)
from .mobius import build_disc_automorphism
from .models import ModelPoint, dist
from .report import BoundReport, fmt17

SCHEMA_VERSION = 1
TWO_PI = 2.0 * math.pi

_FAMILIES_BY_THEOREM = {
    "two_point": {"blaschke", "automorphism", "mix", "realpart"},
    "two_point_sharp": {"blaschke", "automorphism", "mix", "realpart"},
    "fixed_point": {"fixing"},
    "punctured": {"exp"},
}


@dataclass(frozen=True)
class CampaignConfig:
    theorem: str
    family: str
    samples: int
    seed: int
    family_params: dict = field(default_factory=dict)
    min_sep: float = 0.1
    max_radius: float = 6.0
    tolerance: float = 1e-9

    def __post_init__(self) -> None:
        if self.theorem not in _FAMILIES_BY_THEOREM:
            raise UsageError(f"unknown theorem {self.theorem!r}")
        if self.family not in _FAMILIES_BY_THEOREM[self.theorem]:
            raise UsageError(
                f"family {self.family!r} cannot drive theorem {self.theorem!r}")
        if self.samples < 1:
            raise UsageError("samples must be >= 1")
        if self.seed < 0:
            raise UsageError("seed must be a nonnegative integer")
        if self.min_sep <= 0.0 or self.tolerance <= 0.0 or self.max_radius <= 0.0:
            raise UsageError("min_sep, max_radius and tolerance must be positive")

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "family": self.family,
            "family_params": dict(sorted(self.family_params.items())),
            "samples": self.samples,
            "seed": self.seed,
            "min_sep": self.min_sep,
            "max_radius": self.max_radius,
            "tolerance": self.tolerance,
        }


@dataclass(frozen=True)
class CampaignReport:
    config: CampaignConfig
    violations: list
    margin_stats: dict
    wall_time_s: float
    extras: Optional[dict] = None

    def to_dict(self, include_timing: bool = True) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "config": self.config.to_dict(),
            "violations": [r.to_dict() for r in self.violations],
            "margin_stats": {k: fmt17(v) for k, v in self.margin_stats.items()},
        }
        if self.extras is not None:
            out["extras"] = self.extras
        if include_timing:
            out["wall_time_s"] = self.wall_time_s
        return out

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True, indent=2)


def derive_seeds(seed: int, index: int, count: int = 4) -> list:
    """Child seeds for sample ``index``: the documented splitting rule is
    numpy's SeedSequence keyed on the entropy pair (seed, index)."""
    state = np.random.SeedSequence((seed, index)).generate_state(count, np.uint64)
    return [int(s) for s in state]


def _sample_disc_point(rng: np.random.Generator, radius: float) -> ModelPoint:
    # uniform hyperbolic radius up to ``radius`` about the origin
    r = rng.uniform(0.0, radius)
    phi = rng.uniform(0.0, TWO_PI)
    return ModelPoint.disc(math.tanh(r / 2.0) * cmath.exp(1j * phi))


def _separated_disc_point(rng: np.random.Generator, radius: float,
                          other: ModelPoint, min_sep: float) -> ModelPoint:
    for _ in range(200):
        p = _sample_disc_point(rng, radius)
        if dist(p, other) >= min_sep:
            return p
    raise UsageError("min_sep is unattainable within the sampling radius")


def _draw_disc_map(cfg: CampaignConfig, seeds: list) -> HoloMap:
    if cfg.family == "blaschke":
        return sample_map("blaschke", seeds[0],
                          {"max_degree": int(cfg.family_params.get("max_degree", 5))})
    if cfg.family == "automorphism":
        return sample_map("disc_automorphism", seeds[0])
    if cfg.family == "realpart":
        return RealPartMap()
    # mix: one of Blaschke, automorphism, or their composition
    kind = int(np.random.default_rng(seeds[0]).integers(0, 3))
    deg = int(cfg.family_params.get("max_degree", 5))
    if kind == 0:
        return sample_map("blaschke", seeds[2], {"max_degree": deg})
    if kind == 1:
        return sample_map("disc_automorphism", seeds[2])
    return Composition((
        sample_map("disc_automorphism", seeds[2]),
        sample_map("blaschke", seeds[3], {"max_degree": max(1, deg - 1)}),
    ))


def _run_two_point(cfg: CampaignConfig, index: int) -> BoundReport:
    seeds = derive_seeds(cfg.seed, index)
    rng = np.random.default_rng(seeds[1])
    half = cfg.max_radius / 2.0  # pairwise separations stay within max_radius
    f = _draw_disc_map(cfg, seeds)
    if cfg.family == "realpart":
        # real base points are fixed by Re, so the right side collapses to 0
        a = ModelPoint.disc(rng.uniform(-0.9, 0.9))
        b = ModelPoint.disc(rng.uniform(-0.9, 0.9))
        for _ in range(200):
            if dist(a, b) >= cfg.min_sep:
                break
            b = ModelPoint.disc(rng.uniform(-0.9, 0.9))
        z = _sample_disc_point(rng, half)
        while abs(z.value.imag) < 0.1:
            z = _sample_disc_point(rng, half)
    else:
        a = _sample_disc_point(rng, half)
        b = _separated_disc_point(rng, half, a, cfg.min_sep)
        z = _sample_disc_point(rng, half)
    sharp = cfg.theorem == "two_point_sharp"
    report = check_two_point(f, a, b, z, sharp=sharp, tolerance=cfg.tolerance)
    return report.with_witnesses(seed=cfg.seed, index=index)


def _run_fixed_point(cfg: CampaignConfig, index: int) -> BoundReport:
    seeds = derive_seeds(cfg.seed, index)
    rng = np.random.default_rng(seeds[1])
    half = cfg.max_radius / 2.0
    b = _sample_disc_point(rng, half)
    a = _separated_disc_point(rng, half, b, cfg.min_sep)
    z = _sample_disc_point(rng, half)
    # conjugate w * B(w) (a Blaschke product with an extra zero at 0, hence
    # fixing 0) by the automorphism exchanging 0 and b
    deg = max(1, int(cfg.family_params.get("max_degree", 4)) - 1)
    inner = sample_map("blaschke", seeds[0], {"max_degree": deg})
    fixing_zero = BlaschkeProduct(inner.rotation, (0.0,) + inner.zeros)
    sigma = build_disc_automorphism(b, 0.0)
    f = Composition((MobiusAut(sigma), fixing_zero, MobiusAut(sigma.inverse())))
    report = check_fixed_point(f, a, b, z, tolerance=cfg.tolerance)
    return report.with_witnesses(seed=cfg.seed, index=index)


def _punctured_base_point(rng: np.random.Generator) -> ModelPoint:
    # log-uniform modulus in [0.05, 0.95]: the density stays well below 1e3
    r = math.exp(rng.uniform(math.log(0.05), math.log(0.95)))
    return ModelPoint.punctured(r * cmath.exp(1j * rng.uniform(0.0, TWO_PI)))


def _punctured_nearby_point(rng: np.random.Generator, a: ModelPoint,
                            radius: float, f: HoloMap) -> ModelPoint:
    # transport a disc sample to the hyperbolic ball around the principal
    # lift of a, then project; rejection keeps the point and its image under
    # the drawn map representable (high powers crush small moduli)
    lift = complex(cmath.phase(a.value) / TWO_PI, -math.log(abs(a.value)) / TWO_PI)
    for _ in range(500):
        r = rng.uniform(0.0, radius)
        w = math.tanh(r / 2.0) * cmath.exp(1j * rng.uniform(0.0, TWO_PI))
        zeta = lift.real + lift.imag * (1j * (1.0 + w) / (1.0 - w))
        z = cmath.exp(2j * math.pi * zeta)
        if 1e-6 < abs(z) < 1.0 - 1e-8 and abs(f.value_at(z)) > 1e-12:
            return ModelPoint.punctured(z)
    raise NumericalError("could not sample a representable nearby point")


def _run_punctured(cfg: CampaignConfig, index: int) -> BoundReport:
    seeds = derive_seeds(cfg.seed, index)
    rng = np.random.default_rng(seeds[1])
    f = sample_map("punctured_exp", seeds[0], {
        "max_power": int(cfg.family_params.get("max_power", 4)),
        "max_decay": float(cfg.family_params.get("max_decay", 2.0)),
    })
    h = PuncturedPower(rng.uniform(0.0, TWO_PI), f.power)
    a = _punctured_base_point(rng)
    z = _punctured_nearby_point(rng, a, min(4.0, cfg.max_radius), f)
    report = check_punctured(f, h, a, z, tolerance=cfg.tolerance)
    return report.with_witnesses(seed=cfg.seed, index=index)


_RUNNERS: dict[str, Callable[[CampaignConfig, int], BoundReport]] = {
    "two_point": _run_two_point,
    "two_point_sharp": _run_two_point,
    "fixed_point": _run_fixed_point,
    "punctured": _run_punctured,
}


def run_sample(cfg: CampaignConfig, index: int) -> BoundReport:
    """Rebuild and re-check the single sample ``index`` of a campaign."""
    return _RUNNERS[cfg.theorem](cfg, index)


def run_campaign(cfg: CampaignConfig, workers: int = 1) -> CampaignReport:
    """Evaluate every sample of the configured family against the configured
    bound. Deterministic in (seed, samples) at any worker count."""
    start = time.perf_counter()
    runner = _RUNNERS[cfg.theorem]
    indices = range(cfg.samples)
    if workers <= 1:
        reports = [runner(cfg, i) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(lambda i: runner(cfg, i), indices))
    margins = np.array([r.margin for r in reports])
    stats = {
        "min": float(margins.min()),
        "median": float(np.median(margins)),
        "p99": float(np.percentile(margins, 99)),
        "max": float(margins.max()),
    }
    violations = [r for r in reports if r.violated]
    return CampaignReport(cfg, violations, stats, time.perf_counter() - start)


def halfplane_growth(n_values) -> list:
    """For the translations w -> w + 1/n^2 of the right half-plane, tabulate
    the displacement at 1/n against the displacement at 1, whose quotient
    grows like exp of the distance between the evaluation points."""
    rows = []
    anchor = ModelPoint.right(1.0)
    for n in n_values:
        n = int(n)
        if n < 2:
            raise UsageError("n must be at least 2")
        f = HalfPlaneTranslate(1.0 / n ** 2)
        zn = ModelPoint.right(1.0 / n)
        disp_z = dist(evaluate(f, zn), zn)
        disp_a = dist(evaluate(f, anchor), anchor)
        ratio = disp_z / disp_a
        growth = math.exp(dist(zn, anchor))
        if abs(ratio / n - 1.0) > 2.0 / n:
            raise NumericalError(f"growth ratio at n={n} left its envelope")
        rows.append({"n": n, "disp_z": disp_z, "disp_a": disp_a,
                     "ratio": ratio, "exp_rho_za": growth})
    return rows


def counterexample_demo(pairs: int = 1000, seed: int = 0) -> CampaignReport:
    """Two findings about w -> Re(w): sampled pairs confirm it contracts the
    hyperbolic metric, yet with real base points the two-point bound fails
    (the right side is zero while the left side is not)."""
    start = time.perf_counter()
    f = RealPartMap()
    rng = np.random.default_rng(derive_seeds(seed, 0)[0])
    failures = 0
    min_margin = math.inf
    for _ in range(pairs):
        u = _sample_disc_point(rng, 3.0)
        v = _sample_disc_point(rng, 3.0)
        margin = dist(u, v) - dist(evaluate(f, u), evaluate(f, v))
        min_margin = min(min_margin, margin)
        if margin < -1e-9:
            failures += 1
    violation = check_two_point(
        f, ModelPoint.disc(0.3), ModelPoint.disc(-0.3), ModelPoint.disc(0.5j))
    cfg = CampaignConfig("two_point", "realpart", samples=1, seed=seed)
    stats = {"min": violation.margin, "median": violation.margin,
             "p99": violation.margin, "max": violation.margin}
    extras = {
        "contraction": {
            "pairs": pairs,
            "failures": failures,
            "min_margin": fmt17(min_margin),
        },
        "expected_violation": violation.violated,
    }
    return CampaignReport(cfg, [violation], stats, time.perf_counter() - start, extras)


def _parse_budget(spec: str) -> Callable[[int], float]:
    """Summable displacement budgets: inv_square, inv_cube, inv_power:p=...
    (p > 1). Non-summable specs are refused."""
    name, _, rest = spec.partition(":")
    if name == "inv_square":
        p = 2.0
    elif name == "inv_cube":
        p = 3.0
    elif name in ("inv_linear", "harmonic"):
        raise UsageError(f"budget {spec!r} is not summable")
    elif name == "inv_power":
        try:
            p = float(dict(kv.split("=") for kv in rest.split(","))["p"])
        except (KeyError, ValueError) as exc:
            raise UsageError(f"malformed budget spec {spec!r}") from exc
        if p <= 1.0:
            raise UsageError(f"budget exponent {p} is not summable")
    else:
        raise UsageError(f"unknown budget spec {spec!r}")
    return lambda n: float(n) ** -p


def convergence_demo(budget: str, z: ModelPoint, rows: int = 20, seed: int = 0,
                     a: Optional[ModelPoint] = None,
                     b: Optional[ModelPoint] = None) -> list:
    """Build near-identity maps whose summed displacement at two base points
    stays within a summable budget, and tabulate the transferred bound at z:
    each row's displacement at z is at most the two-point constant times the
    budget, so the series at z converges as well."""
    budget_fn = _parse_budget(budget)
    a = a or ModelPoint.disc(0.3)
    b = b or ModelPoint.disc(-0.3)
    constant = constant_two_point(z, a, b)
    out = []
    partial = 0.0
    for n in range(1, rows + 1):
        target = budget_fn(n)
        eps = target
        for _ in range(80):
            f = sample_map("near_identity", derive_seeds(seed, n)[0], {"eps": eps})
            measured = dist(evaluate(f, a), a) + dist(evaluate(f, b), b)
            if measured <= target:
                break
            eps /= 2.0
        else:
            raise NumericalError("could not fit the displacement budget")
        disp_z = dist(evaluate(f, z), z)
        bound_z = constant * target
        if disp_z > constant * measured + 1e-9:
            raise NumericalError("two-point transfer failed on a row")
        partial += bound_z
        out.append({"n": n, "budget": target, "measured_ab": measured,
                    "bound_z": bound_z, "disp_z": disp_z,
                    "partial_sum_bound": partial})
    return out


def write_rows_csv(rows: list, path: str) -> None:
    """Write a list of uniform dict rows as CSV; floats keep 17 digits."""
    if not rows:
        raise UsageError("nothing to write")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(rows[0].keys())
        for row in rows:
            writer.writerow([fmt17(v) if isinstance(v, float) else v
                             for v in row.values()])
