"""Deterministic parameter sweeps, Bell-violation maps, threshold search and
self-verification for the noisy-preparation pipeline.

Grids of indistinguishability are realized through the one-parameter family
r' = l (with l' fixed by normalization): on it the degree of spatial
indistinguishability decreases monotonically from 1 at l = 1/sqrt(2) to 0
at l = 1, so target degrees are inverted by bisection.

Rows are evaluated family by family, optionally on a thread pool capped by
the ``ISLOCC_THREADS`` environment variable (0 or unset = auto), and
gathered in deterministic order: identical configurations produce
byte-identical CSV output.
"""

from __future__ import annotations

import json
import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import werner as werner_mod
from .amplitudes import (BOSON, FERMION, ElementaryKet, ParticleStatistics,
                         amplitude_fast, amplitude_permsum)
from .entanglement import analyze, bell_horodecki, bell_xstate, binary_entropy
from .indistinguishability import degree_two
from .ensembles import mixed_trace, pure_norm_sq
from .slocc import ProjectionUndefinedError, ZeroTraceError, project
from .states import DOWN, UP, ModeBasis, SingleParticleState, SpatialWave
from .werner import (WernerSpec, bell_states, canonical_theta,
                     depolarize_then_deform, project_werner, spec_from_l,
                     wave_state, werner_direct)

__all__ = [
    "ConfigError",
    "GridSpec",
    "SweepConfig",
    "SweepRecord",
    "BellRegionRecord",
    "ThresholdResult",
    "run_sweep",
    "run_bell_region",
    "find_threshold",
    "run_verify",
    "VerifyReport",
    "SuiteResult",
    "indist_on_family",
    "l_for_indist",
    "records_to_csv",
    "records_to_json",
    "parallel_map",
    "CSV_FIELDS",
    "BELL_REGION_FIELDS",
    "FLAG_PROBABILITY",
]

CSV_FIELDS = ("p", "l", "lprime", "theta", "statistics", "indist",
              "concurrence", "eof", "p_lr", "bell")
BELL_REGION_FIELDS = ("p", "indist", "bell", "violated")
CONSTRAINTS = ("l_eq_rprime", "l_eq_lprime", "free")

#: Rows with detection probability below this are flagged, never dropped.
FLAG_PROBABILITY = 1e-12

_SQRT_HALF = 1.0 / math.sqrt(2.0)


class ConfigError(ValueError):
    """Invalid sweep configuration (maps to CLI exit code 2)."""


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GridSpec:
    """Inclusive linear grid start..stop with ``steps`` points."""

    start: float
    stop: float
    steps: int

    def __post_init__(self):
        if self.steps < 1:
            raise ConfigError(f"grid needs at least one point, got steps={self.steps}")
        if self.start > self.stop:
            raise ConfigError(f"grid start {self.start} exceeds stop {self.stop}")

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(f"grid must be 'start:stop:steps', got {text!r}")
        try:
            return cls(float(parts[0]), float(parts[1]), int(parts[2]))
        except ValueError as exc:
            raise ConfigError(f"bad grid {text!r}: {exc}") from None

    def values(self) -> np.ndarray:
        if self.steps == 1:
            return np.array([self.start])
        return np.linspace(self.start, self.stop, self.steps)


@dataclass
class SweepConfig:
    """Sweep parameters; grids of the degree of indistinguishability require
    the r' = l family, plain l grids work with any constraint."""

    statistics: ParticleStatistics = FERMION
    target: str = "1_minus"
    theta: float | None = None
    constraint: str = "l_eq_rprime"
    p_grid: GridSpec = GridSpec(0.0, 1.0, 51)
    indist_grid: GridSpec | None = None
    l_grid: GridSpec | None = None
    lprime: float | None = None
    output: str | None = None
    format: str = "csv"

    def resolved_theta(self) -> float:
        if self.theta is None:
            return canonical_theta(self.target, self.statistics)
        return float(self.theta)

    def validate(self) -> None:
        if self.target not in ("1_minus", "1_plus"):
            raise ConfigError(f"target must be 1_minus or 1_plus, got {self.target!r}")
        if self.constraint not in CONSTRAINTS:
            raise ConfigError(f"constraint must be one of {CONSTRAINTS}, got {self.constraint!r}")
        if self.format not in ("csv", "json", "svg"):
            raise ConfigError(f"format must be csv, json or svg, got {self.format!r}")
        if self.indist_grid is not None and self.l_grid is not None:
            raise ConfigError("give either indist_grid or l_grid, not both")
        if self.indist_grid is not None and self.constraint != "l_eq_rprime":
            raise ConfigError("indistinguishability grids require the l_eq_rprime constraint")
        if self.constraint == "free" and self.lprime is None:
            raise ConfigError("the free constraint needs an explicit lprime value")
        if self.constraint != "free" and self.lprime is not None:
            raise ConfigError(f"lprime is only meaningful with the free constraint")
        if self.indist_grid is not None:
            if self.indist_grid.start < 0 or self.indist_grid.stop > 1:
                raise ConfigError("indistinguishability grid must lie in [0, 1]")
        if self.l_grid is not None:
            if self.l_grid.start < 0 or self.l_grid.stop > 1:
                raise ConfigError("l grid must lie in [0, 1]")
        if self.p_grid.start < 0 or self.p_grid.stop > 1:
            raise ConfigError("noise-probability grid must lie in [0, 1]")


# ---------------------------------------------------------------------------
# the r' = l family and its indistinguishability degree
# ---------------------------------------------------------------------------

def indist_on_family(l: float) -> float:
    """Degree of indistinguishability on the r' = l family (so l' = r)."""
    t = l * l
    p12 = t * t
    p21 = (1.0 - t) ** 2
    z = p12 + p21
    return binary_entropy(p12 / z)


def l_for_indist(target: float, tol: float = 1e-12) -> float:
    """Invert :func:`indist_on_family` on the monotone branch l in [1/sqrt(2), 1]."""
    if not 0.0 <= target <= 1.0:
        raise ConfigError(f"indistinguishability degree must lie in [0, 1], got {target!r}")
    if target >= 1.0:
        return _SQRT_HALF
    if target <= 0.0:
        return 1.0
    lo, hi = _SQRT_HALF, 1.0  # degree falls monotonically from 1 to 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if indist_on_family(mid) > target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _lprime_for(constraint: str, l: float, lprime_fixed: float | None) -> float:
    if constraint == "l_eq_rprime":
        return math.sqrt(max(0.0, 1.0 - l * l))  # r' = l
    if constraint == "l_eq_lprime":
        return l
    return float(lprime_fixed)


def _family_pairs(config: SweepConfig) -> list[tuple[float, float]]:
    if config.indist_grid is not None:
        ls = [l_for_indist(v) for v in config.indist_grid.values()]
    elif config.l_grid is not None:
        ls = list(config.l_grid.values())
    elif config.constraint == "l_eq_rprime":
        ls = [l_for_indist(v) for v in GridSpec(0.0, 1.0, 11).values()]
    else:
        raise ConfigError(f"constraint {config.constraint!r} needs an explicit l_grid")
    return [(float(l), _lprime_for(config.constraint, float(l), config.lprime)) for l in ls]


# ---------------------------------------------------------------------------
# record types and evaluation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepRecord:
    """One grid point of a sweep.  ``flagged`` marks rows whose detection
    probability fell below ``FLAG_PROBABILITY`` (metrics zeroed when the
    projection itself is undefined); it is not part of the CSV schema."""

    p: float
    l: float
    lprime: float
    theta: float
    statistics: str
    indist: float
    concurrence: float
    eof: float
    p_lr: float
    bell: float
    flagged: bool = False

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in CSV_FIELDS}


@dataclass(frozen=True)
class BellRegionRecord:
    p: float
    indist: float
    bell: float
    violated: int

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in BELL_REGION_FIELDS}


def _family_indist(psi1: SpatialWave, psi2: SpatialWave) -> float:
    return degree_two(wave_state(psi1, UP), wave_state(psi2, UP)).entropy


def _sweep_family(statistics: ParticleStatistics, target: str, theta: float,
                  l: float, lprime: float, p_values: np.ndarray) -> list[SweepRecord]:
    psi1 = SpatialWave.from_l(l)
    psi2 = SpatialWave.from_l(lprime, theta)
    try:
        indist = _family_indist(psi1, psi2)
    except ValueError:
        # both wave functions piled on one mode: the degree is undefined and
        # so is the projection; keep the rows, zeroed and flagged
        return [SweepRecord(float(p), l, lprime, theta, str(statistics),
                            0.0, 0.0, 0.0, 0.0, 0.0, flagged=True)
                for p in p_values]
    records = []
    for p in p_values:
        spec = WernerSpec(float(p), target, psi1, psi2, statistics)
        try:
            projected = project_werner(spec)
        except ProjectionUndefinedError:
            records.append(SweepRecord(float(p), l, lprime, theta, str(statistics),
                                       indist, 0.0, 0.0, 0.0, 0.0, flagged=True))
            continue
        report = analyze(projected)
        records.append(SweepRecord(float(p), l, lprime, theta, str(statistics), indist,
                                   report.concurrence, report.eof,
                                   projected.probability, report.bell,
                                   flagged=projected.probability < FLAG_PROBABILITY))
    return records


def _warn_flagged(records: Sequence) -> None:
    flagged = sum(1 for r in records if getattr(r, "flagged", False))
    if flagged:
        warnings.warn(f"{flagged} grid point(s) have detection probability below "
                      f"{FLAG_PROBABILITY:g}; rows kept with metrics zeroed where undefined",
                      RuntimeWarning, stacklevel=3)


def run_sweep(config: SweepConfig) -> list[SweepRecord]:
    """Evaluate the full pipeline over the configured grid.

    Rows are ordered by the outer (l or indistinguishability) grid first and
    the noise-probability grid second.
    """
    config.validate()
    theta = config.resolved_theta()
    p_values = config.p_grid.values()
    pairs = _family_pairs(config)

    def worker(pair: tuple[float, float]) -> list[SweepRecord]:
        return _sweep_family(config.statistics, config.target, theta,
                             pair[0], pair[1], p_values)

    records = [r for chunk in parallel_map(worker, pairs) for r in chunk]
    _warn_flagged(records)
    return records


def run_bell_region(config: SweepConfig) -> list[BellRegionRecord]:
    """CHSH value and violation flag over the (indistinguishability, noise) grid."""
    config.validate()
    theta = config.resolved_theta()
    p_values = config.p_grid.values()
    pairs = _family_pairs(config)

    def worker(pair: tuple[float, float]) -> list[BellRegionRecord]:
        rows = []
        for record in _sweep_family(config.statistics, config.target, theta,
                                    pair[0], pair[1], p_values):
            rows.append(BellRegionRecord(record.p, record.indist, record.bell,
                                         int(record.bell > 2.0)))
        return rows

    return [r for chunk in parallel_map(worker, pairs) for r in chunk]


# ---------------------------------------------------------------------------
# threshold search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThresholdResult:
    """Smallest degree of indistinguishability for which the CHSH inequality
    is violated at every noise probability (``found`` False when no degree
    achieves that)."""

    found: bool
    target: str
    statistics: str
    indist: float | None = None
    l: float | None = None
    worst_p: float | None = None
    bell_at_worst: float | None = None
    concurrence_at_worst: float | None = None

    def as_dict(self) -> dict:
        return {
            "found": self.found,
            "target": self.target,
            "statistics": self.statistics,
            "indist": self.indist,
            "l": self.l,
            "worst_p": self.worst_p,
            "bell_at_worst": self.bell_at_worst,
            "concurrence_at_worst": self.concurrence_at_worst,
        }


def _golden_min(f: Callable[[float], float], a: float, b: float,
                tol: float = 1e-7) -> tuple[float, float]:
    """Golden-section minimum of a unimodal function on [a, b]."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - inv_phi * (b - a)
    x2 = a + inv_phi * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - inv_phi * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv_phi * (b - a)
            f2 = f(x2)
    x = 0.5 * (a + b)
    return x, f(x)


def _pipeline_bell(statistics: ParticleStatistics, target: str, theta: float,
                   l: float, lprime: float, p: float) -> float:
    spec = spec_from_l(p, target, l, lprime, statistics, theta)
    try:
        return analyze(project_werner(spec)).bell
    except ProjectionUndefinedError:
        return 0.0


def _worst_case_bell(statistics: ParticleStatistics, target: str, theta: float,
                     l: float, lprime: float, grid_points: int = 101) -> tuple[float, float]:
    """Noise probability minimizing the CHSH value, via a coarse grid plus
    golden-section refinement around its minimum (the value is smooth in p)."""
    ps = np.linspace(0.0, 1.0, grid_points)
    vals = [_pipeline_bell(statistics, target, theta, l, lprime, float(p)) for p in ps]
    i = int(np.argmin(vals))
    lo = float(ps[max(0, i - 1)])
    hi = float(ps[min(grid_points - 1, i + 1)])
    p_star, b_star = _golden_min(
        lambda p: _pipeline_bell(statistics, target, theta, l, lprime, p), lo, hi)
    if vals[i] < b_star:
        return float(ps[i]), vals[i]
    return p_star, b_star


def find_threshold(config: SweepConfig, tol: float = 1e-4) -> ThresholdResult:
    """Bisect the degree of indistinguishability for the all-noise violation
    predicate min_p B > 2 on the r' = l family."""
    config.validate()
    if config.constraint != "l_eq_rprime":
        raise ConfigError("threshold search is defined on the l_eq_rprime family")
    theta = config.resolved_theta()
    stats = config.statistics

    def worst(indist: float) -> tuple[float, float, float]:
        l = l_for_indist(indist)
        lprime = _lprime_for("l_eq_rprime", l, None)
        p_star, b_star = _worst_case_bell(stats, config.target, theta, l, lprime)
        return l, p_star, b_star

    _, p_top, b_top = worst(1.0)
    if b_top <= 2.0:
        return ThresholdResult(False, config.target, str(stats))
    lo, hi = 0.0, 1.0
    _, p_lo, b_lo = worst(0.0)
    if b_lo > 2.0:
        hi = 0.0  # violated everywhere, threshold at zero
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        _, _, b_mid = worst(mid)
        if b_mid > 2.0:
            hi = mid
        else:
            lo = mid
    l, p_star, b_star = worst(hi)
    spec = spec_from_l(p_star, config.target, l,
                       _lprime_for("l_eq_rprime", l, None), stats, theta)
    concurrence_at = analyze(project_werner(spec)).concurrence
    return ThresholdResult(True, config.target, str(stats), hi, l, p_star,
                           b_star, concurrence_at)


# ---------------------------------------------------------------------------
# output encoding
# ---------------------------------------------------------------------------

def format_float(x: float) -> str:
    return f"{float(x):.12g}"


def _encode_value(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return format_float(value)


def records_to_csv(records: Sequence, fields: Sequence[str] | None = None) -> str:
    """Render records as CSV with a fixed header; floats carry 12 significant
    digits so identical configurations give byte-identical files."""
    records = list(records)
    if fields is None:
        fields = records[0].as_dict().keys() if records else CSV_FIELDS
    lines = [",".join(fields)]
    for record in records:
        row = record.as_dict()
        lines.append(",".join(_encode_value(row[name]) for name in fields))
    return "\n".join(lines) + "\n"


def records_to_json(records: Sequence, fields: Sequence[str] | None = None) -> str:
    """JSON encoding of the same rows as :func:`records_to_csv` (numbers are
    rounded through the same 12-significant-digit representation)."""
    records = list(records)
    if fields is None:
        fields = records[0].as_dict().keys() if records else CSV_FIELDS
    payload = []
    for record in records:
        row = record.as_dict()
        entry = {}
        for name in fields:
            value = row[name]
            if isinstance(value, str):
                entry[name] = value
            elif isinstance(value, (int, np.integer)) and not isinstance(value, bool):
                entry[name] = int(value)
            else:
                entry[name] = float(format_float(value))
        payload.append(entry)
    return json.dumps({"records": payload}, indent=2) + "\n"


# ---------------------------------------------------------------------------
# parallel evaluation
# ---------------------------------------------------------------------------

def _worker_count() -> int:
    raw = os.environ.get("ISLOCC_THREADS", "0").strip()
    try:
        count = int(raw)
    except ValueError:
        raise ConfigError(f"ISLOCC_THREADS must be an integer, got {raw!r}") from None
    if count < 0:
        raise ConfigError(f"ISLOCC_THREADS must be >= 0, got {count}")
    if count == 0:
        count = os.cpu_count() or 1
    return max(1, count)


def parallel_map(fn: Callable, items: Iterable) -> list:
    """Map with deterministic gather order, threaded when ISLOCC_THREADS
    allows more than one worker."""
    items = list(items)
    workers = min(_worker_count(), max(1, len(items)))
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# self-verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class VerifyReport:
    suites: tuple[SuiteResult, ...]

    @property
    def ok(self) -> bool:
        return all(s.passed for s in self.suites)

    def summary_lines(self) -> list[str]:
        lines = [f"[{'PASS' if s.passed else 'FAIL'}] {s.name}: {s.detail}"
                 for s in self.suites]
        passed = sum(1 for s in self.suites if s.passed)
        lines.append(f"{passed}/{len(self.suites)} suites passed")
        return lines


def _random_single_particle(rng: np.random.Generator, basis: ModeBasis,
                            spins=(UP, DOWN)) -> SingleParticleState:
    amps = {}
    for mode in basis.labels:
        for spin in spins:
            amps[(mode, spin)] = complex(rng.standard_normal(), rng.standard_normal())
    norm = math.sqrt(sum(abs(v) ** 2 for v in amps.values()))
    return SingleParticleState(basis, {k: v / norm for k, v in amps.items()})


def _suite_amplitude_cross_validation(rng: np.random.Generator) -> str:
    basis = ModeBasis(("A", "B", "C"))
    worst = 0.0
    for statistics in (BOSON, FERMION):
        for n in range(2, 6):
            for _ in range(25):
                bra = ElementaryKet(tuple(_random_single_particle(rng, basis)
                                          for _ in range(n)), statistics)
                ket = ElementaryKet(tuple(_random_single_particle(rng, basis)
                                          for _ in range(n)), statistics)
                worst = max(worst, abs(amplitude_fast(bra, ket) - amplitude_permsum(bra, ket)))
    assert worst < 1e-10, f"permutation sum and fast path disagree by {worst:.3e}"
    return f"naive permutation sum vs permanent/determinant, worst |diff| = {worst:.2e}"


def _suite_bell_state_norms(rng: np.random.Generator) -> str:
    worst = 0.0
    for _ in range(100):
        l, lp = rng.uniform(0, 1), rng.uniform(0, 1)
        theta = rng.uniform(0, 2 * math.pi)
        stats = BOSON if rng.integers(2) else FERMION
        psi1, psi2 = SpatialWave.from_l(l), SpatialWave.from_l(lp, theta)
        overlap_sq = abs(l * lp + math.sqrt(1 - l * l) * math.sqrt(1 - lp * lp)
                         * np.exp(1j * theta)) ** 2
        bells = bell_states(psi1, psi2, stats)
        eta = stats.eta
        expected = {"1_minus": 1 - eta * overlap_sq, "1_plus": 1 + eta * overlap_sq,
                    "2_plus": 1 + eta * overlap_sq, "2_minus": 1 + eta * overlap_sq}
        for name, state in bells.items():
            worst = max(worst, abs(pure_norm_sq(state) - expected[name]))
    assert worst < 1e-12, f"Bell-state norms off closed form by {worst:.3e}"
    return f"Bell-state squared norms vs closed constants, worst |diff| = {worst:.2e}"


def _suite_global_trace(rng: np.random.Generator) -> str:
    worst = 0.0
    for _ in range(100):
        l, lp = rng.uniform(0, 1), rng.uniform(0, 1)
        theta = rng.uniform(0, 2 * math.pi)
        p = rng.uniform(0, 1)
        stats = BOSON if rng.integers(2) else FERMION
        target = "1_minus" if rng.integers(2) else "1_plus"
        spec = WernerSpec(p, target, SpatialWave.from_l(l), SpatialWave.from_l(lp, theta), stats)
        overlap_sq = abs(l * lp + math.sqrt(1 - l * l) * math.sqrt(1 - lp * lp)
                         * np.exp(1j * theta)) ** 2
        sign = -1.0 if target == "1_minus" else 1.0
        expected = 1 + stats.eta * overlap_sq * (p / 2 + sign * (1 - p))
        worst = max(worst, abs(mixed_trace(werner_direct(spec)) - expected))
    assert worst < 1e-10, f"global trace off closed form by {worst:.3e}"
    return f"ensemble trace vs closed normalization constant, worst |diff| = {worst:.2e}"


def _suite_closed_forms(rng: np.random.Generator) -> str:
    worst_c = worst_p = 0.0
    checked = 0
    while checked < 120:
        l, lp = rng.uniform(0.02, 0.98), rng.uniform(0.02, 0.98)
        p = rng.uniform(0, 1)
        stats = BOSON if rng.integers(2) else FERMION
        r, rp = math.sqrt(1 - l * l), math.sqrt(1 - lp * lp)
        for target in ("1_minus", "1_plus"):
            if target == "1_minus":
                c_ref = werner_mod.closed_form_concurrence_minus(l, r, lp, rp, p)
                p_ref = werner_mod.closed_form_probability_minus(l, r, lp, rp, p, stats)
            else:
                c_ref = werner_mod.closed_form_concurrence_plus(l, r, lp, rp, p)
                p_ref = werner_mod.closed_form_probability_plus(l, r, lp, rp, p, stats)
            if p_ref <= 1e-6:
                continue
            projected = project_werner(spec_from_l(p, target, l, lp, stats))
            worst_c = max(worst_c, abs(analyze(projected).concurrence - c_ref))
            worst_p = max(worst_p, abs(projected.probability - p_ref))
            checked += 1
    assert worst_c < 1e-9 and worst_p < 1e-9, \
        f"closed forms vs pipeline: concurrence {worst_c:.3e}, probability {worst_p:.3e}"
    return (f"closed forms vs numeric pipeline on {checked} cases, "
            f"worst concurrence diff {worst_c:.2e}, probability diff {worst_p:.2e}")


def _suite_channel_equivalence(rng: np.random.Generator) -> str:
    worst = 0.0
    for stats in (BOSON, FERMION):
        for _ in range(20):
            l, lp = rng.uniform(0.1, 0.95), rng.uniform(0.1, 0.95)
            theta = rng.uniform(0, 2 * math.pi)
            p = rng.uniform(0, 1)
            target = "1_minus" if rng.integers(2) else "1_plus"
            psi1, psi2 = SpatialWave.from_l(l), SpatialWave.from_l(lp, theta)
            direct = project(werner_direct(WernerSpec(p, target, psi1, psi2, stats)), ("L", "R"))
            channel = project(depolarize_then_deform(p, target, psi1, psi2, stats), ("L", "R"))
            worst = max(worst, float(np.max(np.abs(direct.matrix - channel.matrix))),
                        abs(direct.probability - channel.probability))
    assert worst < 1e-10, f"channel and direct constructions disagree by {worst:.3e}"
    return f"depolarize-then-deform vs direct mixture after projection, worst |diff| = {worst:.2e}"


def _suite_projection_properties(rng: np.random.Generator) -> str:
    worst_herm = worst_trace = worst_neg = 0.0
    for _ in range(50):
        l, lp = rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95)
        theta = rng.uniform(0, 2 * math.pi)
        p = rng.uniform(0, 1)
        stats = BOSON if rng.integers(2) else FERMION
        target = "1_minus" if rng.integers(2) else "1_plus"
        spec = WernerSpec(p, target, SpatialWave.from_l(l), SpatialWave.from_l(lp, theta), stats)
        try:
            projected = project_werner(spec)
        except ProjectionUndefinedError:
            continue
        m = projected.matrix
        worst_herm = max(worst_herm, float(np.max(np.abs(m - m.conj().T))))
        worst_trace = max(worst_trace, abs(float(np.trace(m).real) - 1.0))
        worst_neg = max(worst_neg, max(0.0, -float(np.min(np.linalg.eigvalsh(m)))))
        assert 0.0 <= projected.probability <= 1.0 + 1e-12
    assert worst_herm < 1e-12 and worst_trace < 1e-12 and worst_neg < 1e-10
    return (f"projected matrices Hermitian ({worst_herm:.1e}), unit trace "
            f"({worst_trace:.1e}), PSD (worst negative {worst_neg:.1e})")


def _suite_bell_fast_path(rng: np.random.Generator) -> str:
    worst = 0.0
    for _ in range(200):
        l, lp = rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95)
        theta = rng.uniform(0, 2 * math.pi)
        p = rng.uniform(0, 1)
        stats = BOSON if rng.integers(2) else FERMION
        spec = WernerSpec(p, "1_minus", SpatialWave.from_l(l), SpatialWave.from_l(lp, theta),
                          stats)
        try:
            projected = project_werner(spec)
        except ProjectionUndefinedError:
            continue
        worst = max(worst, abs(bell_xstate(projected).bell - bell_horodecki(projected)))
    assert worst < 1e-9, f"X-state fast path departs from the general criterion by {worst:.3e}"
    return f"X-state CHSH vs unrestricted criterion (singlet target), worst |diff| = {worst:.2e}"


def _suite_phase_switch(rng: np.random.Generator) -> str:
    worst = 0.0
    for _ in range(60):
        l = rng.uniform(_SQRT_HALF, 1.0)
        lprime = math.sqrt(1 - l * l)
        theta = rng.uniform(0, 2 * math.pi)
        p = rng.uniform(0, 1)
        target = "1_minus" if rng.integers(2) else "1_plus"
        try:
            c_f = analyze(project_werner(
                spec_from_l(p, target, l, lprime, FERMION, theta))).concurrence
            c_b = analyze(project_werner(
                spec_from_l(p, target, l, lprime, BOSON, theta + math.pi))).concurrence
        except (ProjectionUndefinedError, ZeroTraceError):
            continue  # degenerate point: no detectable state on one side
        worst = max(worst, abs(c_f - c_b))
    assert worst < 1e-10, f"phase switch identity broken by {worst:.3e}"
    return f"(fermion, theta) vs (boson, theta+pi) concurrence, worst |diff| = {worst:.2e}"


def _bisect_violation_boundary(statistics, target, theta, l, lprime) -> float:
    lo, hi = 0.0, 1.0
    assert _pipeline_bell(statistics, target, theta, l, lprime, lo) > 2.0
    assert _pipeline_bell(statistics, target, theta, l, lprime, hi) < 2.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if _pipeline_bell(statistics, target, theta, l, lprime, mid) > 2.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _suite_violation_thresholds(rng: np.random.Generator) -> str:
    # distinguishable pair: violation up to p = 1 - 1/sqrt(2)
    p_dist = _bisect_violation_boundary(FERMION, "1_minus", 0.0, 1.0, 0.0)
    assert abs(p_dist - 0.292) <= 2e-3, f"distinguishable boundary {p_dist:.5f}"
    # triplet target at full indistinguishability: boundary 4/11
    p_plus = _bisect_violation_boundary(FERMION, "1_plus", math.pi, _SQRT_HALF, _SQRT_HALF)
    assert abs(p_plus - 0.363) <= 2e-3, f"triplet-target boundary {p_plus:.5f}"
    # all-noise violation threshold on the singlet target
    result = find_threshold(SweepConfig(statistics=FERMION, target="1_minus"))
    assert result.found and 0.75 <= result.indist <= 0.77, \
        f"all-noise threshold {result.indist!r}"
    return (f"violation boundaries: distinguishable p={p_dist:.4f}, triplet p={p_plus:.4f}, "
            f"all-noise indistinguishability threshold {result.indist:.4f}")


_VERIFY_SUITES: tuple[tuple[str, Callable[[np.random.Generator], str]], ...] = (
    ("amplitude-cross-validation", _suite_amplitude_cross_validation),
    ("bell-state-norms", _suite_bell_state_norms),
    ("werner-global-trace", _suite_global_trace),
    ("closed-forms-vs-pipeline", _suite_closed_forms),
    ("channel-vs-direct", _suite_channel_equivalence),
    ("projection-properties", _suite_projection_properties),
    ("bell-fast-path", _suite_bell_fast_path),
    ("statistics-phase-switch", _suite_phase_switch),
    ("violation-thresholds", _suite_violation_thresholds),
)


def run_verify(seed: int = 20250808) -> VerifyReport:
    """Run every numerical identity suite on fresh seeded randomness."""
    results = []
    for name, suite in _VERIFY_SUITES:
        rng = np.random.default_rng(seed)
        try:
            detail = suite(rng)
            results.append(SuiteResult(name, True, detail))
        except Exception as exc:  # report, never crash the verifier
            results.append(SuiteResult(name, False, f"{type(exc).__name__}: {exc}"))
    return VerifyReport(tuple(results))
