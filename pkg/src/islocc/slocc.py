"""Projection onto separated operational regions, one detection per region.

Post-selecting exactly one particle in each of N separated modes maps an
N-particle state of identical particles onto a 2^N-dimensional register of
addressable pseudospins.  The projected density matrix is normalized to
unit trace; the detection probability is the projected weight divided by
the global trace of the input ensemble.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from .amplitudes import ElementaryKet
from .ensembles import MixedState, mixed_trace, state_overlap
from .states import DOWN, UP, ModeBasis, SingleParticleState, Spin

__all__ = [
    "ProjectionUndefinedError",
    "ZeroTraceError",
    "ProjectedDensityMatrix",
    "spin_configurations",
    "computational_kets",
    "project",
    "slocc_probability",
]

#: Fixed computational ordering of the two spin values.
SPIN_ORDER = (UP, DOWN)


class ProjectionUndefinedError(ValueError):
    """The state has (numerically) zero weight in the detection subspace."""


class ZeroTraceError(ValueError):
    """The input ensemble has zero global trace (an empty physical state)."""


def spin_configurations(n: int) -> list[tuple[Spin, ...]]:
    """Spin tuples in fixed computational order; for n=2 this is
    (up,up), (up,down), (down,up), (down,down)."""
    return list(product(SPIN_ORDER, repeat=n))


def _check_regions(basis: ModeBasis, regions: Sequence[str]) -> tuple[str, ...]:
    regions = tuple(regions)
    if len(set(regions)) != len(regions):
        raise ValueError(f"region labels must be distinct, got {regions!r}")
    for label in regions:
        if label not in basis:
            raise ValueError(f"region {label!r} is not a mode of the basis {basis.labels!r}")
    return regions


def computational_kets(basis: ModeBasis, regions: Sequence[str],
                       statistics) -> list[ElementaryKet]:
    """Elementary kets |R_1 s_1, ..., R_N s_N> spanning the detection subspace."""
    regions = _check_regions(basis, regions)
    kets = []
    for spins in spin_configurations(len(regions)):
        particles = tuple(SingleParticleState.localized(basis, mode, spin)
                          for mode, spin in zip(regions, spins))
        kets.append(ElementaryKet(particles, statistics))
    return kets


@dataclass(frozen=True)
class ProjectedDensityMatrix:
    """Unit-trace density matrix on the post-selected (region, spin) register.

    ``matrix`` is 2^N x 2^N over the computational basis ordered as in
    :func:`spin_configurations`; ``probability`` is the chance of the
    post-selection succeeding on the globally normalized input.
    """

    matrix: np.ndarray
    probability: float
    regions: tuple[str, ...]

    _HERM_ATOL = 1e-12
    _EIG_ATOL = 1e-10

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "regions", tuple(self.regions))
        dim = 2 ** len(self.regions)
        if m.shape != (dim, dim):
            raise ValueError(f"matrix shape {m.shape} does not match {len(self.regions)} regions")
        if np.max(np.abs(m - m.conj().T)) > self._HERM_ATOL:
            raise ValueError("projected matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > self._HERM_ATOL:
            raise ValueError(f"projected matrix trace {np.trace(m)!r} != 1")
        if np.min(np.linalg.eigvalsh(m)) < -self._EIG_ATOL:
            raise ValueError("projected matrix has a significantly negative eigenvalue")
        if not -1e-12 <= self.probability <= 1 + 1e-12:
            raise ValueError(f"probability {self.probability!r} outside [0, 1]")

    @property
    def n(self) -> int:
        return len(self.regions)

    def eigenvalues(self) -> np.ndarray:
        """Ascending eigenvalues with float-level negatives clamped to zero."""
        vals = np.linalg.eigvalsh(self.matrix)
        return np.clip(vals, 0.0, None)


def _projected_weight(m: MixedState, kets: list[ElementaryKet]) -> tuple[np.ndarray, float]:
    """Raw projected block and its trace (the unnormalized detection weight)."""
    dim = len(kets)
    raw = np.zeros((dim, dim), dtype=complex)
    for w, s in m.ensemble:
        if w == 0:
            continue
        v = np.array([state_overlap(k, s) for k in kets], dtype=complex)
        raw += w * np.outer(v, v.conj())
    return raw, float(np.trace(raw).real)


def project(m: MixedState, regions: Sequence[str]) -> ProjectedDensityMatrix:
    """Post-select one particle per region and return the normalized register state.

    Raises :class:`ProjectionUndefinedError` when the detection weight
    vanishes (the post-selected state does not exist), and ``ValueError``
    when the global trace of the input is zero.
    """
    regions = _check_regions(m.basis, regions)
    if len(regions) != m.n:
        raise ValueError(f"{m.n} particles need {m.n} regions, got {len(regions)}")
    global_trace = mixed_trace(m)
    if global_trace <= 1e-12:
        raise ZeroTraceError("state has zero global trace; nothing to project")
    kets = computational_kets(m.basis, regions, m.statistics)
    raw, weight = _projected_weight(m, kets)
    if weight <= 1e-14 * max(global_trace, 1.0):
        raise ProjectionUndefinedError(
            "detection probability vanishes for regions " + repr(regions))
    matrix = raw / weight
    matrix = (matrix + matrix.conj().T) / 2.0
    return ProjectedDensityMatrix(matrix, weight / global_trace, regions)


def slocc_probability(m: MixedState, regions: Sequence[str]) -> float:
    """Probability of detecting one particle in each region (post-selection rate)."""
    regions = _check_regions(m.basis, regions)
    if len(regions) != m.n:
        raise ValueError(f"{m.n} particles need {m.n} regions, got {len(regions)}")
    global_trace = mixed_trace(m)
    if global_trace <= 1e-12:
        raise ZeroTraceError("state has zero global trace")
    kets = computational_kets(m.basis, regions, m.statistics)
    _, weight = _projected_weight(m, kets)
    return weight / global_trace
