"""Exact-diagonalization oracle and convergence-order analysis.

A first-order method is correct when its error against the exactly
diagonalized perturbed matrix shrinks like x^2.  This module produces the
(x, level, perturbative, exact, error) records for a strength sweep and
fits the log-log error slope; slope >= ~2 (threshold 1.8 in the tests)
separates a correct first-order implementation from a broken one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .eigensolver import jacobi_eigendecompose
from .errors import DimensionMismatch, InsufficientData
from .models import random_hermitian
from .numkernel import HermitianMatrix, add_scaled
from .perturbation import StateVector, expected_energy, level_shifts, total_energy

# Two decades of strengths, inside the perturbative regime for O(1)-gap spectra.
DEFAULT_X_GRID = (1e-1, 3e-2, 1e-2, 3e-3, 1e-3)
# Errors at or below this are considered numerical noise, not signal.
ERROR_FLOOR = 1e-12
# Reject random instances whose smallest level gap is below this fraction of
# the spectral spread: keeps the x-grid inside the sorted-pairing regime.
MIN_GAP_FRACTION = 0.1

SUPERPOSITION_LEVEL = -1  # level tag for weighted-total records


@dataclass(frozen=True)
class SweepRecord:
    """One (strength, level) comparison of a perturbative value vs the oracle."""

    x: float
    level: int
    perturbative: float
    exact: float
    abs_error: float

    def __post_init__(self):
        if not (np.isfinite(self.x) and self.x > 0):
            raise ValueError(f"sweep strength must be positive and finite, got {self.x}")
        expected = abs(self.perturbative - self.exact)
        if abs(self.abs_error - expected) > 1e-15 * max(1.0, expected):
            raise ValueError("abs_error is inconsistent with |perturbative - exact|")

    @classmethod
    def measure(cls, x: float, level: int, perturbative: float, exact: float) -> "SweepRecord":
        return cls(x, level, perturbative, exact, abs(perturbative - exact))


@dataclass(frozen=True)
class OrderFit:
    """Least-squares slope of log10(error) against log10(strength).

    ``floored`` means fewer than two points rose above the noise floor, so
    the slope is not applicable (reported as NaN).
    """

    slope: float
    intercept: float
    n_points: int
    floored: bool


def exact_levels(
    hamiltonian: HermitianMatrix,
    perturbation: HermitianMatrix,
    x: float,
    max_sweeps: int = 100,
) -> np.ndarray:
    """Ascending eigenvalues of H + x H', diagonalized exactly at finite x."""
    return jacobi_eigendecompose(
        add_scaled(hamiltonian, perturbation, x), max_sweeps
    ).eigenvalues


def pair_and_errors(perturbative, exact, x: float) -> list[SweepRecord]:
    """Pair two spectra by ascending sorted order and record per-level errors."""
    p = np.sort(np.asarray(perturbative, dtype=np.float64))
    e = np.sort(np.asarray(exact, dtype=np.float64))
    if p.shape != e.shape:
        raise DimensionMismatch(f"level counts differ: {p.shape[0]} vs {e.shape[0]}")
    return [
        SweepRecord.measure(x, level, float(p[level]), float(e[level]))
        for level in range(p.shape[0])
    ]


def fit_order(xs, errors, floor: float = ERROR_FLOOR) -> OrderFit:
    """Fit log10(error) vs log10(x), ignoring points at or below the floor."""
    x_arr = np.asarray(xs, dtype=np.float64)
    e_arr = np.asarray(errors, dtype=np.float64)
    if x_arr.shape != e_arr.shape or x_arr.ndim != 1:
        raise DimensionMismatch("xs and errors must be 1-D and equally long")
    if np.any(x_arr <= 0) or not np.isfinite(x_arr).all():
        raise InsufficientData("all strengths must be positive and finite")
    if np.unique(x_arr).shape[0] < 2:
        raise InsufficientData("need at least 2 distinct strengths to fit a slope")
    keep = e_arr > floor
    if int(keep.sum()) < 2:
        return OrderFit(math.nan, math.nan, int(keep.sum()), True)
    slope, intercept = np.polyfit(np.log10(x_arr[keep]), np.log10(e_arr[keep]), 1)
    return OrderFit(float(slope), float(intercept), int(keep.sum()), False)


def convergence_order(records, floor: float = ERROR_FLOOR) -> OrderFit:
    """Order fit for one level's sweep records."""
    recs = list(records)
    return fit_order([r.x for r in recs], [r.abs_error for r in recs], floor)


def records_for_level(records, level: int) -> list[SweepRecord]:
    return [r for r in records if r.level == level]


def level_sweep(
    hamiltonian: HermitianMatrix,
    perturbation: HermitianMatrix,
    xs=DEFAULT_X_GRID,
    levels=None,
) -> list[SweepRecord]:
    """Sweep the strength grid comparing every E1_n = E_n + x E'_n to the oracle.

    ``levels`` restricts the emitted records (default: all levels).  Records
    are ordered by the given grid order, then by level.
    """
    decomp = jacobi_eigendecompose(hamiltonian)
    shifts = level_shifts(perturbation, decomp)
    selected = range(decomp.dim) if levels is None else list(levels)
    for level in selected:
        if not 0 <= level < decomp.dim:
            raise DimensionMismatch(f"level {level} out of range for dim {decomp.dim}")
    records: list[SweepRecord] = []
    for x in xs:
        perturbed = decomp.eigenvalues + float(x) * shifts
        exact = exact_levels(hamiltonian, perturbation, float(x))
        by_level = pair_and_errors(perturbed, exact, float(x))
        records.extend(by_level[level] for level in selected)
    return records


def superposition_sweep(
    hamiltonian: HermitianMatrix,
    perturbation: HermitianMatrix,
    state: StateVector,
    xs=DEFAULT_X_GRID,
) -> list[SweepRecord]:
    """Sweep comparing the weighted total E1 to the |b_n|^2-weighted exact spectrum.

    Records carry ``level = SUPERPOSITION_LEVEL`` (-1), marking the aggregate
    comparison rather than a single level.
    """
    decomp = jacobi_eigendecompose(hamiltonian)
    energy = expected_energy(state, decomp)
    shifts = level_shifts(perturbation, decomp)
    weights = np.abs(state.coefficients) ** 2
    records = []
    for x in xs:
        _, e1 = total_energy(energy, shifts, state, float(x))
        weighted_exact = float(weights @ exact_levels(hamiltonian, perturbation, float(x)))
        records.append(SweepRecord.measure(float(x), SUPERPOSITION_LEVEL, e1, weighted_exact))
    return records


def random_nondegenerate_pair(
    seed: int,
    dim: int,
    scale: float = 1.0,
    perturbation_scale: float | None = None,
    min_gap_fraction: float = MIN_GAP_FRACTION,
    max_attempts: int = 1000,
) -> tuple[HermitianMatrix, HermitianMatrix]:
    """Seeded (H, H') pair whose H has well-separated levels.

    Candidates are drawn from :func:`random_hermitian`; H is regenerated
    until its minimum level gap is at least ``min_gap_fraction`` of the
    spectral spread.  ``perturbation_scale`` (default: ``scale``) sets the
    entry magnitude of H'; choosing it small relative to the gaps keeps the
    whole default x-grid inside the perturbative regime.  Deterministic for
    a given seed.
    """
    rng = np.random.default_rng(seed)
    if perturbation_scale is None:
        perturbation_scale = scale
    perturbation = random_hermitian(int(rng.integers(2**63)), dim, perturbation_scale)
    for _ in range(max_attempts):
        hamiltonian = random_hermitian(int(rng.integers(2**63)), dim, scale)
        values = jacobi_eigendecompose(hamiltonian).eigenvalues
        spread = float(values[-1] - values[0])
        if dim == 1:
            return hamiltonian, perturbation
        if spread > 0 and float(np.diff(values).min()) >= min_gap_fraction * spread:
            return hamiltonian, perturbation
    raise RuntimeError(f"no nondegenerate instance found in {max_attempts} attempts")
