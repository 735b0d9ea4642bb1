"""Deterministic test-Hamiltonian builders.

Two families: seeded dense random Hermitian matrices, and a truncated
particle-in-a-box (infinite well, natural units hbar = m = 1) whose
perturbing potential matrix is computed by composite Simpson quadrature.
The truncated n_levels x n_levels matrices are the exact system under
study; the verification oracle diagonalizes the same truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParseError
from .numkernel import HermitianMatrix

POTENTIAL_KINDS = ("const", "linear", "quadratic")
DEFAULT_QUADRATURE_POINTS = 2048


@dataclass(frozen=True)
class BoxModelSpec:
    """Infinite square well of width ``width`` truncated to ``n_levels`` states.

    ``potential`` is one of ``const`` (V(x) = strength), ``linear``
    (V(x) = strength * x) or ``quadratic`` (V(x) = strength * x^2).
    """

    n_levels: int
    width: float
    potential: str = "const"
    strength: float = 1.0

    def __post_init__(self):
        if self.n_levels < 1:
            raise ValueError("n_levels must be >= 1")
        if not (np.isfinite(self.width) and self.width > 0):
            raise ValueError("width must be positive and finite")
        if self.potential not in POTENTIAL_KINDS:
            raise ParseError(
                f"unknown potential {self.potential!r}; expected one of {POTENTIAL_KINDS}"
            )
        if not np.isfinite(self.strength):
            raise ValueError("potential strength must be finite")

    def potential_values(self, x: np.ndarray) -> np.ndarray:
        if self.potential == "const":
            return np.full_like(x, self.strength)
        if self.potential == "linear":
            return self.strength * x
        return self.strength * x * x


def random_hermitian(seed: int, n: int, scale: float = 1.0) -> HermitianMatrix:
    """Seeded dense Hermitian matrix with every entry magnitude <= scale.

    Generator: numpy ``default_rng`` (PCG64).  Diagonal entries are real
    uniform on [-scale, scale]; strict-upper entries have real and imaginary
    parts uniform on [-scale/sqrt(2), scale/sqrt(2)] and are mirrored by
    conjugation.  Identical arguments give bit-identical matrices on one
    platform.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if not (np.isfinite(scale) and scale > 0):
        raise ValueError("scale must be positive and finite")
    rng = np.random.default_rng(seed)
    diagonal = rng.uniform(-scale, scale, size=n)
    half = scale / math.sqrt(2.0)
    re = rng.uniform(-half, half, size=(n, n))
    im = rng.uniform(-half, half, size=(n, n))
    upper = np.triu(re + 1j * im, k=1)
    return HermitianMatrix(upper + upper.conj().T + np.diag(diagonal))


def box_hamiltonian(spec: BoxModelSpec) -> HermitianMatrix:
    """Diagonal well Hamiltonian with levels E_n = n^2 pi^2 / (2 L^2), n = 1..N."""
    n = np.arange(1, spec.n_levels + 1, dtype=np.float64)
    return HermitianMatrix(np.diag(n * n * math.pi**2 / (2.0 * spec.width**2)))


def _simpson_weights(intervals: int, step: float) -> np.ndarray:
    w = np.ones(intervals + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * (step / 3.0)


def box_potential_matrix(
    spec: BoxModelSpec, quadrature_points: int = DEFAULT_QUADRATURE_POINTS
) -> HermitianMatrix:
    """Perturbation matrix ``<m|V|n> = (2/L) int_0^L sin(m pi x/L) V(x) sin(n pi x/L) dx``.

    Composite Simpson quadrature on ``quadrature_points`` equal subintervals
    (must be even).  The integrands are smooth, so the default resolution is
    accurate well past 1e-10.
    """
    if quadrature_points < 2 or quadrature_points % 2 != 0:
        raise ValueError("quadrature_points must be an even integer >= 2")
    width = spec.width
    x = np.linspace(0.0, width, quadrature_points + 1)
    weights = _simpson_weights(quadrature_points, width / quadrature_points)
    sines = np.sin(np.outer(np.arange(1, spec.n_levels + 1), x) * (math.pi / width))
    weighted = sines * (weights * spec.potential_values(x))
    mat = (2.0 / width) * (weighted @ sines.T)
    return HermitianMatrix(mat)
