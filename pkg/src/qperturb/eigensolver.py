"""Full spectral decomposition of Hermitian matrices via cyclic Jacobi rotations.

No external eigensolver is used: sweeps of 2x2 complex Jacobi rotations
annihilate off-diagonal entries one at a time until the off-diagonal
Frobenius norm falls below ``OFFDIAG_RTOL * ||A||_F``.  Eigenvalues are
returned ascending, eigenvector columns permuted in lockstep, and each
column's phase is fixed so results are deterministic and comparable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NoConvergence, ZeroVector
from .numkernel import HermitianMatrix

# Convergence threshold for the off-diagonal Frobenius norm, relative to ||A||_F.
OFFDIAG_RTOL = 1e-12
DEFAULT_MAX_SWEEPS = 100


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.

    ``eigenvectors[:, m]`` is the m-th eigenvector, phase-fixed so that its
    largest-magnitude entry is real and strictly positive.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        vals = np.array(self.eigenvalues, dtype=np.float64)
        vecs = np.array(self.eigenvectors, dtype=np.complex128)
        if vals.ndim != 1 or vecs.shape != (vals.shape[0], vals.shape[0]):
            raise DimensionMismatch(
                f"inconsistent decomposition shapes {vals.shape} / {vecs.shape}"
            )
        vals.setflags(write=False)
        vecs.setflags(write=False)
        object.__setattr__(self, "eigenvalues", vals)
        object.__setattr__(self, "eigenvectors", vecs)

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def eigenvector(self, m: int) -> np.ndarray:
        return self.eigenvectors[:, m]

    def synthesize(self, coefficients) -> np.ndarray:
        """Map eigenbasis coordinates to the computational basis: sum_j b_j phi_j."""
        b = np.asarray(coefficients, dtype=np.complex128)
        if b.shape != (self.dim,):
            raise DimensionMismatch(f"expected {self.dim} coefficients, got {b.shape}")
        return self.eigenvectors @ b


def fix_phase(column) -> np.ndarray:
    """Multiply a vector by the unit scalar that makes its largest-magnitude
    entry real and strictly positive (magnitude ties broken by lowest index)."""
    v = np.array(column, dtype=np.complex128)
    mags = np.abs(v)
    k = int(np.argmax(mags))
    if mags[k] == 0.0:
        raise ZeroVector("cannot fix the phase of a zero vector")
    out = v * np.conj(v[k] / mags[k])
    out[k] = mags[k]  # exact: kill the pivot's roundoff imaginary part
    return out


def _offdiag_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def jacobi_eigendecompose(
    a: HermitianMatrix, max_sweeps: int = DEFAULT_MAX_SWEEPS
) -> SpectralDecomposition:
    """Diagonalize a Hermitian matrix by cyclic-by-row complex Jacobi rotations.

    Each rotation annihilates one off-diagonal entry A[p,q] with the unitary
    that diagonalizes the (p,q) 2x2 block; a full sweep visits the strict
    upper triangle in row order.  Raises :class:`NoConvergence` if the
    off-diagonal norm is still above ``OFFDIAG_RTOL * ||A||_F`` after
    ``max_sweeps`` sweeps.  Deterministic: identical input gives bit-identical
    output.
    """
    n = a.dim
    work = np.array(a.array, dtype=np.complex128)
    vecs = np.eye(n, dtype=np.complex128)
    tol = OFFDIAG_RTOL * float(np.linalg.norm(work))  # ||A||_F is rotation-invariant

    sweeps = 0
    while _offdiag_norm(work) > tol:
        if sweeps >= max_sweeps:
            raise NoConvergence(sweeps, _offdiag_norm(work))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = work[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                phase = apq / r
                tau = (work[q, q].real - work[p, p].real) / (2.0 * r)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                # Unitary on the (p,q) plane: [[c, s], [-s*conj(phase), c*conj(phase)]].
                col_p, col_q = work[:, p].copy(), work[:, q].copy()
                work[:, p] = c * col_p - s * np.conj(phase) * col_q
                work[:, q] = s * col_p + c * np.conj(phase) * col_q
                row_p, row_q = work[p, :].copy(), work[q, :].copy()
                work[p, :] = c * row_p - s * phase * row_q
                work[q, :] = s * row_p + c * phase * row_q
                # Exact post-conditions of the rotation.
                work[p, q] = 0.0
                work[q, p] = 0.0
                work[p, p] = work[p, p].real
                work[q, q] = work[q, q].real
                vec_p, vec_q = vecs[:, p].copy(), vecs[:, q].copy()
                vecs[:, p] = c * vec_p - s * np.conj(phase) * vec_q
                vecs[:, q] = s * vec_p + c * np.conj(phase) * vec_q
        sweeps += 1

    eigenvalues = np.real(np.diag(work)).copy()
    order = np.argsort(eigenvalues, kind="stable")
    vecs = vecs[:, order]
    for m in range(n):
        vecs[:, m] = fix_phase(vecs[:, m])
    return SpectralDecomposition(eigenvalues=eigenvalues[order], eigenvectors=vecs)
