"""Deterministic Hermitian eigendecomposition and the spectral matrix exponential.

The eigensolver is a thin contract layer over LAPACK's Hermitian driver
(``numpy.linalg.eigh``): eigenvalues come back ascending and, within any
degenerate cluster (eigenvalue gap below ``DEGENERACY_GAP``), the eigenvectors
are re-orthonormalized by modified Gram-Schmidt in index order.  For a fixed
input the output is bit-for-bit reproducible, which the reporting layer
depends on.
"""

from __future__ import annotations

import numpy as np

from .errors import CapacityError, NonHermitianError
from .sparse import SparseOperator

#: Largest matrix dimension the dense eigensolver accepts by default.
DEFAULT_EIGEN_CAP = 2048

#: Eigenvalues closer than this are treated as one degenerate cluster.
DEGENERACY_GAP = 1e-9

#: Hermiticity check tolerance, relative to max(1, largest entry magnitude).
HERMITICITY_TOL = 1e-12


def _gram_schmidt_cluster(block: np.ndarray) -> np.ndarray:
    """Stable (modified) Gram-Schmidt over the columns of ``block``, in order."""
    out = block.astype(np.complex128, copy=True)
    for j in range(out.shape[1]):
        for i in range(j):
            out[:, j] -= np.vdot(out[:, i], out[:, j]) * out[:, i]
        norm = np.linalg.norm(out[:, j])
        if norm > 0:
            out[:, j] /= norm
    return out


def hermitian_eigen(
    h: SparseOperator, cap: int = DEFAULT_EIGEN_CAP
) -> tuple[np.ndarray, np.ndarray]:
    """Full eigendecomposition of a Hermitian operator.

    Returns ``(w, v)`` with eigenvalues ``w`` ascending and eigenvectors in
    the columns of ``v``.  Raises :class:`CapacityError` when ``h.dim > cap``
    (use the analytic path or raise the cap) and :class:`NonHermitianError`
    when the input fails the Hermiticity check.
    """
    if h.dim > cap:
        raise CapacityError(
            f"operator dimension {h.dim} exceeds eigensolver cap {cap}"
        )
    dense = h.to_dense(cap)
    defect = h.hermiticity_defect()
    if defect > HERMITICITY_TOL * max(1.0, h.max_abs()):
        raise NonHermitianError(
            f"operator is not Hermitian (max |A - A^dagger| = {defect:.3e})"
        )
    w, v = np.linalg.eigh(dense)
    # Re-orthonormalize degenerate clusters so the output contract does not
    # depend on how LAPACK resolved them.
    start = 0
    for i in range(1, h.dim + 1):
        if i == h.dim or w[i] - w[i - 1] >= DEGENERACY_GAP:
            if i - start > 1:
                v[:, start:i] = _gram_schmidt_cluster(v[:, start:i])
            start = i
    return w, v


def expm_hermitian(
    h: SparseOperator, theta: float, cap: int = DEFAULT_EIGEN_CAP
) -> SparseOperator:
    """``exp(-i theta h)`` via the spectral decomposition of ``h``.

    The result is unitary to floating precision because the eigenbasis is
    orthonormal and the eigenvalue phases have unit magnitude.
    """
    w, v = hermitian_eigen(h, cap=cap)
    phases = np.exp(-1j * float(theta) * w)
    u = (v * phases) @ v.conj().T
    return SparseOperator.from_dense(u)
