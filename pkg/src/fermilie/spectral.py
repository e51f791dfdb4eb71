"""Spectra and time evolution for the corner-coupling Hamiltonian.

The Hamiltonian couples only the fully-occupied basis state (index 0) and the
vacuum (index ``2**n - 1``), so its spectrum and propagator have closed forms:
eigenvalues +1 and -1 on the symmetric/antisymmetric corner combinations, 0 on
everything in between, and a propagator that is the identity outside a 2x2
rotation block on the corner pair.  The generic dense eigensolver provides the
independent numeric route against which the closed forms are cross-checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .eigen import DEFAULT_EIGEN_CAP, DEGENERACY_GAP, hermitian_eigen
from .errors import DimensionMismatchError
from .fermi import hamiltonian_k
from .sparse import SparseOperator, adjoint, matmul


@dataclass(frozen=True)
class SpectrumResult:
    """Eigenvalues with multiplicities plus an orthonormal eigenbasis.

    ``vectors[i]`` is a ``(dim, multiplicity_i)`` array whose columns span the
    eigenspace of ``eigenvalues[i]``; levels are sorted ascending.
    """

    eigenvalues: tuple[tuple[float, int], ...]
    vectors: tuple[np.ndarray, ...]
    provenance: str  # "analytic" or "numeric"

    @property
    def dim(self) -> int:
        return self.vectors[0].shape[0]

    def multiplicity_of(self, value: float, tol: float = 1e-9) -> int:
        for v, m in self.eigenvalues:
            if abs(v - value) <= tol:
                return m
        return 0

    def projector(self, value: float, tol: float = 1e-9) -> np.ndarray:
        """Orthogonal projector onto the eigenspace of ``value``."""
        for (v, _), block in zip(self.eigenvalues, self.vectors):
            if abs(v - value) <= tol:
                return block @ block.conj().T
        return np.zeros((self.dim, self.dim), dtype=np.complex128)


def k_spectrum_analytic(n: int) -> SpectrumResult:
    """Closed-form spectrum of the corner Hamiltonian for ``n >= 1`` modes.

    +1 on ``(e_0 + e_last)/sqrt(2)``, -1 on ``(e_0 - e_last)/sqrt(2)``, and 0
    with multiplicity ``2**n - 2`` on the remaining basis vectors (absent for
    n = 1, where the two corner combinations are the Hadamard pair).
    """
    if n < 1:
        raise ValueError(f"need at least one mode, got n={n}")
    dim = 1 << n
    inv = 1.0 / math.sqrt(2.0)
    plus = np.zeros((dim, 1), dtype=np.complex128)
    plus[0, 0] = inv
    plus[dim - 1, 0] = inv
    minus = np.zeros((dim, 1), dtype=np.complex128)
    minus[0, 0] = inv
    minus[dim - 1, 0] = -inv
    levels: list[tuple[float, int]] = [(-1.0, 1)]
    blocks: list[np.ndarray] = [minus]
    if dim > 2:
        middle = np.zeros((dim, dim - 2), dtype=np.complex128)
        for j in range(1, dim - 1):
            middle[j, j - 1] = 1.0
        levels.append((0.0, dim - 2))
        blocks.append(middle)
    levels.append((1.0, 1))
    blocks.append(plus)
    return SpectrumResult(tuple(levels), tuple(blocks), "analytic")


def numeric_spectrum(
    op: SparseOperator, cap: int = DEFAULT_EIGEN_CAP, gap: float = DEGENERACY_GAP
) -> SpectrumResult:
    """Spectrum of a Hermitian operator via the dense eigensolver, grouped by ``gap``."""
    w, v = hermitian_eigen(op, cap=cap)
    levels: list[tuple[float, int]] = []
    blocks: list[np.ndarray] = []
    start = 0
    for i in range(1, op.dim + 1):
        if i == op.dim or w[i] - w[i - 1] >= gap:
            cluster = w[start:i]
            levels.append((float(cluster.mean()), i - start))
            blocks.append(v[:, start:i].copy())
            start = i
    return SpectrumResult(tuple(levels), tuple(blocks), "numeric")


def cross_check_spectrum(n: int, cap: int = DEFAULT_EIGEN_CAP) -> dict:
    """Agreement report between the analytic and numeric spectra of the Hamiltonian.

    Compares the sorted eigenvalue multisets and, per eigenvalue, the
    Frobenius distance between analytic and numeric eigenprojectors.
    """
    analytic = k_spectrum_analytic(n)
    numeric = numeric_spectrum(hamiltonian_k(n), cap=cap)
    analytic_flat = np.array(
        [v for v, m in analytic.eigenvalues for _ in range(m)]
    )
    numeric_flat = np.array(
        [v for v, m in numeric.eigenvalues for _ in range(m)]
    )
    eigenvalue_error = float(np.abs(analytic_flat - numeric_flat).max())
    projector_errors = {}
    for value, mult in analytic.eigenvalues:
        p_analytic = analytic.projector(value)
        p_numeric = numeric.projector(value, tol=0.5)
        err = float(np.linalg.norm(p_analytic - p_numeric))
        if numeric.multiplicity_of(value, tol=0.5) != mult:
            err = math.inf
        projector_errors[f"{value:g}"] = err
    report = {
        "n": n,
        "eigenvalue_error": eigenvalue_error,
        "projector_errors": projector_errors,
        "pass": eigenvalue_error <= 1e-10
        and all(e <= 1e-8 for e in projector_errors.values()),
    }
    return report


def propagator(n: int, theta: float) -> SparseOperator:
    """Closed-form unitary ``exp(-i theta K)``.

    Identity everywhere except the 2x2 block on the corner index pair
    ``{0, 2**n - 1}``, which is ``[[cos t, -i sin t], [-i sin t, cos t]]``.
    """
    if n < 1:
        raise ValueError(f"need at least one mode, got n={n}")
    dim = 1 << n
    cos_t = math.cos(theta)
    sin_t = math.sin(theta)
    entries: dict[tuple[int, int], complex] = {
        (0, 0): cos_t,
        (0, dim - 1): -1j * sin_t,
        (dim - 1, 0): -1j * sin_t,
        (dim - 1, dim - 1): cos_t,
    }
    for i in range(1, dim - 1):
        entries[(i, i)] = 1.0
    return SparseOperator.from_entries(dim, entries)


def evolve_state(psi: np.ndarray, n: int, theta: float) -> np.ndarray:
    """Apply the propagator to a normalized state vector."""
    vec = np.asarray(psi, dtype=np.complex128)
    dim = 1 << n
    if vec.shape != (dim,):
        raise DimensionMismatchError(
            f"state of shape {vec.shape} does not match dimension {dim} for n={n}"
        )
    norm = np.linalg.norm(vec)
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"state is not normalized (|psi| = {norm:.12g})")
    out = propagator(n, theta).apply(vec)
    if abs(np.linalg.norm(out) - 1.0) > 1e-10:
        raise ArithmeticError("propagator failed to preserve the norm")
    return out


def _trace_moments(a: SparseOperator) -> tuple[complex, complex, complex]:
    a2 = matmul(a, a)
    a3 = matmul(a2, a)
    return a.trace(), a2.trace(), a3.trace()


def heisenberg_evolve(a: SparseOperator, n: int, theta: float) -> SparseOperator:
    """Heisenberg-picture evolution ``U^dagger a U`` under the closed-form propagator.

    Verifies that the first three trace moments of ``a`` are preserved (a
    cheap witness that the conjugation preserved the spectrum).
    """
    dim = 1 << n
    if a.dim != dim:
        raise DimensionMismatchError(
            f"operator dimension {a.dim} does not match dimension {dim} for n={n}"
        )
    u = propagator(n, theta)
    result = matmul(adjoint(u), matmul(a, u))
    for before, after in zip(_trace_moments(a), _trace_moments(result)):
        if abs(before - after) > 1e-9 * max(1.0, abs(before)):
            raise ArithmeticError(
                f"trace moment drifted under conjugation: {before} -> {after}"
            )
    return result
