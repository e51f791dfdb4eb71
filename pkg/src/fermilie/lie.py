"""Lie algebra closure, structure constants, and Killing-form classification.

The closure works over the *real* span: real and imaginary parts of a matrix
count as independent directions, the inner product is ``Re trace(A^dagger B)``,
and Gram-Schmidt coefficients are real.  That matches the classification
target (real Lie algebras such as sl(2, R)), and it is the only span under
which a set like {raising, lowering, their commutator} closes.

``close`` runs a breadth-first scan: seed with the orthonormalized generators,
then for each element in append order form its commutator with every earlier
element, project out the current span, and append the normalized residual
whenever its Frobenius norm exceeds ``tol`` times the pre-projection norm.
The scan is sequential and deterministic, so a fixed generator list always
produces the same basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ClosureError, DimensionMismatchError
from .fermi import annihilation, creation, hamiltonian_k, number_operator
from .sparse import (
    SparseOperator,
    add,
    commutator,
    frobenius_inner,
    identity,
    matmul,
    scale,
)

#: Residual threshold (relative to pre-projection norm) for a new direction.
DEFAULT_CLOSURE_TOL = 1e-8

#: Generators with Frobenius norm below this are rejected outright.
GENERATOR_NORM_FLOOR = 1e-12

#: Closure aborts once the basis would grow past this many elements.
DEFAULT_MAX_DIM = 64

#: Relative threshold for treating a Killing eigenvalue or singular value as zero.
KILLING_ZERO_TOL = 1e-8

#: Structure constants must reconstruct each bracket to this relative residual.
RECONSTRUCTION_TOL = 1e-8


def _real_inner(a: SparseOperator, b: SparseOperator) -> float:
    return frobenius_inner(a, b).real


@dataclass(frozen=True)
class LieBasis:
    """Frobenius-orthonormal basis of a commutator-closed real span."""

    dim_space: int
    elements: tuple[SparseOperator, ...]
    provenance: tuple[str, ...]

    @property
    def dimension(self) -> int:
        return len(self.elements)

    def project_residual(self, x: SparseOperator) -> float:
        """Relative Frobenius residual of ``x`` after projection onto the span."""
        norm = x.norm_fro()
        if norm == 0.0:
            return 0.0
        residual = x
        for e in self.elements:
            residual = add(residual, scale(e, -_real_inner(e, residual)))
        return residual.norm_fro() / norm


@dataclass(frozen=True)
class LieReport:
    """Classification summary of a closed basis."""

    dimension: int
    killing: np.ndarray
    killing_rank: int
    signature: tuple[int, int, int]  # (positive, negative, zero)
    semisimple: bool
    center_dim: int
    tag: str  # "sl2R" | "su2" | "abelian" | "other"
    residuals: dict[str, float]

    def to_json_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "semisimple": self.semisimple,
            "signature": list(self.signature),
            "center_dim": self.center_dim,
            "tag": self.tag,
            "residuals": dict(self.residuals),
        }


def _orthonormal_residual(
    x: SparseOperator, elements: Sequence[SparseOperator]
) -> tuple[SparseOperator, float]:
    """Project ``x`` out of the span of ``elements`` (two passes), normalized."""
    residual = x
    for _ in range(2):
        for e in elements:
            residual = add(residual, scale(e, -_real_inner(e, residual)))
    norm = residual.norm_fro()
    if norm == 0.0:
        return residual, 0.0
    return scale(residual, 1.0 / norm), norm


def close(
    generators: Iterable[SparseOperator],
    tol: float = DEFAULT_CLOSURE_TOL,
    max_dim: int = DEFAULT_MAX_DIM,
) -> LieBasis:
    """Generate the smallest commutator-closed real span containing ``generators``."""
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    dims = {g.dim for g in gens}
    if len(dims) != 1:
        raise DimensionMismatchError(f"generators have mixed dimensions {sorted(dims)}")
    dim_space = gens[0].dim

    elements: list[SparseOperator] = []
    provenance: list[str] = []

    for idx, g in enumerate(gens):
        pre_norm = g.norm_fro()
        if pre_norm < GENERATOR_NORM_FLOOR:
            raise ValueError(f"generator {idx} has Frobenius norm {pre_norm:.3e}, below the floor")
        unit, res_norm = _orthonormal_residual(g, elements)
        if res_norm > tol * pre_norm:
            elements.append(unit)
            provenance.append("generator")

    cursor = 0
    while cursor < len(elements):
        new_index = cursor
        cursor += 1
        snapshot = len(elements)
        for existing in range(snapshot):
            if existing == new_index:
                continue
            bracket = commutator(elements[existing], elements[new_index])
            pre_norm = bracket.norm_fro()
            if pre_norm == 0.0:
                continue
            unit, res_norm = _orthonormal_residual(bracket, elements)
            if res_norm > tol * pre_norm:
                elements.append(unit)
                provenance.append(f"commutator({existing},{new_index})")
                if len(elements) > max_dim:
                    raise ClosureError(
                        f"closure exceeded max_dim={max_dim}; the set may not close "
                        "or the tolerance is mis-set"
                    )
    return LieBasis(dim_space, tuple(elements), tuple(provenance))


def close_kn(
    n: int, tol: float = DEFAULT_CLOSURE_TOL, max_dim: int = DEFAULT_MAX_DIM
) -> LieBasis:
    """Closure of the Hamiltonian and the number operator for ``n`` modes.

    Closes to dimension 4 for every ``n``: the Hamiltonian, the number
    operator, their commutator, and the corner projector difference.  The
    center is spanned by ``N - (n/2) D`` where ``D`` is that projector
    difference; this equals the identity only for n <= 2.
    """
    return close([hamiltonian_k(n), number_operator(n)], tol=tol, max_dim=max_dim)


def _structure_constants_checked(basis: LieBasis) -> tuple[np.ndarray, float]:
    d = basis.dimension
    f = np.zeros((d, d, d))
    max_residual = 0.0
    for i in range(d):
        for j in range(i + 1, d):
            bracket = commutator(basis.elements[i], basis.elements[j])
            coeffs = np.array([_real_inner(e, bracket) for e in basis.elements])
            recon = bracket
            for k in range(d):
                if coeffs[k] != 0.0:
                    recon = add(recon, scale(basis.elements[k], -coeffs[k]))
            residual = recon.norm_fro() / max(1.0, bracket.norm_fro())
            max_residual = max(max_residual, residual)
            f[i, j, :] = coeffs
            f[j, i, :] = -coeffs
    if max_residual > RECONSTRUCTION_TOL:
        raise ClosureError(
            f"basis is not closed under the commutator (residual {max_residual:.3e})"
        )
    return f, max_residual


def structure_constants(basis: LieBasis) -> np.ndarray:
    """Expansion coefficients ``f[i, j, k]`` of ``[e_i, e_j]`` over the basis."""
    f, _ = _structure_constants_checked(basis)
    return f


def _jacobi_residual(f: np.ndarray) -> float:
    if not f.size:
        return 0.0
    # [e_i,[e_j,e_k]] expands to f[j,k,m] f[i,m,l]; the cyclic sum vanishes.
    cyc = (
        np.einsum("jkm,iml->ijkl", f, f)
        + np.einsum("kim,jml->ijkl", f, f)
        + np.einsum("ijm,kml->ijkl", f, f)
    )
    return float(np.abs(cyc).max())


def killing_classify(basis: LieBasis) -> LieReport:
    """Killing form, signature, center, and isomorphism tag for a closed basis."""
    f, closure_residual = _structure_constants_checked(basis)
    d = basis.dimension
    killing = np.einsum("ikl,jlk->ij", f, f)
    eigenvalues = np.linalg.eigvalsh(killing) if d else np.zeros(0)
    vmax = float(np.abs(eigenvalues).max()) if d else 0.0
    cut = KILLING_ZERO_TOL * vmax
    n_plus = int(np.count_nonzero(eigenvalues > cut))
    n_minus = int(np.count_nonzero(eigenvalues < -cut))
    n_zero = d - n_plus - n_minus
    killing_rank = n_plus + n_minus
    semisimple = n_zero == 0

    # Center: null space of the stacked adjoint action  x_i f[i, j, k] = 0.
    if d:
        stacked = f.reshape(d, d * d).T
        singular = np.linalg.svd(stacked, compute_uv=False)
        smax = float(singular.max()) if singular.size else 0.0
        if smax == 0.0:
            center_dim = d
        else:
            center_dim = d - int(np.count_nonzero(singular > KILLING_ZERO_TOL * smax))
    else:
        center_dim = 0

    max_f = float(np.abs(f).max()) if f.size else 0.0
    if max_f <= 1e-10:
        tag = "abelian"
    elif d == 3 and (n_plus, n_minus, n_zero) == (2, 1, 0):
        tag = "sl2R"
    elif d == 3 and (n_plus, n_minus, n_zero) == (0, 3, 0):
        tag = "su2"
    else:
        tag = "other"

    return LieReport(
        dimension=d,
        killing=killing,
        killing_rank=killing_rank,
        signature=(n_plus, n_minus, n_zero),
        semisimple=semisimple,
        center_dim=center_dim,
        tag=tag,
        residuals={"closure": closure_residual, "jacobi": _jacobi_residual(f)},
    )


# -- commutator ladder identities ---------------------------------------------


def _max_abs_diff(a: SparseOperator, b: SparseOperator) -> float:
    return add(a, scale(b, -1)).max_abs()


def verify_identities(n: int) -> dict:
    """Residuals of the commutator ladder between the Hamiltonian and number operator.

    Every identity is evaluated by direct sparse arithmetic; for the integer
    matrices involved the residuals are exactly zero.  Includes the printed
    low-order special cases for n = 1, 2, 3.
    """
    k = hamiltonian_k(n)
    num = number_operator(n)
    # Corner closed forms; the operator-chain constructions are checked
    # against these elsewhere.
    raise_op = SparseOperator.from_entries(1 << n, {(0, (1 << n) - 1): 1})
    lower_op = SparseOperator.from_entries(1 << n, {((1 << n) - 1, 0): 1})

    kn = commutator(k, num)
    kkn = commutator(k, kn)
    residuals: dict[str, float] = {}
    residuals["[K,N] = n*(lower - raise)"] = _max_abs_diff(
        kn, scale(add(lower_op, scale(raise_op, -1)), n)
    )
    residuals["[K,[K,N]] = 2n*[raise,lower]"] = _max_abs_diff(
        kkn, scale(commutator(raise_op, lower_op), 2 * n)
    )
    residuals["[N,[K,N]] = -n^2*K"] = _max_abs_diff(
        commutator(num, kn), scale(k, -(n**2))
    )
    residuals["[K,[K,[K,N]]] = 4*[K,N]"] = _max_abs_diff(
        commutator(k, kkn), scale(kn, 4)
    )
    residuals["[N,[K,[K,N]]] = 0"] = commutator(num, kkn).max_abs()
    residuals["[[K,N],[K,[K,N]]] = 4n^2*K"] = _max_abs_diff(
        commutator(kn, kkn), scale(k, 4 * n**2)
    )

    if n == 1:
        c_dag = creation(1, 1)
        c = annihilation(1, 1)
        i2 = identity(2)
        residuals["[K,N] = c - c+"] = _max_abs_diff(kn, add(c, scale(c_dag, -1)))
        residuals["[K,[K,N]] = 4N - 2I"] = _max_abs_diff(
            kkn, add(scale(num, 4), scale(i2, -2))
        )
        residuals["[N,[K,N]] = -K"] = _max_abs_diff(commutator(num, kn), scale(k, -1))
    elif n == 2:
        lowering = matmul(annihilation(2, 1), annihilation(2, 2))
        raising = matmul(creation(2, 2), creation(2, 1))
        i4 = identity(4)
        residuals["[K,N] = 2*(c1c2 - c2+c1+)"] = _max_abs_diff(
            kn, scale(add(lowering, scale(raising, -1)), 2)
        )
        residuals["[K,[K,N]] = 4*(N - I)"] = _max_abs_diff(
            kkn, scale(add(num, scale(i4, -1)), 4)
        )
        residuals["[N,[K,N]] = -4K"] = _max_abs_diff(commutator(num, kn), scale(k, -4))
        residuals["[[K,N],[K,[K,N]]] = 16K"] = _max_abs_diff(
            commutator(kn, kkn), scale(k, 16)
        )
    elif n == 3:
        lowering = matmul(matmul(annihilation(3, 1), annihilation(3, 2)), annihilation(3, 3))
        raising = matmul(matmul(creation(3, 3), creation(3, 2)), creation(3, 1))
        residuals["[K,N] = 3*(c1c2c3 - c3+c2+c1+)"] = _max_abs_diff(
            kn, scale(add(lowering, scale(raising, -1)), 3)
        )
        residuals["[K,[K,N]] = 6*[c3+c2+c1+, c1c2c3]"] = _max_abs_diff(
            kkn, scale(commutator(raising, lowering), 6)
        )
        residuals["[N,[K,N]] = -9K"] = _max_abs_diff(commutator(num, kn), scale(k, -9))
        residuals["[[K,N],[K,[K,N]]] = 36K"] = _max_abs_diff(
            commutator(kn, kkn), scale(k, 36)
        )

    max_residual = max(residuals.values())
    return {"n": n, "residuals": residuals, "max_residual": max_residual}
