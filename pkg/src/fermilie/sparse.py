"""Sparse complex operators in canonical coordinate form.

Every operator in the package is a :class:`SparseOperator`: a square matrix of
power-of-two dimension stored as a sorted tuple of ``(row, col, value)``
entries with no explicit zeros.  The canonical form makes structural equality
(`==`) a meaningful test: two operators are equal iff they hold exactly the
same entries.

Arithmetic is exact for integer-valued matrices, which is what the test suite
relies on for the anticommutation relations and the commutator ladder.  After
every arithmetic operation a normalization pass drops entries whose magnitude
falls below ``RELATIVE_DROP_TOL`` times the largest magnitude in the result,
so roundoff dust from cancellations never pollutes the canonical form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import CapacityError, DimensionMismatchError

#: Entries smaller than this fraction of the largest magnitude are dropped.
RELATIVE_DROP_TOL = 1e-14

#: Largest dimension ``kron`` may produce by default.
DEFAULT_KRON_CAP = 2**24

#: Largest dimension that may be converted to a dense array by default.
DEFAULT_DENSE_CAP = 2048

Entry = tuple[int, int, complex]


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def _canonical_entries(items: Iterable[Entry]) -> tuple[Entry, ...]:
    """Merge duplicates, drop (near-)zeros, sort row-major."""
    acc: dict[tuple[int, int], complex] = {}
    for row, col, value in items:
        key = (row, col)
        acc[key] = acc.get(key, 0j) + complex(value)
    if not acc:
        return ()
    vmax = max(abs(v) for v in acc.values())
    if vmax == 0.0:
        return ()
    cut = RELATIVE_DROP_TOL * vmax
    kept = sorted((rc, v) for rc, v in acc.items() if abs(v) >= cut)
    return tuple((r, c, v) for (r, c), v in kept)


@dataclass(frozen=True)
class SparseOperator:
    """Complex square matrix in canonical sparse coordinate form.

    Use :meth:`from_entries` or :meth:`from_dense` to construct; the raw
    constructor expects entries that are already canonical and only validates
    them.
    """

    dim: int
    entries: tuple[Entry, ...]

    def __post_init__(self) -> None:
        if not _is_power_of_two(self.dim):
            raise ValueError(f"dimension must be a power of two, got {self.dim}")
        prev = (-1, -1)
        for row, col, value in self.entries:
            if not (0 <= row < self.dim and 0 <= col < self.dim):
                raise ValueError(f"entry ({row}, {col}) outside a {self.dim}x{self.dim} matrix")
            if (row, col) <= prev:
                raise ValueError("entries must be strictly sorted row-major")
            if value == 0:
                raise ValueError("canonical form must not contain zero entries")
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise ValueError(f"non-finite value at ({row}, {col})")
            prev = (row, col)

    # -- construction ------------------------------------------------------

    @classmethod
    def from_entries(
        cls,
        dim: int,
        entries: Mapping[tuple[int, int], complex] | Iterable[Entry],
    ) -> "SparseOperator":
        """Build an operator from a ``{(row, col): value}`` mapping or entry triples."""
        if isinstance(entries, Mapping):
            items: Iterable[Entry] = ((r, c, v) for (r, c), v in entries.items())
        else:
            items = entries
        return cls(dim, _canonical_entries(items))

    @classmethod
    def from_dense(cls, array: np.ndarray) -> "SparseOperator":
        arr = np.asarray(array)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {arr.shape}")
        items = (
            (int(r), int(c), complex(arr[r, c]))
            for r, c in zip(*np.nonzero(arr))
        )
        return cls(arr.shape[0], _canonical_entries(items))

    # -- inspection --------------------------------------------------------

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def to_dict(self) -> dict[tuple[int, int], complex]:
        return {(r, c): v for r, c, v in self.entries}

    def to_dense(self, cap: int = DEFAULT_DENSE_CAP) -> np.ndarray:
        if self.dim > cap:
            raise CapacityError(f"dense conversion of dimension {self.dim} exceeds cap {cap}")
        out = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for r, c, v in self.entries:
            out[r, c] = v
        return out

    def max_abs(self) -> float:
        """Largest entry magnitude (0.0 for the zero operator)."""
        return max((abs(v) for _, _, v in self.entries), default=0.0)

    def norm_fro(self) -> float:
        return math.sqrt(sum(abs(v) ** 2 for _, _, v in self.entries))

    def trace(self) -> complex:
        return sum(v for r, c, v in self.entries if r == c)

    def hermiticity_defect(self) -> float:
        """Largest entrywise magnitude of ``A - A^dagger``."""
        diff = add(self, scale(adjoint(self), -1))
        return diff.max_abs()

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return self.hermiticity_defect() <= tol * max(1.0, self.max_abs())

    def apply(self, vec: np.ndarray) -> np.ndarray:
        """Matrix-vector product as a dense complex vector."""
        v = np.asarray(vec, dtype=np.complex128)
        if v.shape != (self.dim,):
            raise DimensionMismatchError(
                f"vector of shape {v.shape} does not match operator dimension {self.dim}"
            )
        out = np.zeros(self.dim, dtype=np.complex128)
        for r, c, val in self.entries:
            out[r] += val * v[c]
        return out

    # -- operator sugar ------------------------------------------------------

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        return add(self, other)

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        return add(self, scale(other, -1))

    def __neg__(self) -> "SparseOperator":
        return scale(self, -1)

    def __mul__(self, s: complex) -> "SparseOperator":
        return scale(self, s)

    __rmul__ = __mul__

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        return matmul(self, other)

    def __iter__(self) -> Iterator[Entry]:
        return iter(self.entries)

    def __repr__(self) -> str:
        return f"SparseOperator(dim={self.dim}, nnz={self.nnz})"


def identity(dim: int) -> SparseOperator:
    return SparseOperator(dim, tuple((i, i, 1 + 0j) for i in range(dim)))


def zeros(dim: int) -> SparseOperator:
    return SparseOperator(dim, ())


def _require_same_dim(a: SparseOperator, b: SparseOperator) -> None:
    if a.dim != b.dim:
        raise DimensionMismatchError(f"dimension mismatch: {a.dim} vs {b.dim}")


def kron(a: SparseOperator, b: SparseOperator, cap: int = DEFAULT_KRON_CAP) -> SparseOperator:
    """Kronecker product ``a (x) b``; the left factor varies slowest."""
    dim = a.dim * b.dim
    if dim > cap:
        raise CapacityError(f"kron result dimension {dim} exceeds cap {cap}")
    items = (
        (ra * b.dim + rb, ca * b.dim + cb, va * vb)
        for ra, ca, va in a.entries
        for rb, cb, vb in b.entries
    )
    return SparseOperator(dim, _canonical_entries(items))


def matmul(a: SparseOperator, b: SparseOperator) -> SparseOperator:
    _require_same_dim(a, b)
    rows_of_b: dict[int, list[tuple[int, complex]]] = {}
    for r, c, v in b.entries:
        rows_of_b.setdefault(r, []).append((c, v))
    acc: dict[tuple[int, int], complex] = {}
    for ra, ca, va in a.entries:
        for cb, vb in rows_of_b.get(ca, ()):
            key = (ra, cb)
            acc[key] = acc.get(key, 0j) + va * vb
    return SparseOperator.from_entries(a.dim, acc)


def add(a: SparseOperator, b: SparseOperator) -> SparseOperator:
    _require_same_dim(a, b)
    items = list(a.entries)
    items.extend(b.entries)
    return SparseOperator(a.dim, _canonical_entries(items))


def scale(a: SparseOperator, s: complex) -> SparseOperator:
    s = complex(s)
    if s == 0:
        return zeros(a.dim)
    return SparseOperator(a.dim, _canonical_entries((r, c, s * v) for r, c, v in a.entries))


def adjoint(a: SparseOperator) -> SparseOperator:
    return SparseOperator(a.dim, _canonical_entries((c, r, v.conjugate()) for r, c, v in a.entries))


def commutator(a: SparseOperator, b: SparseOperator) -> SparseOperator:
    """``a b - b a``."""
    return add(matmul(a, b), scale(matmul(b, a), -1))


def anticommutator(a: SparseOperator, b: SparseOperator) -> SparseOperator:
    """``a b + b a``."""
    return add(matmul(a, b), matmul(b, a))


def frobenius_inner(a: SparseOperator, b: SparseOperator) -> complex:
    """``trace(a^dagger b)`` by sparse entry matching."""
    _require_same_dim(a, b)
    if a.nnz > b.nnz:
        return frobenius_inner(b, a).conjugate()
    lookup = b.to_dict()
    total = 0j
    for r, c, v in a.entries:
        bv = lookup.get((r, c))
        if bv is not None:
            total += v.conjugate() * bv
    return total
