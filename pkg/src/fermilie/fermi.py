"""Jordan-Wigner matrix representations of Fermi and Majorana operators.

Conventions
-----------
Mode ``k`` of an ``n``-mode register lives on the ``k``-th Kronecker factor,
leftmost first.  The creation operator is the chain

    c_k^dagger = s3 (x) ... (x) s3 (x) (sp/2) (x) I2 (x) ... (x) I2

with ``n`` factors total, Pauli ``s3`` on factors ``1..k-1`` and ``sp/2`` on
factor ``k``.  Locally ``(1, 0)`` is the occupied state and ``(0, 1)`` the
empty one, so the vacuum is the last basis vector, index ``2**n - 1``, and a
basis index encodes occupations as its binary digits with 0-bits marking
occupied modes.

All matrix entries are exactly representable (0, +-1, +-1/2j combinations),
so the canonical anticommutation relations hold with exact entrywise equality,
not just within a tolerance.

Spinful registers use ``2n`` factors: up-spin mode ``k`` sits at factor ``k``
and down-spin mode ``k`` at factor ``k + n``.
"""

from __future__ import annotations

import re

from .errors import CapacityError, OperatorSpecError
from .sparse import SparseOperator, add, adjoint, identity, kron, matmul, scale

#: Hard cap on the number of modes for sparse construction (dimension 2**24).
MAX_MODES = 24

SIGMA_1 = SparseOperator.from_entries(2, {(0, 1): 1, (1, 0): 1})
SIGMA_2 = SparseOperator.from_entries(2, {(0, 1): -1j, (1, 0): 1j})
SIGMA_3 = SparseOperator.from_entries(2, {(0, 0): 1, (1, 1): -1})
SIGMA_PLUS = SparseOperator.from_entries(2, {(0, 1): 2})
SIGMA_MINUS = SparseOperator.from_entries(2, {(1, 0): 2})
IDENTITY_2 = identity(2)

_HALF_PLUS = scale(SIGMA_PLUS, 0.5)


def _check_modes(n: int) -> None:
    if n < 1:
        raise ValueError(f"need at least one mode, got n={n}")
    if n > MAX_MODES:
        raise CapacityError(f"n={n} exceeds the {MAX_MODES}-mode sparse construction cap")


def _check_mode_index(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise ValueError(f"mode index k={k} outside 1..{n}")


def creation(n: int, k: int) -> SparseOperator:
    """Creation operator for mode ``k`` of ``n`` modes."""
    _check_modes(n)
    _check_mode_index(n, k)
    op = _HALF_PLUS
    for _ in range(k - 1):
        op = kron(SIGMA_3, op)
    for _ in range(n - k):
        op = kron(op, IDENTITY_2)
    return op


def annihilation(n: int, k: int) -> SparseOperator:
    """Annihilation operator; the adjoint of :func:`creation`."""
    return adjoint(creation(n, k))


def vacuum_index(n: int) -> int:
    """Basis index of the Fock vacuum (all modes empty)."""
    _check_modes(n)
    return (1 << n) - 1


def number_operator(n: int) -> SparseOperator:
    """Total number operator: diagonal, counting occupied modes per basis state."""
    _check_modes(n)
    dim = 1 << n
    entries = {}
    for i in range(dim):
        occupied = n - (i.bit_count())
        if occupied:
            entries[(i, i)] = complex(occupied)
    return SparseOperator.from_entries(dim, entries)


def product_raising(n: int) -> SparseOperator:
    """The ordered product ``c_n^dagger c_(n-1)^dagger ... c_1^dagger``."""
    _check_modes(n)
    op = creation(n, n)
    for k in range(n - 1, 0, -1):
        op = matmul(op, creation(n, k))
    return op


def product_lowering(n: int) -> SparseOperator:
    """The ordered product ``c_1 c_2 ... c_n``."""
    _check_modes(n)
    op = annihilation(n, 1)
    for k in range(2, n + 1):
        op = matmul(op, annihilation(n, k))
    return op


def hamiltonian_k(n: int, via: str = "corner") -> SparseOperator:
    """The corner-coupling Hamiltonian: product raising plus product lowering.

    ``via="corner"`` places the two corner entries directly (the closed form,
    O(1) work); ``via="chain"`` multiplies the operator chains out.  The two
    must agree exactly, which the test suite checks up to n = 10.
    """
    _check_modes(n)
    if via == "corner":
        dim = 1 << n
        return SparseOperator.from_entries(dim, {(0, dim - 1): 1, (dim - 1, 0): 1})
    if via == "chain":
        return add(product_raising(n), product_lowering(n))
    raise ValueError(f"unknown construction {via!r}; expected 'corner' or 'chain'")


def majorana(n: int, j: int, comp: int) -> SparseOperator:
    """Majorana component: ``c_j^dagger + c_j`` (comp 1) or ``i(c_j^dagger - c_j)`` (comp 2)."""
    if comp not in (1, 2):
        raise ValueError(f"Majorana component must be 1 or 2, got {comp}")
    cdag = creation(n, j)
    c = adjoint(cdag)
    if comp == 1:
        return add(cdag, c)
    return scale(add(cdag, scale(c, -1)), 1j)


# -- spinful operators -------------------------------------------------------

SPIN_UP = "up"
SPIN_DOWN = "down"


def _spin_position(n: int, k: int, spin: str) -> int:
    _check_mode_index(n, k)
    if spin == SPIN_UP:
        return k
    if spin == SPIN_DOWN:
        return k + n
    raise ValueError(f"spin must be 'up' or 'down', got {spin!r}")


def spin_creation(n: int, k: int, spin: str) -> SparseOperator:
    """Creation operator for spinful mode ``(k, spin)`` on a ``2n``-factor register."""
    _check_modes(2 * n)
    return creation(2 * n, _spin_position(n, k, spin))


def spin_annihilation(n: int, k: int, spin: str) -> SparseOperator:
    return adjoint(spin_creation(n, k, spin))


def _spin_raising_chain(n: int, spin: str) -> SparseOperator:
    op = spin_creation(n, n, spin)
    for k in range(n - 1, 0, -1):
        op = matmul(op, spin_creation(n, k, spin))
    return op


def hamiltonian_spin(n: int) -> SparseOperator:
    """Spinful Hamiltonian: raising and lowering chains for both spin species."""
    up = _spin_raising_chain(n, SPIN_UP)
    down = _spin_raising_chain(n, SPIN_DOWN)
    return add(add(up, down), add(adjoint(up), adjoint(down)))


def number_spin(n: int) -> SparseOperator:
    """Total number operator over all ``2n`` spinful modes."""
    _check_modes(2 * n)
    return number_operator(2 * n)


def sz(n: int) -> SparseOperator:
    """z-spin operator: half the up-occupation minus down-occupation, diagonal."""
    _check_modes(2 * n)
    dim = 1 << (2 * n)
    mask = (1 << n) - 1
    entries = {}
    for i in range(dim):
        up_occ = n - ((i >> n).bit_count())
        down_occ = n - ((i & mask).bit_count())
        value = 0.5 * (up_occ - down_occ)
        if value:
            entries[(i, i)] = complex(value)
    return SparseOperator.from_entries(dim, entries)


# -- operator mini-language ---------------------------------------------------

_SPEC_RE = re.compile(r"^\s*([A-Za-z]+[+-]?)\s*\(\s*([0-9]+(?:\s*,\s*[0-9]+)*)\s*\)\s*$")

_BUILDERS = {
    "K": (1, lambda n: hamiltonian_k(n)),
    "N": (1, number_operator),
    "raise": (1, product_raising),
    "lower": (1, product_lowering),
    "c+": (2, creation),
    "c-": (2, annihilation),
    "maj": (3, majorana),
    "Kspin": (1, hamiltonian_spin),
    "Nspin": (1, number_spin),
    "Sz": (1, sz),
    "I": (1, lambda n: identity(1 << n)),
}


def parse_operator_spec(spec: str) -> SparseOperator:
    """Build an operator from a spec string such as ``"K(3)"`` or ``"c+(3,2)"``.

    Supported forms: ``K(n)``, ``N(n)``, ``raise(n)``, ``lower(n)``,
    ``c+(n,k)``, ``c-(n,k)``, ``maj(n,j,comp)``, ``Kspin(n)``, ``Nspin(n)``,
    ``Sz(n)``, ``I(n)``.
    """
    match = _SPEC_RE.match(spec)
    if not match:
        raise OperatorSpecError(f"cannot parse operator spec {spec!r}")
    name = match.group(1)
    args = [int(a) for a in match.group(2).split(",")]
    if name not in _BUILDERS:
        known = ", ".join(sorted(_BUILDERS))
        raise OperatorSpecError(f"unknown operator {name!r}; known: {known}")
    arity, builder = _BUILDERS[name]
    if len(args) != arity:
        raise OperatorSpecError(
            f"{name} takes {arity} argument(s), got {len(args)} in {spec!r}"
        )
    if name == "I" and args[0] > MAX_MODES:
        raise CapacityError(f"n={args[0]} exceeds the {MAX_MODES}-mode sparse construction cap")
    try:
        return builder(*args)
    except ValueError as exc:
        raise OperatorSpecError(f"invalid arguments in {spec!r}: {exc}") from exc
