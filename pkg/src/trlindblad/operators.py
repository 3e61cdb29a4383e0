"""Dense operator algebra: Kronecker products, Pauli matrices, vectorization.

Conventions
-----------
* ``|0>`` is the +1 eigenstate of sigma_z; sigma_minus = ``|0><1|``.
* Multi-qubit basis states are ordered lexicographically with site 0 as the
  most significant (leftmost) tensor factor, so index 1 of a two-qubit
  system is ``|01>``.
* Vectorization stacks columns: ``vec(rho)[j*d + i] = rho[i, j]``.  With this
  convention ``vec(A @ rho @ B) = kron(B.T, A) @ vec(rho)``.
"""
import numpy as np

from .exceptions import ShapeError, SizeError, StateError

MAX_QUBITS = 8
# Largest matrix side allowed anywhere: the superoperator of MAX_QUBITS qubits.
MAX_DIM = 4 ** MAX_QUBITS

ATOL = 1e-12
HERM_TOL = 1e-10
TRACE_TOL = 1e-10
POS_TOL = 1e-9

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "MINUS": np.array([[0, 1], [0, 0]], dtype=complex),
    "PLUS": np.array([[0, 0], [1, 0]], dtype=complex),
}
_ALIASES = {"IDENTITY": "I", "SIGMA_X": "X", "SIGMA_Y": "Y", "SIGMA_Z": "Z",
            "SM": "MINUS", "SP": "PLUS", "-": "MINUS", "+": "PLUS"}


def allclose(a, b, atol=ATOL):
    """Elementwise absolute comparison, ``max|a - b| <= atol``."""
    a = np.asarray(a)
    b = np.asarray(b)
    return a.shape == b.shape and bool(np.all(np.abs(a - b) <= atol))


def kron(a, b, max_dim=MAX_DIM):
    """Kronecker product with a guard on the output size.

    Block ``(i, j)`` of the result is ``a[i, j] * b``.

    Raises:
        SizeError: if either output dimension exceeds ``max_dim``.
    """
    a = np.atleast_2d(np.asarray(a))
    b = np.atleast_2d(np.asarray(b))
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if rows > max_dim or cols > max_dim:
        raise SizeError(f"kron output {rows}x{cols} exceeds maximum dimension {max_dim}")
    return np.kron(a, b)


def pauli(kind):
    """Return a single-qubit operator by name.

    ``kind`` is one of ``"X"``, ``"Y"``, ``"Z"``, ``"Minus"``, ``"Plus"``,
    ``"Identity"`` (case-insensitive; ``"I"`` also accepted).  A fresh copy is
    returned on every call.
    """
    key = str(kind).upper()
    key = _ALIASES.get(key, key)
    try:
        return _PAULI[key].copy()
    except KeyError:
        raise ValueError(f"unknown single-qubit operator {kind!r}") from None


def site_operator(op, site, n_sites):
    """Embed a 2x2 operator at tensor slot ``site`` of an ``n_sites`` chain.

    Site 0 is the leftmost factor: ``site_operator(X, 1, 2) == kron(I, X)``.
    """
    op = np.asarray(op, dtype=complex)
    if op.shape != (2, 2):
        raise ShapeError(f"site operator must be 2x2, got {op.shape}")
    if not 1 <= n_sites <= MAX_QUBITS:
        raise SizeError(f"n_sites={n_sites} outside [1, {MAX_QUBITS}]")
    if not 0 <= site < n_sites:
        raise IndexError(f"site {site} out of range for {n_sites} sites")
    out = np.ones((1, 1), dtype=complex)
    for k in range(n_sites):
        out = kron(out, op if k == site else _PAULI["I"])
    return out


def n_qubits(dim):
    """Number of qubits for Hilbert dimension ``dim`` (must be a power of 2)."""
    n = int(dim).bit_length() - 1
    if dim < 1 or 2 ** n != dim:
        raise ShapeError(f"dimension {dim} is not a power of two")
    return n


def basis_label(index, dim):
    """Bit-string label of basis state ``index``, e.g. ``(1, 4) -> "01"``."""
    n = n_qubits(dim)
    if not 0 <= index < dim:
        raise IndexError(f"basis index {index} out of range for dim {dim}")
    return format(index, f"0{max(n, 1)}b")


def basis_state(index, dim):
    """Projector ``|index><index|`` as a ``dim x dim`` density matrix.

    ``index`` may also be a bit string such as ``"11"``.
    """
    if isinstance(index, str):
        if len(index) != n_qubits(dim) or set(index) - {"0", "1"}:
            raise ValueError(f"label {index!r} does not match dim {dim}")
        index = int(index, 2)
    if not 0 <= index < dim:
        raise IndexError(f"basis index {index} out of range for dim {dim}")
    rho = np.zeros((dim, dim), dtype=complex)
    rho[index, index] = 1.0
    return rho


def vectorize(rho):
    """Column-stack a square matrix into a vector of length ``d**2``."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {rho.shape}")
    return rho.reshape(-1, order="F").astype(complex, copy=True)


def devectorize(v):
    """Inverse of :func:`vectorize`.

    Raises:
        ShapeError: if the length of ``v`` is not a perfect square.
    """
    v = np.asarray(v)
    if v.ndim != 1:
        raise ShapeError(f"expected a 1-d vector, got shape {v.shape}")
    d = int(round(np.sqrt(v.size)))
    if d * d != v.size or d == 0:
        raise ShapeError(f"length {v.size} is not a perfect square")
    return v.reshape(d, d, order="F").astype(complex, copy=True)


def hermiticity_error(rho):
    rho = np.asarray(rho)
    return float(np.max(np.abs(rho - rho.conj().T))) if rho.size else 0.0


def trace_error(rho):
    return float(abs(np.trace(rho) - 1.0))


def min_eigenvalue(rho):
    """Smallest eigenvalue of the Hermitian part ``(rho + rho^dagger) / 2``."""
    rho = np.asarray(rho)
    return float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0])


def check_density_matrix(rho, herm_tol=HERM_TOL, trace_tol=TRACE_TOL, pos_tol=POS_TOL):
    """Validate and return ``rho`` as a complex array.

    Raises:
        ShapeError: if ``rho`` is not square.
        StateError: if Hermiticity, unit trace or positivity fails.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ShapeError(f"density matrix must be square, got {rho.shape}")
    if hermiticity_error(rho) > herm_tol:
        raise StateError("density matrix is not Hermitian")
    if trace_error(rho) > trace_tol:
        raise StateError(f"density matrix trace {np.trace(rho)} != 1")
    if min_eigenvalue(rho) < -pos_tol:
        raise StateError("density matrix is not positive semidefinite")
    return rho


def is_hermitian(m, atol=ATOL):
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and hermiticity_error(m) <= atol
