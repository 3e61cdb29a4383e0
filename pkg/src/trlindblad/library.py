"""Built-in models: driven two-level system and dissipative TFIM chain."""
from dataclasses import dataclass

from .exceptions import ParameterError
from .model import Constant, LindbladModel
from .operators import MAX_QUBITS, pauli, site_operator


@dataclass(frozen=True)
class TlsParams:
    delta: float = 0.0
    omega: float = 0.0
    gamma: float = 1.0


@dataclass(frozen=True)
class TfimParams:
    n_sites: int = 2
    j_coupling: float = 1.0
    h_field: float = 0.0
    gamma: float = 0.1


def tls_amplitude_damping(p=None, **kwargs):
    """Two-level system ``H = -delta/2 Z - omega/2 X`` decaying through sigma_minus.

    Accepts a :class:`TlsParams` or the same fields as keyword arguments.
    """
    p = p or TlsParams(**kwargs)
    if p.gamma < 0:
        raise ParameterError(f"gamma must be nonnegative, got {p.gamma}")
    if p.omega < 0:
        raise ParameterError(f"omega must be nonnegative, got {p.omega}")
    terms = [(-0.5 * pauli("Z"), Constant(p.delta)),
             (-0.5 * pauli("X"), Constant(p.omega))]
    channels = [(pauli("Minus"), Constant(p.gamma))]
    return LindbladModel(2, terms, channels, name="tls_amplitude_damping")


def tfim_dissipative(p=None, **kwargs):
    """Open transverse-field Ising chain with independent sigma_minus decay.

    ``H = -J sum_k Z_k Z_{k+1} - h sum_k X_k`` over the ``n - 1`` adjacent
    pairs of an open chain.  Each term is stored separately with its own
    constant coefficient (``J`` for couplings, ``h`` for fields) so the
    rescaling acts on them independently.
    """
    p = p or TfimParams(**kwargs)
    n = int(p.n_sites)
    if not 2 <= n <= MAX_QUBITS:
        raise ParameterError(f"n_sites must lie in [2, {MAX_QUBITS}], got {p.n_sites}")
    if p.gamma < 0:
        raise ParameterError(f"gamma must be nonnegative, got {p.gamma}")
    Z, X, M = pauli("Z"), pauli("X"), pauli("Minus")
    terms = []
    for k in range(n - 1):
        zz = site_operator(Z, k, n) @ site_operator(Z, k + 1, n)
        terms.append((-zz, Constant(p.j_coupling)))
    for k in range(n):
        terms.append((-site_operator(X, k, n), Constant(p.h_field)))
    channels = [(site_operator(M, k, n), Constant(p.gamma)) for k in range(n)]
    return LindbladModel(2 ** n, terms, channels, name="tfim_dissipative")


BUILDERS = {
    "tls_amplitude_damping": (tls_amplitude_damping, TlsParams),
    "tfim_dissipative": (tfim_dissipative, TfimParams),
}


def build(name, params=None):
    """Construct a built-in model by name from a parameter mapping."""
    try:
        fn, cls = BUILDERS[name]
    except KeyError:
        raise ParameterError(f"unknown model builder {name!r}; "
                             f"available: {sorted(BUILDERS)}") from None
    try:
        p = cls(**(params or {}))
    except TypeError as exc:
        raise ParameterError(f"bad parameters for {name}: {exc}") from None
    return fn(p)
