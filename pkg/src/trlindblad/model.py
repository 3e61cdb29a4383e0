"""Declarative Lindblad models with time-dependent scalar coefficients.

A model is a fixed set of operators. Only the scalar coefficients that
multiply them depend on time.  Hamiltonian terms carry a real coefficient
schedule and dissipation channels carry a nonnegative rate schedule. That
keeps the time-rescaling transform a pure coefficient substitution.
"""
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .exceptions import DomainError, ParameterError, ShapeError
from .operators import ATOL, hermiticity_error, kron


@dataclass(frozen=True)
class Constant:
    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))

    def __call__(self, t):
        return self.value

    @property
    def is_constant(self):
        return True


@dataclass(frozen=True)
class Tabulated:
    """Piecewise-linear schedule on a strictly increasing grid.

    Evaluation outside ``[times[0], times[-1]]`` raises :class:`DomainError`;
    there is no extrapolation.
    """
    times: tuple
    values: tuple

    def __post_init__(self):
        times = tuple(float(x) for x in self.times)
        values = tuple(float(x) for x in self.values)
        if len(times) < 2 or len(times) != len(values):
            raise ParameterError("tabulated schedule needs >= 2 matching times/values")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ParameterError("tabulated times must be strictly increasing")
        if not np.all(np.isfinite(times + values)):
            raise ParameterError("tabulated schedule contains non-finite entries")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    def __call__(self, t):
        if t < self.times[0] or t > self.times[-1]:
            raise DomainError(f"t={t} outside tabulated domain "
                              f"[{self.times[0]}, {self.times[-1]}]")
        return float(np.interp(t, self.times, self.values))

    @property
    def is_constant(self):
        return False


@dataclass(frozen=True)
class Rescaled:
    """Schedule ``inner(f(t)) * f'(t)`` for a time-rescaling ``f``.

    ``rescaling`` is anything exposing ``f(t)`` and ``f_dot(t)``, normally a
    :class:`~trlindblad.rescaling.TimeRescaling`.
    """
    inner: object
    rescaling: object

    def __call__(self, t):
        return self.inner(self.rescaling.f(t)) * self.rescaling.f_dot(t)

    @property
    def is_constant(self):
        return False


@dataclass(frozen=True)
class HamiltonianTerm:
    operator: np.ndarray
    coefficient: object


@dataclass(frozen=True)
class DissipationChannel:
    operator: np.ndarray
    rate: object


def _as_schedule(c):
    if isinstance(c, (int, float, np.floating, np.integer)):
        return Constant(c)
    if not callable(c):
        raise ParameterError(f"coefficient {c!r} is neither a number nor a schedule")
    return c


@dataclass(frozen=True, eq=False)
class LindbladModel:
    """Operators plus coefficient schedules defining a Lindblad generator.

    Args:
        dim: Hilbert-space dimension ``d``.
        hamiltonian_terms: sequence of :class:`HamiltonianTerm` (or
            ``(operator, coefficient)`` pairs); each operator must be
            Hermitian.
        channels: sequence of :class:`DissipationChannel` (or
            ``(operator, rate)`` pairs).
        duration: natural protocol duration, if the model has one.  Rescaled
            models set this to ``t_f / a`` and evolution beyond it is
            rejected.
    """
    dim: int
    hamiltonian_terms: tuple = ()
    channels: tuple = ()
    duration: float = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        d = int(self.dim)
        if d < 1:
            raise ParameterError("dim must be positive")
        terms = []
        for term in self.hamiltonian_terms:
            if not isinstance(term, HamiltonianTerm):
                term = HamiltonianTerm(*term)
            op = np.array(term.operator, dtype=complex)
            if op.shape != (d, d):
                raise ShapeError(f"Hamiltonian operator shape {op.shape} != ({d}, {d})")
            if hermiticity_error(op) > ATOL:
                raise ParameterError("Hamiltonian term operator is not Hermitian")
            op.setflags(write=False)
            terms.append(HamiltonianTerm(op, _as_schedule(term.coefficient)))
        chans = []
        for ch in self.channels:
            if not isinstance(ch, DissipationChannel):
                ch = DissipationChannel(*ch)
            op = np.array(ch.operator, dtype=complex)
            if op.shape != (d, d):
                raise ShapeError(f"Lindblad operator shape {op.shape} != ({d}, {d})")
            rate = _as_schedule(ch.rate)
            if isinstance(rate, Constant) and rate.value < 0:
                raise ParameterError(f"negative dissipation rate {rate.value}")
            op.setflags(write=False)
            chans.append(DissipationChannel(op, rate))
        object.__setattr__(self, "dim", d)
        object.__setattr__(self, "hamiltonian_terms", tuple(terms))
        object.__setattr__(self, "channels", tuple(chans))
        if self.duration is not None:
            object.__setattr__(self, "duration", float(self.duration))

    @property
    def is_constant(self):
        """True when every schedule is time independent."""
        return all(getattr(s, "is_constant", False) for s in self._schedules())

    def _schedules(self):
        return [t.coefficient for t in self.hamiltonian_terms] + [c.rate for c in self.channels]

    def coefficients(self, t):
        """Hamiltonian coefficients and channel rates at time ``t``.

        Raises:
            DomainError: if a schedule is undefined at ``t`` or a rate is
                negative there.
        """
        h = np.array([term.coefficient(t) for term in self.hamiltonian_terms], dtype=float)
        g = np.array([ch.rate(t) for ch in self.channels], dtype=float)
        if np.any(g < 0):
            raise DomainError(f"negative dissipation rate {g.min()} at t={t}")
        return h, g

    # Per-term superoperator blocks; the Liouvillian is linear in coefficients.
    @cached_property
    def _hamiltonian_blocks(self):
        d = self.dim
        eye = np.eye(d)
        return [-1j * (kron(eye, t.operator) - kron(t.operator.T, eye))
                for t in self.hamiltonian_terms]

    @cached_property
    def _dissipator_blocks(self):
        d = self.dim
        eye = np.eye(d)
        blocks = []
        for ch in self.channels:
            L = ch.operator
            LdL = L.conj().T @ L
            blocks.append(kron(L.conj(), L) - 0.5 * kron(eye, LdL) - 0.5 * kron(LdL.T, eye))
        return blocks


def hamiltonian_at(model, t):
    """Return ``H(t) = sum_j c_j(t) H_j``."""
    h, _ = model.coefficients(t)
    H = np.zeros((model.dim, model.dim), dtype=complex)
    for c, term in zip(h, model.hamiltonian_terms):
        H += c * term.operator
    return H


def lindblad_rhs(model, rho, t):
    """Dense right-hand side of the Lindblad equation at time ``t``.

    Computes ``-i[H, rho] + sum_k g_k (L rho L^dag - {L^dag L, rho} / 2)``
    directly on matrices, independently of the superoperator assembly.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (model.dim, model.dim):
        raise ShapeError(f"state shape {rho.shape} does not match model dim {model.dim}")
    H = hamiltonian_at(model, t)
    _, rates = model.coefficients(t)
    out = -1j * (H @ rho - rho @ H)
    for g, ch in zip(rates, model.channels):
        L = ch.operator
        Ld = L.conj().T
        LdL = Ld @ L
        out += g * (L @ rho @ Ld - 0.5 * (LdL @ rho + rho @ LdL))
    return out


def build_liouvillian(model, t):
    """Column-stacking Liouvillian superoperator at time ``t``.

    ``-i(I (x) H - H^T (x) I) + sum_k g_k [L* (x) L - I (x) L^dag L / 2 - (L^dag L)^T (x) I / 2]``
    as a ``d**2 x d**2`` complex array.
    """
    h, g = model.coefficients(t)
    d2 = model.dim ** 2
    out = np.zeros((d2, d2), dtype=complex)
    for c, block in zip(h, model._hamiltonian_blocks):
        if c:
            out += c * block
    for c, block in zip(g, model._dissipator_blocks):
        if c:
            out += c * block
    return out
