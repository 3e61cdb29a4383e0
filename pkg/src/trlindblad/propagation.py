"""Time evolution of vectorized density matrices.

Two integrators are available.  ``"rk4"`` takes classical fourth-order
Runge-Kutta steps on ``d|rho>/dt = L(t)|rho>``.  ``"expm_midpoint"`` applies
``exp(L(t_mid) h)`` per step; it is second order for time-dependent
generators and exact for constant ones.  Grids are never adapted, so nodes
can be placed at prescribed times.
"""
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .exceptions import DomainError, IntegrationDivergedError, ShapeError
from .model import build_liouvillian
from .operators import (check_density_matrix, devectorize, hermiticity_error,
                        min_eigenvalue, trace_error, vectorize)

METHODS = ("rk4", "expm_midpoint")
# Evolution aborts when the trace drifts this far; physicality is judged by the monitor.
DIVERGENCE_TOL = 1e-6


def matrix_exponential(m):
    """``exp(m)`` by scaling and squaring with a Pade approximant."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"matrix exponential needs a square matrix, got {m.shape}")
    return scipy.linalg.expm(m)


@dataclass(frozen=True)
class TimeGrid:
    t0: float
    t1: float
    steps: int

    def __post_init__(self):
        if int(self.steps) != self.steps or self.steps < 1:
            raise ValueError(f"steps must be a positive integer, got {self.steps}")
        if not self.t1 > self.t0:
            raise ValueError(f"grid needs t1 > t0, got [{self.t0}, {self.t1}]")
        object.__setattr__(self, "steps", int(self.steps))

    @property
    def times(self):
        t = self.t0 + (self.t1 - self.t0) * np.arange(self.steps + 1) / self.steps
        t[-1] = self.t1
        return t


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Node times and the density matrix at each node.

    ``states`` has shape ``(len(times), d, d)``.
    """
    times: np.ndarray
    states: np.ndarray

    @property
    def dim(self):
        return self.states.shape[1]

    @property
    def final(self):
        return self.states[-1]

    def __len__(self):
        return len(self.times)


class _Generator:
    """Liouvillian evaluator; constant models are assembled once."""

    def __init__(self, model):
        self.model = model
        self._fixed = build_liouvillian(model, 0.0) if model.is_constant else None

    def __call__(self, t):
        return self._fixed if self._fixed is not None else build_liouvillian(self.model, t)


def _check_times(model, times):
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size < 1:
        raise ValueError("need at least one node time")
    if np.any(np.diff(times) < 0):
        raise ValueError("node times must be nondecreasing")
    if model.duration is not None:
        slack = 1e-12 * max(1.0, model.duration)
        if times[0] < -slack or times[-1] > model.duration + slack:
            raise DomainError(f"times [{times[0]}, {times[-1]}] leave the model's "
                              f"duration [0, {model.duration}]")
    return times


def _rk4_step(gen, v, t, t_next):
    h = t_next - t
    k1 = gen(t) @ v
    Lm = gen(t + 0.5 * h)
    k2 = Lm @ (v + 0.5 * h * k1)
    k3 = Lm @ (v + 0.5 * h * k2)
    k4 = gen(t_next) @ (v + h * k3)
    return v + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _expm_step(gen, v, t, t_next):
    h = t_next - t
    return matrix_exponential(gen(t + 0.5 * h) * h) @ v


def evolve_times(model, rho0, times, method="rk4", substeps=1, check_state=True):
    """Integrate from ``times[0]`` and record the state at every node.

    Each interval between consecutive nodes is split into ``substeps``
    equal steps, so arbitrary (non-uniform) node sets are hit exactly.

    Raises:
        DomainError: if a schedule is undefined on the interval.
        IntegrationDivergedError: if the state becomes non-finite or its
            trace drifts by more than ``DIVERGENCE_TOL``.
    """
    if method in ("expm", "expm-midpoint"):
        method = "expm_midpoint"
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    if int(substeps) < 1:
        raise ValueError("substeps must be >= 1")
    rho0 = check_density_matrix(rho0) if check_state else np.asarray(rho0, dtype=complex)
    if rho0.shape != (model.dim, model.dim):
        raise ShapeError(f"initial state shape {rho0.shape} does not match dim {model.dim}")
    times = _check_times(model, times)
    step = _rk4_step if method == "rk4" else _expm_step
    gen = _Generator(model)

    v = vectorize(rho0)
    d = model.dim
    out = np.empty((times.size, d, d), dtype=complex)
    out[0] = rho0
    for j in range(times.size - 1):
        t_lo, t_hi = times[j], times[j + 1]
        h = (t_hi - t_lo) / substeps
        for s in range(substeps):
            t_next = t_hi if s == substeps - 1 else t_lo + (s + 1) * h
            v = step(gen, v, t_lo + s * h, t_next)
        rho = devectorize(v)
        if not np.all(np.isfinite(v)) or trace_error(rho) > DIVERGENCE_TOL:
            raise IntegrationDivergedError(f"state diverged at t={t_hi}")
        out[j + 1] = rho
    return Trajectory(times, out)


def evolve(model, rho0, grid, method="rk4"):
    """Evolve ``rho0`` over a uniform :class:`TimeGrid`, keeping every node."""
    return evolve_times(model, rho0, grid.times, method=method)


def propagator(model, t0, t1, steps):
    """Ordered product of midpoint exponentials approximating ``Lambda(t1, t0)``.

    The rightmost factor acts first.  Exact up to the matrix exponential for a
    constant generator; second order otherwise.  Returns the identity for an
    empty interval.
    """
    if t1 < t0:
        raise ValueError("propagator needs t1 >= t0")
    if int(steps) < 1:
        raise ValueError("steps must be >= 1")
    d2 = model.dim ** 2
    if t1 == t0:
        return np.eye(d2, dtype=complex)
    _check_times(model, [t0, t1])
    gen = _Generator(model)
    h = (t1 - t0) / steps
    if gen._fixed is not None:
        return matrix_exponential(gen._fixed * (t1 - t0))
    out = np.eye(d2, dtype=complex)
    for j in range(steps):
        lo = t0 + j * h
        hi = t1 if j == steps - 1 else t0 + (j + 1) * h
        out = matrix_exponential(gen(0.5 * (lo + hi)) * (hi - lo)) @ out
    return out


def stage_state(model, rho0, stage, t_f, steps):
    """State reached at fraction ``stage`` of a protocol of duration ``t_f``.

    Returns ``devectorize(Lambda(stage * t_f, 0) vec(rho0))``.
    """
    if not 0.0 <= stage <= 1.0:
        raise ValueError(f"stage must lie in [0, 1], got {stage}")
    rho0 = check_density_matrix(rho0)
    if stage == 0.0:
        return rho0.copy()
    lam = propagator(model, 0.0, stage * t_f, steps)
    return devectorize(lam @ vectorize(rho0))


def populations(traj, basis_indices=None):
    """Diagonal populations, shape ``(len(traj), len(basis_indices))``."""
    d = traj.dim
    if basis_indices is None:
        basis_indices = range(d)
    idx = list(basis_indices)
    for i in idx:
        if not 0 <= i < d:
            raise IndexError(f"basis index {i} out of range for dim {d}")
    return traj.states[:, idx, idx].real.copy()


def physicality(traj):
    """Max trace error, max Hermiticity error and min eigenvalue over nodes."""
    tr = max(trace_error(r) for r in traj.states)
    herm = max(hermiticity_error(r) for r in traj.states)
    eig = min(min_eigenvalue(r) for r in traj.states)
    return tr, herm, eig
