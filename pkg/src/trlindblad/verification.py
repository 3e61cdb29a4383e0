"""Numerical certificates for rescaled dynamics.

The central check evolves the reference model on a uniform grid ``t_j`` and
the rescaled model on the image grid ``f^-1(t_j)``.  States at matching
nodes must then coincide.  Because both runs hit the same nodes exactly, the
comparison needs no interpolation.
"""
from dataclasses import dataclass, field

import numpy as np

from .propagation import evolve_times, physicality, propagator
from .rescaling import rescale_model, validate_boundary_conditions

TRACE_TOL = 1e-9
HERM_TOL = 1e-9
EIG_TOL = 1e-8


def default_equivalence_tol(a):
    """Acceptance threshold for the max Frobenius deviation at contraction ``a``."""
    return 1e-6 if a <= 2 else 1e-5


@dataclass
class EquivalenceReport:
    max_state_deviation: float = None
    max_trace_error: float = 0.0
    max_hermiticity_error: float = 0.0
    min_eigenvalue: float = 0.0
    deviations: np.ndarray = None
    tol: float = None
    tol_trace: float = TRACE_TOL
    tol_herm: float = HERM_TOL
    tol_pos: float = EIG_TOL
    reference: object = field(default=None, repr=False)
    rescaled: object = field(default=None, repr=False)

    @property
    def physical(self):
        return (self.max_trace_error <= self.tol_trace
                and self.max_hermiticity_error <= self.tol_herm
                and self.min_eigenvalue >= -self.tol_pos)

    @property
    def passed(self):
        if self.max_state_deviation is not None and self.max_state_deviation > self.tol:
            return False
        return self.physical

    def failures(self):
        """Names of the metrics that exceeded their tolerance."""
        out = []
        if self.max_state_deviation is not None and self.max_state_deviation > self.tol:
            out.append("max_state_deviation")
        if self.max_trace_error > self.tol_trace:
            out.append("max_trace_error")
        if self.max_hermiticity_error > self.tol_herm:
            out.append("max_hermiticity_error")
        if self.min_eigenvalue < -self.tol_pos:
            out.append("min_eigenvalue")
        return out

    def to_dict(self, include_series=True):
        out = {
            "max_state_deviation": self.max_state_deviation,
            "max_trace_error": self.max_trace_error,
            "max_hermiticity_error": self.max_hermiticity_error,
            "min_eigenvalue": self.min_eigenvalue,
            "tolerances": {"state_deviation": self.tol, "trace": self.tol_trace,
                           "hermiticity": self.tol_herm, "positivity": self.tol_pos},
            "pass": self.passed,
        }
        if include_series and self.deviations is not None:
            out["deviations"] = [float(x) for x in self.deviations]
        return out


def cptp_monitor(traj, tol_trace=TRACE_TOL, tol_herm=HERM_TOL, tol_pos=EIG_TOL):
    """Physicality metrics of a trajectory as a report without deviation data."""
    tr, herm, eig = physicality(traj)
    return EquivalenceReport(max_trace_error=tr, max_hermiticity_error=herm, min_eigenvalue=eig,
                             tol_trace=tol_trace, tol_herm=tol_herm, tol_pos=tol_pos,
                             reference=traj)


def check_reparametrization(model, tr, rho0, steps, tol=None, method="rk4", substeps=1,
                            rescaled=None):
    """Compare the rescaled trajectory with the reference one node by node.

    Args:
        model: reference model with schedules defined on ``[0, tr.t_f]``.
        tr: the :class:`~trlindblad.rescaling.TimeRescaling`.
        rho0: common initial state.
        steps: number of uniform reference intervals.
        tol: bound on ``max_j ||rho~(f^-1(t_j)) - rho(t_j)||_F``; defaults to
            :func:`default_equivalence_tol`.
        method: integrator for both runs.
        substeps: integrator steps inside each rescaled interval.
        rescaled: override for the rescaled model.

    Raises:
        BoundaryConditionError: before any evolution, if the endpoint
            conditions fail.
    """
    if rescaled is None:
        rescaled = rescale_model(model, tr)
    validate_boundary_conditions(tr, model, rescaled=rescaled)
    if tol is None:
        tol = default_equivalence_tol(tr.a)
    t = np.linspace(0.0, tr.t_f, steps + 1)
    tau = tr.f_inverse(t)
    ref = evolve_times(model, rho0, t, method=method)
    fast = evolve_times(rescaled, rho0, tau, method=method, substeps=substeps)
    dev = np.linalg.norm(fast.states - ref.states, axis=(1, 2))
    ref_phys = physicality(ref)
    fast_phys = physicality(fast)
    return EquivalenceReport(
        max_state_deviation=float(dev.max()),
        max_trace_error=max(ref_phys[0], fast_phys[0]),
        max_hermiticity_error=max(ref_phys[1], fast_phys[1]),
        min_eigenvalue=min(ref_phys[2], fast_phys[2]),
        deviations=dev,
        tol=tol,
        reference=ref,
        rescaled=fast,
    )


def compare_propagators(model, tr, steps, rescaled=None):
    """Max-entry distance between the rescaled and reference propagators.

    Both are ordered midpoint-exponential products over ``steps`` uniform
    intervals.  The reference runs over ``[0, t_f]`` and the rescaled one over
    ``[0, t_f / a]``.
    """
    if rescaled is None:
        rescaled = rescale_model(model, tr)
    validate_boundary_conditions(tr, model, rescaled=rescaled)
    lam = propagator(model, 0.0, tr.t_f, steps)
    lam_tr = propagator(rescaled, 0.0, tr.duration, steps)
    return float(np.max(np.abs(lam_tr - lam)))


def amplitude_damping_oracle(gamma, t, p1_initial=1.0, rescaling=None):
    """Closed-form excited population of the undriven amplitude-damping channel.

    Returns ``p1 * exp(-gamma t)``.  With ``rescaling`` the rescaled clock is
    used instead, giving ``p1 * exp(-gamma f(t))``.
    """
    if gamma < 0:
        raise ValueError("gamma must be nonnegative")
    if not 0.0 <= p1_initial <= 1.0:
        raise ValueError("p1_initial must lie in [0, 1]")
    t = np.asarray(t, dtype=float)
    clock = t if rescaling is None else np.asarray(rescaling.f(t))
    out = p1_initial * np.exp(-gamma * clock)
    return out if out.ndim else float(out)
