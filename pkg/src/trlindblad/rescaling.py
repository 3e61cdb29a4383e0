"""Time-rescaling of a reference protocol.

The rescaling function

    f(t) = a t - (a - 1) t_f / (2 pi a) * sin(2 pi a t / t_f)

maps the accelerated clock ``t in [0, t_f / a]`` onto the reference clock
``[0, t_f]``.  Its derivative ``f'(t) = a - (a - 1) cos(2 pi a t / t_f)``
equals 1 at both ends, so a constant-coefficient reference and its rescaled
version share the same generator at the start and at the end.  Substituting
every coefficient ``c(t) -> c(f(t)) f'(t)`` produces a process that visits
the same states ``a`` times faster.
"""
from dataclasses import dataclass, field

import numpy as np

from .exceptions import BoundaryConditionError, DomainError, NumericalError, ParameterError
from .model import DissipationChannel, HamiltonianTerm, LindbladModel, Rescaled, build_liouvillian

INVERSE_RTOL = 1e-12
INVERSE_MAXITER = 100
ENDPOINT_TOL = 1e-10


@dataclass(frozen=True)
class TimeRescaling:
    """Rescaling with contraction parameter ``a`` and reference duration ``t_f``.

    ``a >= 1`` speeds the protocol up.  ``1/2 < a < 1`` slows it down and must
    be requested with ``allow_slowdown=True``.  ``a <= 1/2`` is always
    rejected because ``f'`` would reach zero.
    """
    a: float
    t_f: float
    allow_slowdown: bool = field(default=False, compare=False)

    def __post_init__(self):
        a, t_f = float(self.a), float(self.t_f)
        if not (np.isfinite(a) and np.isfinite(t_f)):
            raise ParameterError("a and t_f must be finite")
        if t_f <= 0:
            raise ParameterError(f"t_f must be positive, got {t_f}")
        if a <= 0.5:
            raise ParameterError(f"a={a} <= 1/2: f' would vanish and f stop being monotone")
        if a < 1 and not self.allow_slowdown:
            raise ParameterError(f"a={a} < 1 is a slow-down; pass allow_slowdown=True")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "t_f", t_f)

    @property
    def duration(self):
        """Length ``t_f / a`` of the rescaled process."""
        return self.t_f / self.a

    @property
    def _omega(self):
        return 2.0 * np.pi * self.a / self.t_f

    def f(self, tau):
        """Reference time reached at rescaled time ``tau`` (array-friendly)."""
        a = self.a
        tau = np.asarray(tau, dtype=float)
        out = a * tau - (a - 1.0) / (2.0 * np.pi * a) * self.t_f * np.sin(self._omega * tau)
        # Pin the image of [0, t_f / a] to [0, t_f] so tabulated references are never
        # queried past their end through roundoff.
        inside = (tau >= 0.0) & (tau <= self.duration)
        out = np.where(inside, np.clip(out, 0.0, self.t_f), out)
        out = np.where(tau == self.duration, self.t_f, out)
        return out if out.ndim else float(out)

    def f_dot(self, tau):
        """Derivative ``f'(tau) = a - (a - 1) cos(2 pi a tau / t_f)``."""
        tau = np.asarray(tau, dtype=float)
        out = self.a - (self.a - 1.0) * np.cos(self._omega * tau)
        return out if out.ndim else float(out)

    def f_inverse(self, t, rtol=INVERSE_RTOL, maxiter=INVERSE_MAXITER):
        """Rescaled time at which the reference time ``t`` is reached.

        Safeguarded Newton iteration on the bracket ``[0, t_f / a]``; a step
        that leaves the current bracket is replaced by bisection.  Accepts
        scalars or arrays.

        Raises:
            DomainError: if any ``t`` lies outside ``[0, t_f]``.
            NumericalError: if the iteration cap is reached.
        """
        t = np.asarray(t, dtype=float)
        scalar = t.ndim == 0
        t = np.atleast_1d(t)
        if np.any(t < 0) or np.any(t > self.t_f) or not np.all(np.isfinite(t)):
            raise DomainError(f"f_inverse defined on [0, {self.t_f}]")
        tol = rtol * self.t_f
        lo = np.zeros_like(t)
        hi = np.full_like(t, self.duration)
        tau = t / self.a
        for _ in range(maxiter):
            r = self.f(tau) - t
            done = np.abs(r) <= tol
            if np.all(done):
                break
            lo = np.where(r < 0, tau, lo)
            hi = np.where(r > 0, tau, hi)
            newton = tau - r / self.f_dot(tau)
            bisect = 0.5 * (lo + hi)
            step = np.where((newton > lo) & (newton < hi), newton, bisect)
            tau = np.where(done, tau, step)
        else:
            if not np.all(np.abs(self.f(tau) - t) <= tol):
                raise NumericalError("f_inverse did not converge")
        tau = np.clip(tau, 0.0, self.duration)
        tau[t == 0.0] = 0.0
        tau[t == self.t_f] = self.duration
        return float(tau[0]) if scalar else tau

    @property
    def peak_amplification(self):
        """Largest value of ``f'``: ``2a - 1`` for ``a >= 1`` and 1 otherwise."""
        return max(2.0 * self.a - 1.0, 1.0)


def f_of(tr, tau):
    return tr.f(tau)


def f_dot(tr, tau):
    return tr.f_dot(tau)


def f_inverse(tr, t):
    return tr.f_inverse(t)


def rescale_model(model, tr):
    """Time-rescaled counterpart of ``model``.

    Operators are kept; each coefficient ``c`` becomes ``c(f(t)) f'(t)``.  The
    returned model has ``duration == tr.duration``.
    """
    terms = [HamiltonianTerm(term.operator, Rescaled(term.coefficient, tr))
             for term in model.hamiltonian_terms]
    chans = [DissipationChannel(ch.operator, Rescaled(ch.rate, tr)) for ch in model.channels]
    name = f"{model.name}[a={tr.a:g}]" if model.name else ""
    return LindbladModel(model.dim, terms, chans, duration=tr.duration, name=name)


@dataclass(frozen=True)
class ConditionResult:
    passed: bool
    value: float
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the four boundary conditions, keyed ``"i"`` to ``"iv"``."""
    conditions: dict
    a: float
    t_f: float
    duration: float
    peak_amplification: float

    @property
    def passed(self):
        return all(c.passed for c in self.conditions.values())

    @property
    def failed(self):
        return [k for k, c in self.conditions.items() if not c.passed]

    def to_dict(self):
        return {
            "a": self.a,
            "t_f": self.t_f,
            "duration": self.duration,
            "peak_amplification": self.peak_amplification,
            "pass": self.passed,
            "conditions": {k: {"pass": c.passed, "value": c.value, "detail": c.detail}
                           for k, c in self.conditions.items()},
        }


def validate_boundary_conditions(tr, model, rescaled=None, tol=ENDPOINT_TOL, strict=True):
    """Check the four endpoint conditions a rescaled protocol must meet.

    (i) ``f^-1(0) = 0``; (ii) ``f^-1(t_f) < t_f`` (speed-up); (iii) the
    rescaled Liouvillian at 0 equals the reference one at 0; (iv) the
    rescaled Liouvillian at ``f^-1(t_f)`` equals the reference one at
    ``t_f``.  Superoperators are compared entrywise with tolerance ``tol``.

    With ``a == 1`` condition (ii) is reported as passed with detail
    ``"equal duration, no speedup"``.  ``rescaled`` overrides the model built
    by :func:`rescale_model`, e.g. to test a corrupted protocol.

    Raises:
        BoundaryConditionError: when ``strict`` and any condition fails; the
            first violated condition is named.
    """
    if rescaled is None:
        rescaled = rescale_model(model, tr)
    conds = {}

    start = float(tr.f_inverse(0.0))
    conds["i"] = ConditionResult(start == 0.0, start, f"f^-1(0) = {start!r}")

    end = float(tr.f_inverse(tr.t_f))
    if tr.a == 1.0:
        conds["ii"] = ConditionResult(True, end, "equal duration, no speedup")
    else:
        ok = end < tr.t_f
        conds["ii"] = ConditionResult(ok, end, f"f^-1(t_f) = {end!r} vs t_f = {tr.t_f!r}"
                                      + ("" if ok else " (not faster)"))

    dev0 = float(np.max(np.abs(build_liouvillian(rescaled, start) - build_liouvillian(model, 0.0))))
    conds["iii"] = ConditionResult(dev0 <= tol, dev0, f"max |L~(0) - L(0)| = {dev0:.3e}")

    dev1 = float(np.max(np.abs(build_liouvillian(rescaled, end)
                               - build_liouvillian(model, tr.t_f))))
    conds["iv"] = ConditionResult(dev1 <= tol, dev1,
                                  f"max |L~(f^-1(t_f)) - L(t_f)| = {dev1:.3e}")

    report = ValidationReport(conds, tr.a, tr.t_f, tr.duration, tr.peak_amplification)
    if strict and not report.passed:
        raise BoundaryConditionError(report.failed[0], report)
    return report
