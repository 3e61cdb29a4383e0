import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from trlindblad.exceptions import BoundaryConditionError, DomainError, ParameterError
from trlindblad.library import tfim_dissipative, tls_amplitude_damping
from trlindblad.model import LindbladModel, Rescaled, Tabulated, build_liouvillian
from trlindblad.operators import pauli
from trlindblad.rescaling import TimeRescaling, rescale_model, validate_boundary_conditions

T_F = 5.0


def test_endpoints_and_identity_case():
    for a in (1.0, 2.0, 10.0, 3.7):
        tr = TimeRescaling(a, T_F)
        assert tr.f(0.0) == 0.0
        assert tr.f(T_F / a) == T_F
        assert tr.duration == T_F / a
    tau = np.linspace(0, T_F, 101)
    assert np.array_equal(TimeRescaling(1.0, T_F).f(tau), tau)
    assert np.all(TimeRescaling(1.0, T_F).f_dot(tau) == 1.0)


def test_f_dot_printed_instances():
    t = np.linspace(0, T_F / 2, 257)
    assert TimeRescaling(2, T_F).f_dot(0.0) == 1.0
    assert np.max(np.abs(TimeRescaling(2, T_F).f_dot(t) - (2 - np.cos(4 * np.pi * t / T_F)))) <= 1e-14
    t = np.linspace(0, T_F / 10, 257)
    tr10 = TimeRescaling(10, T_F)
    assert np.max(np.abs(tr10.f_dot(t) - (10 - 9 * np.cos(20 * np.pi * t / T_F)))) <= 1e-14
    assert tr10.f_dot(T_F / 20) == pytest.approx(19.0, abs=1e-13)


@pytest.mark.parametrize("a", [1.5, 2.0, 10.0])
def test_f_dot_matches_central_differences(a):
    tr = TimeRescaling(a, T_F)
    tau = np.linspace(0.05, 0.95, 40) * tr.duration
    errs = []
    for h in (1e-3, 5e-4):
        fd = (tr.f(tau + h) - tr.f(tau - h)) / (2 * h)
        errs.append(np.max(np.abs(fd - tr.f_dot(tau))))
    # second order: halving h cuts the error by ~4
    assert 3.5 < errs[0] / errs[1] < 4.5


@pytest.mark.parametrize("a", [1.0, 2.0, 10.0, 25.0])
def test_f_dot_bounds_and_monotonicity(a):
    tr = TimeRescaling(a, T_F)
    tau = np.linspace(0, tr.duration, 10001)
    fd = tr.f_dot(tau)
    assert fd.min() >= 1 - 1e-12 and fd.max() <= 2 * a - 1 + 1e-12
    assert np.all(np.diff(tr.f(tau)) > 0)
    assert tr.peak_amplification == max(2 * a - 1, 1)


def test_parameter_policy():
    with pytest.raises(ParameterError):
        TimeRescaling(0.5, T_F, allow_slowdown=True)
    with pytest.raises(ParameterError):
        TimeRescaling(0.8, T_F)
    with pytest.raises(ParameterError):
        TimeRescaling(2.0, 0.0)
    tr = TimeRescaling(0.8, T_F, allow_slowdown=True)
    tau = np.linspace(0, tr.duration, 1001)
    assert tr.f_dot(tau).min() >= 2 * 0.8 - 1 - 1e-12
    assert tr.f(tr.duration) == T_F


@pytest.mark.parametrize("a", [1.0, 2.0, 10.0])
def test_inverse_round_trip(rng, a):
    tr = TimeRescaling(a, T_F)
    assert tr.f_inverse(0.0) == 0.0
    assert tr.f_inverse(T_F) == T_F / a
    tau = rng.uniform(0, tr.duration, 1000)
    assert np.max(np.abs(tr.f_inverse(tr.f(tau)) - tau)) <= 1e-10
    t = rng.uniform(0, T_F, 1000)
    assert np.max(np.abs(tr.f(tr.f_inverse(t)) - t)) <= 1e-12 * T_F


def test_inverse_slowdown_and_domain():
    tr = TimeRescaling(0.6, T_F, allow_slowdown=True)
    t = np.linspace(0, T_F, 333)
    assert np.max(np.abs(tr.f(tr.f_inverse(t)) - t)) <= 1e-12 * T_F
    with pytest.raises(DomainError):
        tr.f_inverse(-0.1)
    with pytest.raises(DomainError):
        tr.f_inverse(T_F * 1.0001)


@settings(max_examples=100, deadline=None)
@given(st.floats(1.0, 50.0), st.floats(0.1, 100.0), st.floats(0.0, 1.0))
def test_inverse_property(a, t_f, frac):
    tr = TimeRescaling(a, t_f)
    tau = tr.f_inverse(frac * t_f)
    assert 0.0 <= tau <= tr.duration
    assert abs(tr.f(tau) - frac * t_f) <= 1e-12 * t_f


def test_rescale_model_coefficients():
    m = tls_amplitude_damping(delta=1.3, omega=0.7, gamma=0.9)
    tr = TimeRescaling(2.0, T_F)
    r = rescale_model(m, tr)
    assert r.duration == T_F / 2
    for t in np.linspace(0, T_F / 2, 11):
        fd = 2 - np.cos(4 * np.pi * t / T_F)
        h, g = r.coefficients(t)
        assert np.allclose(h, [1.3 * fd, 0.7 * fd], rtol=0, atol=1e-14)
        assert 0.9 <= g[0] <= 0.9 * 3 + 1e-14
    for op_r, op_m in zip(r.hamiltonian_terms, m.hamiltonian_terms):
        assert np.array_equal(op_r.operator, op_m.operator)


def test_rescale_identity_at_a_equal_one(rng):
    m = tfim_dissipative(h_field=0.5)
    r = rescale_model(m, TimeRescaling(1.0, 15.0))
    for t in rng.uniform(0, 15, 10):
        assert np.array_equal(build_liouvillian(r, t), build_liouvillian(m, t))


def test_endpoint_liouvillians_with_tabulated_reference():
    # the endpoint identity needs only matching values at 0 and t_f
    m = LindbladModel(2, [(-0.5 * pauli("X"), Tabulated([0, 2, 5], [1.0, 3.0, -1.0]))],
                      [(pauli("Minus"), Tabulated([0, 5], [0.2, 1.5]))])
    for a in (2.0, 10.0):
        tr = TimeRescaling(a, T_F)
        r = rescale_model(m, tr)
        assert np.max(np.abs(build_liouvillian(r, 0) - build_liouvillian(m, 0))) <= 1e-10
        assert np.max(np.abs(build_liouvillian(r, tr.duration)
                             - build_liouvillian(m, T_F))) <= 1e-10
        assert validate_boundary_conditions(tr, m).passed


def test_composition_durations_multiply():
    m = tls_amplitude_damping(omega=2)
    r1 = rescale_model(m, TimeRescaling(2.0, T_F))
    tr2 = TimeRescaling(3.0, r1.duration)
    r2 = rescale_model(r1, tr2)
    assert r2.duration == pytest.approx(T_F / 6, rel=1e-15)
    assert validate_boundary_conditions(tr2, r1).passed


@pytest.mark.parametrize("a", [2.0, 10.0])
@pytest.mark.parametrize("model", [tls_amplitude_damping(omega=2, delta=1),
                                   tfim_dissipative(h_field=2)], ids=["tls", "tfim"])
def test_validation_passes_for_builtins(a, model):
    t_f = 5.0 if model.dim == 2 else 15.0
    rep = validate_boundary_conditions(TimeRescaling(a, t_f), model)
    assert rep.passed and rep.failed == []
    assert rep.conditions["ii"].value == pytest.approx(t_f / a)
    assert rep.peak_amplification == 2 * a - 1


def test_validation_a_equal_one():
    rep = validate_boundary_conditions(TimeRescaling(1.0, T_F), tls_amplitude_damping(omega=1))
    assert rep.passed
    assert rep.conditions["ii"].detail == "equal duration, no speedup"


class LinearClock:
    """Fixture: plain speed-up f(t) = a t, which has f'(0) = a instead of 1."""

    def __init__(self, a):
        self.a = a

    def f(self, t):
        return self.a * t

    def f_dot(self, t):
        return self.a


def corrupted(model, a):
    clock = LinearClock(a)
    return LindbladModel(model.dim,
                         [(t.operator, Rescaled(t.coefficient, clock))
                          for t in model.hamiltonian_terms],
                         [(c.operator, Rescaled(c.rate, clock)) for c in model.channels])


def test_validation_negative_control():
    m = tls_amplitude_damping(omega=2, gamma=1)
    tr = TimeRescaling(2.0, T_F)
    bad = corrupted(m, 2.0)
    rep = validate_boundary_conditions(tr, m, rescaled=bad, strict=False)
    assert not rep.passed
    assert rep.failed == ["iii", "iv"]
    with pytest.raises(BoundaryConditionError) as exc:
        validate_boundary_conditions(tr, m, rescaled=bad)
    assert exc.value.condition == "iii"
    assert "(iii)" in str(exc.value)


def test_validation_slowdown_fails_speedup_condition():
    tr = TimeRescaling(0.8, T_F, allow_slowdown=True)
    rep = validate_boundary_conditions(tr, tls_amplitude_damping(omega=1), strict=False)
    assert rep.failed == ["ii"]
