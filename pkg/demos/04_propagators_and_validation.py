# %% [markdown]
# # Propagators, endpoint conditions and a negative control
#
# The rescaled protocol is only useful if it starts and ends under the same
# generator as the reference.  ``validate_boundary_conditions`` checks this
# together with ``f^-1(0) = 0`` and the speed-up.  ``compare_propagators``
# compares the two full-duration propagators.

# %%
import json

from trlindblad import (BoundaryConditionError, LindbladModel, Rescaled, TimeRescaling,
                        compare_propagators, tls_amplitude_damping,
                        validate_boundary_conditions)

model = tls_amplitude_damping(delta=1, omega=2, gamma=1)
tr = TimeRescaling(10.0, 5.0)
print(json.dumps(validate_boundary_conditions(tr, model).to_dict(), indent=2))
print("max |Lambda~ - Lambda| =", compare_propagators(model, tr, 4000))

# %% [markdown]
# A naive compression ``f(t) = a t`` reaches the right final state but applies
# ``a`` times the reference fields at the start and end.  The validator
# flags this with the violated condition.


# %%
class LinearClock:
    def __init__(self, a):
        self.a = a

    def f(self, t):
        return self.a * t

    def f_dot(self, t):
        return self.a


clock = LinearClock(10.0)
naive = LindbladModel(
    2,
    [(t.operator, Rescaled(t.coefficient, clock)) for t in model.hamiltonian_terms],
    [(c.operator, Rescaled(c.rate, clock)) for c in model.channels],
)
try:
    validate_boundary_conditions(tr, model, rescaled=naive)
except BoundaryConditionError as exc:
    print("rejected:", exc)
