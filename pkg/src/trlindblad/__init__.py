"""Lindblad dynamics accelerated by time-rescaling, with numerical certificates."""
from .exceptions import (BoundaryConditionError, DomainError, IntegrationDivergedError,
                         NumericalError, ParameterError, ShapeError, SizeError, StateError,
                         TRLindbladError)
from .library import TfimParams, TlsParams, tfim_dissipative, tls_amplitude_damping
from .model import (Constant, DissipationChannel, HamiltonianTerm, LindbladModel, Rescaled,
                    Tabulated, build_liouvillian, hamiltonian_at, lindblad_rhs)
from .modelfile import dump_model, load_model, model_from_dict, model_to_dict
from .operators import (basis_state, check_density_matrix, devectorize, kron, pauli,
                        site_operator, vectorize)
from .propagation import (TimeGrid, Trajectory, evolve, evolve_times, matrix_exponential,
                          populations, propagator, stage_state)
from .rescaling import (TimeRescaling, ValidationReport, f_dot, f_inverse, f_of,
                        rescale_model, validate_boundary_conditions)
from .verification import (EquivalenceReport, amplitude_damping_oracle,
                           check_reparametrization, compare_propagators, cptp_monitor)

__version__ = "0.1.0"
