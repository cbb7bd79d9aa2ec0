"""Max-plus algebra engine for fork-join queueing networks.

The package compiles a network description into explicit max-plus
state-transition matrices, iterates the resulting linear state equation
to produce customer departure-epoch traces, and cross-validates the
result against an independent discrete-event simulation.
"""

from .compiler import (CompiledTransition, RoutingMatrices, build_routing,
                       compile_network, render_symbolic, symbolic_transition)
from .engine import (DepartureTrace, StateVector, compare_traces, run, step,
                     step_implicit)
from .errors import (CompilationError, CycleError, DimensionError,
                     MaxPlusError, ServiceTableError, SpecValidationError)
from .network import (INF, Constant, Exponential, ExplicitSequence,
                      NetworkSpec, Remapped, ServiceTimeSource,
                      ServiceTimeTable, Uniform, build_closed_tandem,
                      build_fork_join, build_open_tandem,
                      build_reference_fork_join, build_round_robin,
                      load_spec, realize_service, save_spec, spec_from_dict,
                      spec_to_dict, validate, violations)
from .oracle import simulate, simulate_round_routing
from .semiring import (EPS, MaxPlusMatrix, PathGraphView, graph_view,
                       is_finite, mat_oplus, mat_otimes, mat_power, mat_vec,
                       oplus, otimes, solve_implicit, vec_oplus)
from .symbolic import Poly, render_entry

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
