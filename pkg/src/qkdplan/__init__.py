"""Planning of QKD wavelength resources for federated-learning chain requests.

The planner builds a two-stage stochastic program over scenario demands,
solves it exactly on desk-scale instances and compares it to a shortest-path
baseline.
"""

from .baseline import BASELINE_MODES, baseline_for_program, baseline_plan
from .costs import ComponentCounts, CostTable, component_counts, link_counts, load_cost_table, phase_cost
from .demand import (
    ChainRequest,
    PhysicsParams,
    ScenarioSet,
    load_requests,
    parallel_links,
    point_request,
    uniform_request,
)
from .errors import (
    InfeasibleError,
    LPFormatError,
    QKDPlanError,
    SizeGuardError,
    TopologyParseError,
    UnknownNodeError,
    ValidationError,
)
from .lpformat import export_lp, read_lp
from .oracle import brute_force_oracle
from .paths import k_shortest_paths
from .program import DeterministicProgram, ProgramOptions, build, census_prediction
from .solver import Allocation, PlanSolution, solve
from .topology import Link, Topology, load_topology, neighbors_in, neighbors_out, parse_topology, usnet

__version__ = "0.1.0"
