"""Deadline reliability of multi-stage service deployments on edge networks.

A scenario describes deployment plans over branches with stochastic
bandwidth and nodes with stochastic computing resources.  The package
computes the probability that a staged task finishes within a deadline:
feasible states are enumerated implicitly, reduced to their minimal
status vectors, and combined by a recursive sum of disjoint products;
independent exact, inclusion-exclusion, and Monte Carlo oracles verify
the result.
"""

from . import errors
from .kernels import BACKEND as kernel_backend
from .model import (
    BranchSpec,
    DeploymentPlan,
    NodeSpec,
    Pmf,
    Scenario,
    StateVector,
    load_scenario,
    parse_scenario,
    render_scenario,
    survival,
)
from .montecarlo import SimConfig, SimResult, sample_state, simulate
from .pathset import MsvSet, SolutionSet, feasible_vectors, minimal_vectors
from .reliability import (
    ReliabilityReport,
    evaluate_scenario,
    event_probability,
    exact_reliability,
    inclusion_exclusion_reliability,
    rsdp_reliability,
    union_reliability,
)
from .timing import CompletionTime, StageSizes, data_sizes, min_total_time, total_time
from .trace import (
    DiscretizationPolicy,
    TraceSeries,
    ingest_trace,
    load_trace,
    machines_in,
    parse_trace,
)

__version__ = "0.1.0"

__all__ = [
    "BranchSpec", "CompletionTime", "DeploymentPlan", "DiscretizationPolicy",
    "MsvSet", "NodeSpec", "Pmf", "ReliabilityReport", "Scenario", "SimConfig",
    "SimResult", "SolutionSet", "StageSizes", "StateVector", "TraceSeries",
    "data_sizes", "errors", "evaluate_scenario", "event_probability",
    "exact_reliability", "feasible_vectors", "inclusion_exclusion_reliability",
    "ingest_trace", "kernel_backend", "load_scenario", "load_trace",
    "machines_in", "min_total_time", "minimal_vectors", "parse_scenario",
    "parse_trace", "render_scenario", "rsdp_reliability", "sample_state",
    "simulate", "survival", "total_time", "union_reliability", "__version__",
]
