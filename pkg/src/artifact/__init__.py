"""Error exponents per unit rate for quantize-and-fuse sensor networks.

Many sensors observe a source through a noisy channel whose law also
depends on a context variable known at the fusion center.  Each sensor
quantizes its observation with one of a small dictionary of test
channels and ships the result; the center fuses the messages and the
context into a guess of the source letter.  This package computes how
fast the error probability can decay per bit of description rate:

- exact best-tilt pairwise divergences between induced codeword laws,
- the max-min ratio program that picks how to split sensors across
  quantizer groups, solved by bisection over feasibility programs,
- closed forms for the scalar Gaussian model with an additive context
  shift, plus discretization helpers that bridge to the finite case,
- a Monte-Carlo harness that estimates the decay rate from simulated
  pools of sensors and checks it against the computed exponent.

The ``artifact`` command line exposes the same operations on TOML
scenario files; see the package README for the file format.
"""

from .chernoff import (
    ChernoffResult,
    averaged_pairwise_exponent,
    chernoff_divergence,
    chernoff_information,
)
from .errors import ConfigurationError, DegenerateModelError
from .exponent import (
    ExponentReport,
    GroupPlan,
    evaluate_plan,
    group_count_bound,
    optimize_weights,
    soften_channel,
    source_triples,
    vanishing_rate_limit,
    vanishing_rate_records,
)
from .gaussian import (
    GaussianScenario,
    alpha_with_context,
    alpha_without_context,
    context_gain_table,
    default_window,
    discretize_normal,
    gaussian_exponent,
    gaussian_rate,
)
from .lfp import (
    LfpInstance,
    LfpSolution,
    brute_force_lfp,
    feasibility_lp,
    min_ratio,
    solve_lfp,
)
from .prob import (
    CodewordChannel,
    JointSourcePmf,
    ObservationChannel,
    TestChannel,
    conditional_entropy_y_given_xs,
    conditional_mutual_information,
    induced_codeword_channel,
)
from .scenario import (
    GaussianSettings,
    Scenario,
    SimulationSettings,
    load_lfp_instance,
    load_scenario,
)
from .simplex import InfeasibleProgramError, UnboundedProgramError, solve_lp
from .simulate import SimConfig, SimResult, apportion_sensors, estimate_exponent, run_trial

__version__ = "0.1.0"

__all__ = [
    "ChernoffResult",
    "CodewordChannel",
    "ConfigurationError",
    "DegenerateModelError",
    "ExponentReport",
    "GaussianScenario",
    "GaussianSettings",
    "GroupPlan",
    "InfeasibleProgramError",
    "JointSourcePmf",
    "LfpInstance",
    "LfpSolution",
    "ObservationChannel",
    "Scenario",
    "SimConfig",
    "SimResult",
    "SimulationSettings",
    "TestChannel",
    "UnboundedProgramError",
    "alpha_with_context",
    "alpha_without_context",
    "apportion_sensors",
    "averaged_pairwise_exponent",
    "brute_force_lfp",
    "chernoff_divergence",
    "chernoff_information",
    "conditional_entropy_y_given_xs",
    "conditional_mutual_information",
    "context_gain_table",
    "default_window",
    "discretize_normal",
    "estimate_exponent",
    "evaluate_plan",
    "feasibility_lp",
    "gaussian_exponent",
    "gaussian_rate",
    "group_count_bound",
    "induced_codeword_channel",
    "load_lfp_instance",
    "load_scenario",
    "min_ratio",
    "optimize_weights",
    "run_trial",
    "soften_channel",
    "solve_lfp",
    "solve_lp",
    "source_triples",
    "vanishing_rate_limit",
    "vanishing_rate_records",
]
