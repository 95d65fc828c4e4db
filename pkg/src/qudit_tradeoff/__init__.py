"""Optimal information/disturbance measurements on qudits.

Single-user probe scheme, its sequential N-user extension, and three
independent routes to the fidelities: closed forms, Monte Carlo over
Haar-random signals and exact outcome enumeration.
"""

from .qlinalg import PureState, matmul, trace, haar_random_state, haar_random_states
from .measurement import (
    ProbeConfig,
    MeasurementModel,
    gamma,
    probe_state,
    cd_gate,
    build_model,
    build_model_from_gate,
    apply_and_sample,
)
from .fidelity import (
    FidelityPoint,
    BoundReport,
    fidelity_per_state,
    average_fidelity_analytic,
    average_fidelity_banaszek,
    average_fidelity_monte_carlo,
    bound_check,
    max_transmission_fidelity,
    tradeoff_curve,
)
from .sequential import (
    ChainConfig,
    OutcomeSequence,
    CollectiveEstimate,
    EnumerationBudgetError,
    chain_kraus,
    enumerate_outcomes,
    marginal_outcome_distribution,
    transmission_fidelity_chain,
    transmission_fidelity_closed_form,
    estimation_fidelity_single_measure,
    estimation_fidelity_single_measure_chain,
    estimation_fidelity_collective,
    two_user_fidelities,
    two_user_closed_form,
    two_user_region,
    simulate_chain_trajectories,
)

__version__ = "0.1.0"
