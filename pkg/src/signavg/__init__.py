"""Distributed averaging on directed signed networks.

Mirror graphs built from cofactor weights, cofactor-weighted Laplacian
potentials, structural-balance tests and simulation of five consensus
protocols.
"""

from .balance import BalanceResult, Verdict, structural_balance, verify_gauge
from .errors import SignedGraphError
from .graph import (
    GraphReport,
    SignedDigraph,
    degree_report,
    induced_unsigned,
    is_strongly_connected,
    laplacian,
    load_graph,
    parse_graph,
    validate,
)
from .mirror import MirrorArtifacts, cofactor_weights, left_null_residual, mirror_graph
from .potential import PotentialContext, classical_phi, phi_e_quadratic, phi_e_sum, weight_balanced_alpha
from .protocols import (
    FiniteTimeParams,
    FixedTimeParams,
    ProtocolKind,
    ProtocolSpec,
    make_control,
    odd_power,
    settling_bound,
)
from .simulator import Outcome, SimulationConfig, Trajectory, classify, integrate, predicted_limit, simulate
from .spectral import SpectrumClass, classify_spectrum, is_negated_hurwitz, null_space_dimension

__version__ = "0.1.0"
