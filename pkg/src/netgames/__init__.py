"""Equilibria, social optima, and network design for LQ network games."""

__version__ = "0.1.0"

from .errors import (
    DimensionMismatch,
    GameFileError,
    GammaEvaluationError,
    InfeasibleDesign,
    InsufficientData,
    MaxItersExceeded,
    NetgamesError,
    NoConvergence,
    NoSolutionFound,
    NotAnEquilibrium,
    NotSymmetric,
    SingularSystem,
    StepSelectionFailed,
    TooLarge,
)
from .games import (
    TOL_NONNEG,
    ActionProfile,
    AdjacencyMatrix,
    GammaFamily,
    NetworkGame,
    PublicGoodsGame,
    aggregate,
    cost_lq,
    cost_pg,
    grad_F,
    grad_W,
    social_cost,
    social_cost_pg,
)
from .equilibrium import (
    EquilibriumResult,
    solve_ne_interior,
    solve_ne_pg,
    solve_social_interior,
    solve_social_pg,
    solve_vi,
)
from .design import (
    CoincidenceCheck,
    DesignProblem,
    DesignRun,
    DesignSolution,
    DeterminantReport,
    PgCoincidenceCheck,
    check_coincidence,
    design_solve,
    four_player_symmetric_example,
    necessary_condition_det,
    pg_coincidence,
    potential_check,
    symmetric_design,
)
from .certificates import (
    Certificate,
    all_certificates,
    build_gamma_matrix,
    cert_block_p,
    cert_continuity,
    cert_gamma_p_matrix,
    cert_gershgorin,
    cert_strong_monotone,
    p_matrix_check,
    spectral_facts_selftest,
)
from .perturbation import (
    LipschitzCheck,
    SweepConfig,
    SweepReport,
    SweepRow,
    lipschitz_check,
    sweep,
)
from .random_networks import (
    ErConfig,
    ScanCounts,
    SingularityStats,
    WeightLaw,
    coincidence_feasibility_scan,
    sample_er,
    singularity_stats,
)
from .rationality import IrReport, PlayerRationality, ir_check
from .gamefile import (
    load_game,
    load_pattern,
    load_problem,
    parse_game,
    parse_pattern,
    parse_problem,
    save_game,
    save_problem,
)

__all__ = [
    "ActionProfile",
    "AdjacencyMatrix",
    "Certificate",
    "CoincidenceCheck",
    "DesignProblem",
    "DesignRun",
    "DesignSolution",
    "DeterminantReport",
    "DimensionMismatch",
    "EquilibriumResult",
    "ErConfig",
    "GameFileError",
    "GammaEvaluationError",
    "GammaFamily",
    "InfeasibleDesign",
    "InsufficientData",
    "IrReport",
    "LipschitzCheck",
    "MaxItersExceeded",
    "NetgamesError",
    "NetworkGame",
    "NoConvergence",
    "NoSolutionFound",
    "NotAnEquilibrium",
    "NotSymmetric",
    "PgCoincidenceCheck",
    "PlayerRationality",
    "PublicGoodsGame",
    "ScanCounts",
    "SingularSystem",
    "SingularityStats",
    "StepSelectionFailed",
    "SweepConfig",
    "SweepReport",
    "SweepRow",
    "TOL_NONNEG",
    "TooLarge",
    "WeightLaw",
    "aggregate",
    "all_certificates",
    "build_gamma_matrix",
    "cert_block_p",
    "cert_continuity",
    "cert_gamma_p_matrix",
    "cert_gershgorin",
    "cert_strong_monotone",
    "check_coincidence",
    "coincidence_feasibility_scan",
    "cost_lq",
    "cost_pg",
    "design_solve",
    "four_player_symmetric_example",
    "grad_F",
    "grad_W",
    "ir_check",
    "lipschitz_check",
    "load_game",
    "load_pattern",
    "load_problem",
    "necessary_condition_det",
    "p_matrix_check",
    "parse_game",
    "parse_pattern",
    "parse_problem",
    "pg_coincidence",
    "potential_check",
    "sample_er",
    "save_game",
    "save_problem",
    "singularity_stats",
    "social_cost",
    "social_cost_pg",
    "solve_ne_interior",
    "solve_ne_pg",
    "solve_social_interior",
    "solve_social_pg",
    "solve_vi",
    "spectral_facts_selftest",
    "sweep",
    "symmetric_design",
]
