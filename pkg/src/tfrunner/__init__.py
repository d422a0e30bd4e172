"""Exact frequency structure, torus approximation, lonely runners and Gabor independence."""

__version__ = "0.1.0"

from .errors import (
    BadSequence,
    BudgetExhausted,
    DetNotOne,
    InputError,
    PreconditionNotMet,
    ScanFailure,
    SmallRelation,
    TFRunnerError,
)
from .gabor import (
    PointSet,
    TFPoint,
    apply_metaplectic,
    dependence_residual,
    gram_matrix,
    independence_score,
    normalize_origin,
)
from .hrt import (
    CaseTag,
    Verdict,
    VerifyConfig,
    WitnessReport,
    case4_trig_poly_check,
    case5_feasibility,
    classify_4pt,
    khinchin_average_check,
    perturbation_phis,
    refute_dependence,
    verify_4pt,
    verify_theorem_1_4,
)
from .models import ExpPure, Gaussian, HalfLine, OneSidedExpDecay, Tabulated, TwoPlusCos, model_from_json
from .rational import (
    ExactReal,
    RealBasis,
    RelationLattice,
    affine_dimension,
    float_relation_guess,
    is_proportional_123,
    relation_lattice,
    subgroup_basis,
)
from .runners import RunnerInstance, find_lonely_time, runner_margin, select_spectator, sign_window
from .torus import ApproxTask, classify_sequence, kronecker_witness, torus_norm
