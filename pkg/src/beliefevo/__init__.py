"""Belief functions on an evolution network: transformations, combination and fusion."""
from .combination import ReliabilityWeight, ccr, conflict_coefficient, dcr, drc, ecr, murphy_combine, partial_drc
from .core import (
    BeliefInterval,
    Frame,
    MassFunction,
    ProbabilityMassFunction,
    bel,
    classify_special,
    fc,
    interval,
    mass,
    pl,
    pmf,
    q,
    validate,
)
from .ben import BeliefEvolutionNetwork, build_ben, export_dot
from .errors import (
    BeliefError,
    FrameError,
    FrameMismatchError,
    InvalidMassError,
    ParseError,
    TotalConflictError,
)
from .evaluation import bi_criteria, correlation_coefficient, evaluate, jousselme_distance, pic
from .fusion import fcpt_pcr_multi, fcpt_pcr_pair, iterate_self_fusion, murphy_pmf
from .kernels import BACKEND
from .transform import betp, cuzzp, dsmp, fcp, fcpt, gptm, pnpl, prapl, transform

__version__ = "0.1.0"
