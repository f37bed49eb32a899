"""Clifford-group algebra and SIC-POVM fiducial search in prime and small dimensions."""

from .clifford_group import (
    ClassTable,
    CliffordElem,
    NoSolutionError,
    SLMat,
    canonical_to_zauner,
    clifford_trace,
    compose,
    conjugate,
    conjugator_to_zauner,
    enumerate_trace_classes,
    invert,
    is_canonical,
    kill_translation,
    sl2_order,
    t_count_formula,
    zauner,
)
from .fiducial import (
    FiducialCandidate,
    SicReport,
    build_povm,
    overlap_profile,
    search_fiducial,
    sic_deviation,
)
from .modnum import (
    consecutive_residue_count,
    count_curve_points,
    inverse_mod,
    legendre,
    legendre_pair_sum,
    residue_successor_sum,
    sqrt_mod,
)
from .pauli_rep import (
    EigenspaceDecomposition,
    displacement,
    eigenspaces,
    metaplectic_unitary,
    verify_intertwining,
    zauner_unitary,
)

__version__ = "0.1.0"
