"""Nested (laminar-window) active-time scheduling toolkit.

Pipeline: exact node-indexed LP -> push-down transform -> 9/5 rounding ->
max-flow feasibility and schedule extraction.  Ships with a brute-force
optimum oracle, integrality-gap and random instance generators, and the
prefix-sum-cover hardness transforms.
"""

from . import _kernels
from .errors import ActiveTimeError
from .feasibility import (
    CutCertificate,
    Schedule,
    check_opening,
    check_slots,
    serialize_schedule,
    validate_schedule,
    verify_cut_condition,
)
from .generators import gap_fractional_witness, gap_instance, random_laminar
from .instance import (
    Instance,
    Job,
    LaminarTree,
    build_tree,
    parse_instance,
    serialize_instance,
)
from .lp import build_cw_lp, build_node_lp, opt_lower_bound, q_forced, solve
from .oracle import is_minimal_feasible, optimal_active_time
from .pipeline import PipelineResult, run_pipeline
from .rounding import IntegralOpening, certify_ratio, round_opening
from .transform import TransformedSolution, push_down, topmost_open

__version__ = "0.1.0"

kernel_backend = _kernels.backend
