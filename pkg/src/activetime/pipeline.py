"""End-to-end solve: LP, push-down, rounding, feasibility extraction."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import Infeasible, InvariantViolation
from .feasibility import CutCertificate, Schedule, check_opening, validate_schedule
from .instance import Instance, LaminarTree, build_tree
from .lp import INFEASIBLE, OPTIMAL, NodeSolution, build_node_lp, solve
from .rounding import IntegralOpening, certify_ratio, round_opening
from .transform import TransformedSolution, push_down

__all__ = ["PipelineResult", "run_pipeline"]


@dataclass
class PipelineResult:
    instance: Instance
    tree: LaminarTree
    lp_value: Fraction
    solution: NodeSolution
    transformed: TransformedSolution
    opening: IntegralOpening
    ratio: Fraction
    schedule: Schedule


def run_pipeline(inst: Instance) -> PipelineResult:
    """Solve an instance end to end; the returned schedule is validated.

    Raises InfeasibleSubinstance/Infeasible on unschedulable instances and
    InvariantViolation if the rounded opening were ever rejected by the
    feasibility checker or exceeded the 9/5 ratio.
    """
    tree = build_tree(inst)
    problem = build_node_lp(tree, inst)
    raw = solve(problem)
    if raw.status == INFEASIBLE:
        raise Infeasible("node LP is infeasible")
    assert raw.status == OPTIMAL
    solution = problem.view(raw)
    transformed = push_down(solution, tree)
    if transformed.objective != raw.value:
        raise InvariantViolation(
            f"push-down changed the objective: {raw.value} -> {transformed.objective}"
        )
    opening = round_opening(transformed, tree)
    ratio = certify_ratio(opening)
    outcome = check_opening(opening, tree, inst)
    if isinstance(outcome, CutCertificate):
        raise InvariantViolation(
            f"rounded opening rejected by the feasibility checker: {outcome}"
        )
    validate_schedule(outcome, inst)
    return PipelineResult(
        instance=inst,
        tree=tree,
        lp_value=raw.value,
        solution=solution,
        transformed=transformed,
        opening=opening,
        ratio=ratio,
        schedule=outcome,
    )
