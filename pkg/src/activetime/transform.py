"""Push-down transformation of a fractional solution and its topmost open set.

Fractional openings are repeatedly moved from ancestors to unsaturated
descendants (rescaling the job assignments along), until any node with an
unsaturated strict descendant carries no opening.  On such a solution the
topmost nodes with positive opening form an antichain whose strict
descendants are fully open, strict ancestors empty, covering every leaf.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InfeasibleInput, PropertyViolation
from .instance import LaminarTree

__all__ = ["TransformedSolution", "push_down", "topmost_open"]

_ZERO = Fraction(0)


@dataclass(frozen=True)
class TransformedSolution:
    """A pushed-down solution plus its topmost open node set."""

    x_vec: tuple[Fraction, ...]
    y_map: dict[tuple[int, str], Fraction]
    topmost: tuple[int, ...]

    def x(self, i: int) -> Fraction:
        return self.x_vec[i]

    def y(self, i: int, job_id: str) -> Fraction:
        return self.y_map.get((i, job_id), _ZERO)

    @property
    def objective(self) -> Fraction:
        return sum(self.x_vec, start=_ZERO)


def _check_lp_feasible(x: list[Fraction], y: dict, tree: LaminarTree) -> None:
    """Exact check of every node-LP constraint; raises InfeasibleInput."""
    inst = tree.instance
    for i, xi in enumerate(x):
        if xi < 0:
            raise InfeasibleInput(f"x({i}) = {xi} < 0")
        if xi > tree.nodes[i].L:
            raise InfeasibleInput(f"x({i}) = {xi} exceeds pool size {tree.nodes[i].L}")
    admissible = {
        (i, job.id) for i in range(tree.m) for job in tree.jobs_at_or_above(i)
    }
    for (i, job_id), val in y.items():
        if (i, job_id) not in admissible:
            raise InfeasibleInput(f"y({i}, {job_id!r}) set on an inadmissible pair")
        if val < 0:
            raise InfeasibleInput(f"y({i}, {job_id!r}) = {val} < 0")
        if val > x[i]:
            raise InfeasibleInput(f"y({i}, {job_id!r}) = {val} exceeds x({i}) = {x[i]}")
    for job in inst.jobs:
        covered = sum(
            (y.get((i, job.id), _ZERO) for i in tree.descendants(tree.node_of_job[job.id])),
            start=_ZERO,
        )
        if covered < job.length:
            raise InfeasibleInput(f"job {job.id!r} covered {covered} < {job.length}")
    for i in range(tree.m):
        load = sum(
            (y.get((i, job.id), _ZERO) for job in tree.jobs_at_or_above(i)),
            start=_ZERO,
        )
        if load > inst.g * x[i]:
            raise InfeasibleInput(f"node {i} load {load} exceeds g*x = {inst.g * x[i]}")


def push_down(sol, tree: LaminarTree, validate: bool = True) -> TransformedSolution:
    """Move fractional openings downward until the lemma property holds.

    Targets are chosen deepest-first (ties by pre-order index) and drained
    from their deepest positive ancestor, so the result is deterministic.
    Each step zeroes the ancestor or saturates the descendant; with this
    order no node is targeted more than m times, hence at most m^2 steps.

    With ``validate`` (default) the input must satisfy every LP constraint
    exactly; the mechanics also run on synthetic vectors when disabled.
    """
    x = [Fraction(v) for v in sol.x_vec]
    y = {k: Fraction(v) for k, v in sol.y_map.items() if v != 0}
    if validate:
        _check_lp_feasible(x, y, tree)

    by_depth = sorted(range(tree.m), key=lambda i: (-tree.nodes[i].depth, i))
    steps = 0
    while True:
        target = None
        for i in by_depth:
            if x[i] < tree.nodes[i].L and any(
                x[a] > 0 for a in tree.strict_ancestors(i)
            ):
                target = i
                break
        if target is None:
            break
        donor = next(a for a in tree.strict_ancestors(target) if x[a] > 0)
        theta = min(tree.nodes[target].L - x[target], x[donor])
        old = x[donor]
        x[donor] -= theta
        x[target] += theta
        scale = x[donor] / old
        move = theta / old
        for job in tree.jobs_at_or_above(donor):
            amount = y.get((donor, job.id), _ZERO)
            if amount == 0:
                continue
            y[(donor, job.id)] = scale * amount
            y[(target, job.id)] = y.get((target, job.id), _ZERO) + move * amount
        steps += 1
        assert steps <= tree.m * tree.m, "push-down exceeded its step bound"

    topmost = _topmost(x, tree)
    return TransformedSolution(
        x_vec=tuple(x),
        y_map={k: v for k, v in y.items() if v != 0},
        topmost=tuple(topmost),
    )


def _topmost(x, tree: LaminarTree) -> list[int]:
    return [
        i
        for i in range(tree.m)
        if x[i] > 0 and all(x[a] == 0 for a in tree.strict_ancestors(i))
    ]


def topmost_open(sol, tree: LaminarTree) -> list[int]:
    """Topmost nodes with positive opening, in left-to-right interval order.

    Verifies the five structural properties of the set and names the
    failed one in PropertyViolation: it is an antichain of positive
    nodes whose strict descendants are saturated, strict ancestors empty,
    and whose subtrees cover every leaf.
    """
    x = list(sol.x_vec)
    topmost = _topmost(x, tree)
    for a in topmost:
        for b in topmost:
            if a != b and tree.is_ancestor(a, b):
                raise PropertyViolation("antichain", f"node {a} is an ancestor of {b}")
    covered = set()
    for i in topmost:
        covered.update(tree.descendants(i))
    for leaf in tree.leaves():
        if leaf not in covered:
            raise PropertyViolation("leaves-covered", f"leaf {leaf} not under the set")
    for i in topmost:
        if not x[i] > 0:
            raise PropertyViolation("positive", f"node {i} has x = {x[i]}")
    for i in topmost:
        for k in tree.strict_descendants(i):
            if x[k] != tree.nodes[k].L:
                raise PropertyViolation(
                    "descendants-saturated", f"node {k} has x = {x[k]} < L = {tree.nodes[k].L}"
                )
        for a in tree.strict_ancestors(i):
            if x[a] != 0:
                raise PropertyViolation("ancestors-empty", f"node {a} has x = {x[a]}")
    return topmost
