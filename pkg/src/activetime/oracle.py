"""Brute-force optimal active-time solver for small instances.

Ground truth for everything else: searches slot subsets of increasing
size and returns the first (lexicographically smallest) feasible witness.
Two exact prunings keep the search tractable without changing the
result: slots covered by no window never appear in a minimum witness,
and slots of a window whose job fills it completely appear in every
feasible set.
"""

from __future__ import annotations

from math import ceil

from . import _kernels
from .errors import BudgetExceeded, Infeasible
from .feasibility import check_slots
from .instance import Instance

__all__ = ["optimal_active_time", "is_minimal_feasible"]


def _window_intervals(inst: Instance) -> tuple[list[int], list[int], list[int]]:
    """Per distinct window: a counting lower bound on open slots inside it."""
    iv_a, iv_b, iv_need = [], [], []
    for a, b in sorted({j.window for j in inst.jobs}):
        inside = [j for j in inst.jobs if a <= j.release and j.deadline <= b]
        work = sum(j.length for j in inside)
        need = max(ceil(work / inst.g), max(j.length for j in inside))
        iv_a.append(a)
        iv_b.append(b)
        iv_need.append(need)
    return iv_a, iv_b, iv_need


def optimal_active_time(
    inst: Instance,
    slot_budget: int | None = None,
    max_horizon: int | None = 24,
) -> tuple[int, tuple[int, ...]]:
    """Minimum number of open slots plus the first witness of that size.

    Subset sizes are searched in increasing order; within a size, subsets
    of [0, horizon) in lexicographic order.  ``max_horizon`` guards the
    enumeration (pass None to lift it for structured instances whose
    forced slots shrink the search).  Raises Infeasible when even every
    slot open does not suffice, BudgetExceeded when the optimum would
    exceed ``slot_budget``.
    """
    T = inst.horizon
    if max_horizon is not None and T > max_horizon:
        raise ValueError(f"horizon {T} exceeds enumeration bound {max_horizon}")

    useful = sorted({t for j in inst.jobs for t in range(j.release, j.deadline)})
    forced: set[int] = set()
    for j in inst.jobs:
        if j.length == j.deadline - j.release:
            forced.update(range(j.release, j.deadline))
    free = [t for t in useful if t not in forced]

    if not check_slots(useful, inst):
        raise Infeasible("instance cannot be scheduled even with every slot open")

    p = [j.length for j in inst.jobs]
    r = [j.release for j in inst.jobs]
    d = [j.deadline for j in inst.jobs]
    iv_a, iv_b, iv_need = _window_intervals(inst)

    budget = len(useful) if slot_budget is None else slot_budget
    k_lo = max(ceil(inst.total_work / inst.g), len(forced), max(p))
    for k in range(k_lo, len(useful) + 1):
        if k > budget:
            raise BudgetExceeded(f"no feasible set within budget {budget}")
        witness = _kernels.search_extra(
            p, r, d, inst.g, tuple(sorted(forced)), tuple(free), k - len(forced),
            iv_a, iv_b, iv_need,
        )
        if witness is not None:
            return k, witness
    raise AssertionError("unreachable: the full useful slot set is feasible")


def is_minimal_feasible(slots, inst: Instance) -> bool:
    """True iff ``slots`` is feasible and every single-slot removal is not."""
    slots = sorted(slots)
    if not check_slots(slots, inst):
        raise ValueError("is_minimal_feasible requires a feasible slot set")
    return all(
        not check_slots([t for t in slots if t != drop], inst) for drop in slots
    )
