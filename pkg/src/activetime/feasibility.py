"""Feasibility of integral openings via a 4-layer max-flow network.

An opening assigns each tree node an integer number of open slots drawn
from its private pool.  It is feasible iff the max flow on the network
source -> jobs -> tree nodes -> sink meets the total processing demand;
an infeasible opening yields a violated covering inequality over some job
subset, extracted from the canonical min cut.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from . import _kernels
from .errors import SubsetLimitExceeded
from .instance import Instance, Job, LaminarTree

__all__ = [
    "Schedule",
    "CutCertificate",
    "check_opening",
    "check_slots",
    "verify_cut_condition",
    "validate_schedule",
    "serialize_schedule",
]


@dataclass(frozen=True)
class Schedule:
    """Concrete slot assignment: job id -> distinct slots, one unit each."""

    assignment: dict[str, tuple[int, ...]]
    active_slots: tuple[int, ...]


@dataclass(frozen=True)
class CutCertificate:
    """Witness of infeasibility: a job subset whose covering inequality fails.

    ``per_node[i]`` is min(|J'(Anc(i))|, g); the certificate guarantees
    ``lhs = sum_i per_node[i] * x_tilde[i] < rhs = total work of J'``.
    """

    job_subset: tuple[str, ...]
    per_node: tuple[int, ...]
    lhs: int
    rhs: int


def _opening_vector(opening, m: int) -> list[int]:
    x = getattr(opening, "x_tilde", opening)
    if isinstance(x, Mapping):
        return [int(x.get(i, 0)) for i in range(m)]
    return [int(v) for v in x]


def check_opening(opening, tree: LaminarTree, inst: Instance) -> Schedule | CutCertificate:
    """Decide an integral opening; extract a schedule or a cut certificate.

    ``opening`` may be an IntegralOpening or a plain per-node sequence or
    mapping of integers.  Requires 0 <= x_tilde(i) <= L(i) for every node.
    """
    x = _opening_vector(opening, tree.m)
    for node in tree.nodes:
        if not 0 <= x[node.index] <= node.L:
            raise ValueError(
                f"opening {x[node.index]} outside [0, {node.L}] at node {node.index}"
            )
    jobs = inst.jobs
    adj = [list(tree.descendants(tree.node_of_job[j.id])) for j in jobs]
    p = [j.length for j in jobs]
    value, flows, cut_jobs = _kernels.node_opening_flow(p, adj, x, inst.g)

    if value == inst.total_work:
        return _materialize(jobs, adj, flows, x, tree)

    subset = tuple(jobs[j].id for j in range(len(jobs)) if cut_jobs[j])
    chosen = set(subset)
    per_node = []
    for i in range(tree.m):
        assignable = sum(1 for j in tree.jobs_at_or_above(i) if j.id in chosen)
        per_node.append(min(assignable, inst.g))
    lhs = sum(per_node[i] * x[i] for i in range(tree.m))
    rhs = sum(j.length for j in jobs if j.id in chosen)
    assert lhs < rhs, "min cut did not produce a violated covering inequality"
    return CutCertificate(job_subset=subset, per_node=tuple(per_node), lhs=lhs, rhs=rhs)


def _materialize(jobs, adj, flows, x, tree: LaminarTree) -> Schedule:
    """Turn node-level flows into concrete slots.

    Each node opens the earliest x_tilde(i) slots of its private pool and
    deals flow units to them round-robin: a job's units land on distinct
    slots because its flow into a node is capped by the node's opening,
    and no slot exceeds g units because node throughput is capped by
    g * opening.
    """
    open_slots = {i: tree.nodes[i].pool[: x[i]] for i in range(tree.m) if x[i] > 0}
    cursor = {i: 0 for i in open_slots}
    assignment: dict[str, tuple[int, ...]] = {}
    loads: dict[int, list[str]] = {}
    for jdx, job in enumerate(jobs):
        mine: list[int] = []
        for pos, i in enumerate(adj[jdx]):
            f = flows[jdx][pos]
            if f == 0:
                continue
            slots = open_slots[i]
            start = cursor[i]
            for off in range(f):
                slot = slots[(start + off) % x[i]]
                mine.append(slot)
                loads.setdefault(slot, []).append(job.id)
            cursor[i] = start + f
        assignment[job.id] = tuple(sorted(mine))
    return Schedule(assignment=assignment, active_slots=tuple(sorted(loads)))


def check_slots(slots, inst: Instance, jobs: Sequence[Job] | None = None) -> bool:
    """Flow test for an explicit set of open time slots.

    ``jobs`` restricts the test to a subset of the instance's jobs (used
    for per-subtree lower bounds); default is every job.
    """
    jobs = inst.jobs if jobs is None else jobs
    p = [j.length for j in jobs]
    r = [j.release for j in jobs]
    d = [j.deadline for j in jobs]
    return _kernels.check_slots_flow(p, r, d, inst.g, tuple(sorted(slots)))


def verify_cut_condition(opening, tree: LaminarTree, inst: Instance, max_subset_size: int) -> bool:
    """Cross-check the flow verdict against exhaustive subset enumeration.

    Evaluates the covering inequality for every job subset J' and returns
    whether "no subset violated" matches check_opening's verdict.
    """
    n = len(inst.jobs)
    if n > max_subset_size:
        raise SubsetLimitExceeded(f"{n} jobs exceeds subset limit {max_subset_size}")
    x = _opening_vector(opening, tree.m)
    # per node: bitmask of jobs assignable to it (window node is an ancestor)
    job_index = {job.id: idx for idx, job in enumerate(inst.jobs)}
    node_mask = []
    for i in range(tree.m):
        mask = 0
        for job in tree.jobs_at_or_above(i):
            mask |= 1 << job_index[job.id]
        node_mask.append(mask)
    weighted = [(node_mask[i], x[i]) for i in range(tree.m) if x[i] > 0]
    p = [j.length for j in inst.jobs]

    all_hold = True
    for subset in range(1 << n):
        rhs = sum(p[j] for j in range(n) if subset >> j & 1)
        lhs = 0
        for mask, xt in weighted:
            lhs += min(bin(subset & mask).count("1"), inst.g) * xt
            if lhs >= rhs:
                break
        if lhs < rhs:
            all_hold = False
            break
    flow_feasible = isinstance(check_opening(x, tree, inst), Schedule)
    return all_hold == flow_feasible


def validate_schedule(schedule: Schedule, inst: Instance) -> None:
    """Independent schedule validator; raises ValueError on any violation."""
    loads: dict[int, int] = {}
    for job in inst.jobs:
        slots = schedule.assignment.get(job.id, ())
        if len(slots) != job.length:
            raise ValueError(f"job {job.id!r} got {len(slots)} slots, needs {job.length}")
        if len(set(slots)) != len(slots):
            raise ValueError(f"job {job.id!r} repeats a slot")
        for t in slots:
            if not job.release <= t < job.deadline:
                raise ValueError(f"job {job.id!r} scheduled at {t} outside its window")
            loads[t] = loads.get(t, 0) + 1
    for t, load in loads.items():
        if load > inst.g:
            raise ValueError(f"slot {t} hosts {load} jobs, capacity {inst.g}")
    if set(loads) != set(schedule.active_slots):
        raise ValueError("active_slots does not match the slots carrying jobs")


def serialize_schedule(schedule: Schedule) -> str:
    """One line per active slot: ``slot <t>: <job ids...>``, slots ascending."""
    by_slot: dict[int, list[str]] = {t: [] for t in schedule.active_slots}
    for job_id, slots in schedule.assignment.items():
        for t in slots:
            by_slot[t].append(job_id)
    lines = [f"slot {t}: {' '.join(by_slot[t])}" for t in sorted(by_slot)]
    return "\n".join(lines) + "\n"
