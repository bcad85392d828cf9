"""Linear programs over exact rationals.

Two LPs are built here: the node-indexed LP over the laminar tree
(openings x(i) per node, assignments y(i, j) per node/job pair, with
subtree lower-bound constraints driven by small exact searches) and the
time-indexed LP with per-interval ceiling constraints.  ``solve`` is a
two-phase tableau simplex over ``fractions.Fraction`` with Bland's
lowest-index anti-cycling rule, so results are exact and deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from .errors import InfeasibleSubinstance
from .feasibility import check_slots
from .instance import Instance, Job, LaminarTree

__all__ = [
    "OPTIMAL",
    "INFEASIBLE",
    "UNBOUNDED",
    "LpProblem",
    "LpSolution",
    "NodeLp",
    "NodeSolution",
    "TimeIndexedLp",
    "TimeIndexedSolution",
    "solve",
    "build_node_lp",
    "build_cw_lp",
    "opt_lower_bound",
    "q_forced",
]

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

LE, GE, EQ = "<=", ">=", "=="


@dataclass(frozen=True)
class LpVariable:
    name: str
    lb: Fraction = Fraction(0)
    ub: Fraction | None = None


@dataclass
class _Constraint:
    coeffs: dict[str, Fraction]
    rel: str
    rhs: Fraction


class LpProblem:
    """A minimization LP: variables with bounds, linear constraints."""

    def __init__(self):
        self.variables: list[LpVariable] = []
        self.constraints: list[_Constraint] = []
        self.objective: dict[str, Fraction] = {}
        self._index: dict[str, int] = {}

    def add_variable(self, name: str, lb=0, ub=None) -> str:
        if name in self._index:
            raise ValueError(f"variable {name!r} already declared")
        self._index[name] = len(self.variables)
        ubf = None if ub is None else Fraction(ub)
        self.variables.append(LpVariable(name, Fraction(lb), ubf))
        return name

    def add_constraint(self, coeffs: dict[str, Fraction], rel: str, rhs) -> None:
        if rel not in (LE, GE, EQ):
            raise ValueError(f"unknown relation {rel!r}")
        for name in coeffs:
            if name not in self._index:
                raise ValueError(f"constraint references undeclared variable {name!r}")
        self.constraints.append(
            _Constraint({k: Fraction(v) for k, v in coeffs.items()}, rel, Fraction(rhs))
        )

    def set_objective(self, coeffs: dict[str, Fraction]) -> None:
        for name in coeffs:
            if name not in self._index:
                raise ValueError(f"objective references undeclared variable {name!r}")
        self.objective = {k: Fraction(v) for k, v in coeffs.items()}

    def dumps(self) -> str:
        """Debug listing; not a stable format."""
        lines = []
        for v in self.variables:
            ub = "inf" if v.ub is None else str(v.ub)
            lines.append(f"var {v.name} in [{v.lb}, {ub}]")
        obj = " + ".join(f"{c}*{n}" for n, c in self.objective.items())
        lines.append(f"min {obj}")
        for c in self.constraints:
            terms = " + ".join(f"{v}*{n}" for n, v in c.coeffs.items())
            lines.append(f"st {terms} {c.rel} {c.rhs}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class LpSolution:
    status: str
    value: Fraction | None
    assignment: dict[str, Fraction]

    def __getitem__(self, name: str) -> Fraction:
        return self.assignment[name]


def solve(lp: LpProblem) -> LpSolution:
    """Exact two-phase simplex with Bland's lowest-index pivot rule."""
    tableau = _Tableau(lp)
    if not tableau.phase_one():
        return LpSolution(INFEASIBLE, None, {})
    if not tableau.phase_two():
        return LpSolution(UNBOUNDED, None, {})
    assignment = tableau.extract()
    value = sum(
        (c * assignment[n] for n, c in lp.objective.items()), start=Fraction(0)
    )
    return LpSolution(OPTIMAL, value, assignment)


_ZERO = Fraction(0)
_ONE = Fraction(1)


class _Tableau:
    """Dense simplex tableau: structural columns, slacks, artificials, rhs."""

    def __init__(self, lp: LpProblem):
        self.lp = lp
        nvar = len(lp.variables)
        lb = {v.name: v.lb for v in lp.variables}
        col = {v.name: i for i, v in enumerate(lp.variables)}

        rows: list[tuple[list[Fraction], str, Fraction]] = []
        for c in lp.constraints:
            dense = [_ZERO] * nvar
            shift = _ZERO
            for name, coeff in c.coeffs.items():
                dense[col[name]] += coeff
                shift += coeff * lb[name]
            rows.append((dense, c.rel, c.rhs - shift))
        for v in lp.variables:
            if v.ub is not None:
                dense = [_ZERO] * nvar
                dense[col[v.name]] = _ONE
                rows.append((dense, LE, v.ub - v.lb))

        # flip rows to nonnegative rhs, then add slack and artificial columns
        n_rows = len(rows)
        self.n_struct = nvar
        slack_col: list[int | None] = []
        ncols = nvar
        for i, (dense, rel, rhs) in enumerate(rows):
            if rhs < 0:
                dense = [-a for a in dense]
                rhs = -rhs
                rel = {LE: GE, GE: LE, EQ: EQ}[rel]
                rows[i] = (dense, rel, rhs)
            if rel in (LE, GE):
                slack_col.append(ncols)
                ncols += 1
            else:
                slack_col.append(None)
        self.artificial_start = ncols
        art_col: list[int | None] = []
        for dense, rel, rhs in rows:
            if rel == LE:
                art_col.append(None)
            else:
                art_col.append(ncols)
                ncols += 1
        self.ncols = ncols

        self.rows: list[list[Fraction]] = []
        self.basis: list[int] = []
        for i, (dense, rel, rhs) in enumerate(rows):
            row = dense + [_ZERO] * (ncols - nvar) + [rhs]
            if slack_col[i] is not None:
                row[slack_col[i]] = _ONE if rel == LE else -_ONE
            if art_col[i] is not None:
                row[art_col[i]] = _ONE
                self.basis.append(art_col[i])
            else:
                self.basis.append(slack_col[i])
            self.rows.append(row)
        self.n_rows = len(self.rows)

    def _pivot(self, r: int, c: int, cost: list[Fraction]) -> None:
        row = self.rows[r]
        piv = row[c]
        if piv != 1:
            inv = _ONE / piv
            self.rows[r] = row = [a * inv if a else a for a in row]
        for other in self.rows:
            if other is row:
                continue
            f = other[c]
            if f:
                for j, b in enumerate(row):
                    if b:
                        other[j] -= f * b
        f = cost[c]
        if f:
            for j, b in enumerate(row):
                if b:
                    cost[j] -= f * b
        self.basis[r] = c

    def _iterate(self, cost: list[Fraction], allowed: int) -> bool:
        """Bland pivoting until optimal (True) or unbounded (False)."""
        while True:
            enter = -1
            for j in range(allowed):
                if cost[j] < 0:
                    enter = j
                    break
            if enter < 0:
                return True
            leave = -1
            best: Fraction | None = None
            for r in range(self.n_rows):
                a = self.rows[r][enter]
                if a > 0:
                    ratio = self.rows[r][-1] / a
                    if best is None or ratio < best or (
                        ratio == best and self.basis[r] < self.basis[leave]
                    ):
                        best = ratio
                        leave = r
            if leave < 0:
                return False
            self._pivot(leave, enter, cost)

    def phase_one(self) -> bool:
        if self.artificial_start == self.ncols:
            return True
        cost = [_ZERO] * (self.ncols + 1)
        for j in range(self.artificial_start, self.ncols):
            cost[j] = _ONE
        for r, b in enumerate(self.basis):
            if b >= self.artificial_start:
                for j, a in enumerate(self.rows[r]):
                    if a:
                        cost[j] -= a
        if not self._iterate(cost, self.ncols):
            raise AssertionError("phase-1 objective is bounded by construction")
        if -cost[-1] != 0:
            return False
        # drive leftover zero-value artificials out of the basis
        for r in range(self.n_rows):
            if self.basis[r] >= self.artificial_start:
                pivot_col = next(
                    (j for j in range(self.artificial_start) if self.rows[r][j]), None
                )
                if pivot_col is not None:
                    self._pivot(r, pivot_col, cost)
        return True

    def phase_two(self) -> bool:
        col = {v.name: i for i, v in enumerate(self.lp.variables)}
        cost = [_ZERO] * (self.ncols + 1)
        for name, coeff in self.lp.objective.items():
            cost[col[name]] += coeff
        for r, b in enumerate(self.basis):
            f = cost[b]
            if f:
                for j, a in enumerate(self.rows[r]):
                    if a:
                        cost[j] -= f * a
        # artificial columns stay out: scan stops before artificial_start
        return self._iterate(cost, self.artificial_start)

    def extract(self) -> dict[str, Fraction]:
        values = [_ZERO] * self.ncols
        for r, b in enumerate(self.basis):
            if b >= self.artificial_start and self.rows[r][-1] != 0:
                raise AssertionError("artificial variable basic with nonzero value")
            values[b] = self.rows[r][-1]
        return {
            v.name: values[i] + v.lb for i, v in enumerate(self.lp.variables)
        }


# ---------------------------------------------------------------------------
# Node-indexed LP over the laminar tree


class NodeLp(LpProblem):
    """LP over tree nodes: x(i) openings and y(i, j) job assignments."""

    def __init__(self, tree: LaminarTree):
        super().__init__()
        self.tree = tree
        self.x_name: list[str] = []
        self.y_name: dict[tuple[int, str], str] = {}
        self.opt_bounds: list[int] = []

    def view(self, sol: LpSolution) -> "NodeSolution":
        if sol.status != OPTIMAL:
            raise ValueError(f"cannot view a {sol.status} solution")
        x = tuple(sol[self.x_name[i]] for i in range(self.tree.m))
        y = {key: sol[name] for key, name in self.y_name.items()}
        return NodeSolution(x_vec=x, y_map=y)


@dataclass(frozen=True)
class NodeSolution:
    """Node-LP solution values with x(i) / y(i, j) accessors."""

    x_vec: tuple[Fraction, ...]
    y_map: dict[tuple[int, str], Fraction]

    def x(self, i: int) -> Fraction:
        return self.x_vec[i]

    def y(self, i: int, job_id: str) -> Fraction:
        return self.y_map.get((i, job_id), _ZERO)

    @property
    def objective(self) -> Fraction:
        return sum(self.x_vec, start=_ZERO)


def opt_lower_bound(tree: LaminarTree, inst: Instance, i: int) -> int:
    """Smallest open-slot count for node i's subtree jobs, capped at 3.

    Decided by explicit slot searches inside the node's interval, with
    the subtree jobs alone.  Raises InfeasibleSubinstance when even the
    whole interval cannot host them.
    """
    jobs = tree.jobs_under(i)
    node = tree.nodes[i]
    interval = range(node.start, node.end)
    if not check_slots(interval, inst, jobs=jobs):
        raise InfeasibleSubinstance(
            f"jobs under node {i} do not fit interval [{node.start}, {node.end})"
        )
    work = sum(j.length for j in jobs)
    longest = max(j.length for j in jobs)
    if longest == 1 and work <= inst.g:
        for t in interval:
            if check_slots([t], inst, jobs=jobs):
                return 1
    if longest <= 2 and work <= 2 * inst.g:
        for a in interval:
            for b in range(a + 1, node.end):
                if check_slots([a, b], inst, jobs=jobs):
                    return 2
    return 3


def build_node_lp(tree: LaminarTree, inst: Instance) -> NodeLp:
    """Node LP: job coverage, node capacity, pool bounds, per-pair caps,
    and subtree lower bounds wherever the exact sub-search proves 2 or 3
    slots necessary.  y variables exist only for admissible (node, job)
    pairs; inadmissible pairs are fixed to zero by omission.
    """
    lp = NodeLp(tree)
    jdx = {job.id: idx for idx, job in enumerate(inst.jobs)}
    for i in range(tree.m):
        lp.x_name.append(lp.add_variable(f"x{i}"))
    for job in inst.jobs:
        for i in tree.descendants(tree.node_of_job[job.id]):
            lp.y_name[(i, job.id)] = lp.add_variable(f"y{i}_{jdx[job.id]}")

    for job in inst.jobs:
        coeffs = {
            lp.y_name[(i, job.id)]: 1
            for i in tree.descendants(tree.node_of_job[job.id])
        }
        lp.add_constraint(coeffs, GE, job.length)
    admissible: dict[int, list[Job]] = {
        i: sorted(tree.jobs_at_or_above(i), key=lambda j: jdx[j.id])
        for i in range(tree.m)
    }
    for i in range(tree.m):
        coeffs = {lp.y_name[(i, job.id)]: 1 for job in admissible[i]}
        coeffs[lp.x_name[i]] = -inst.g
        lp.add_constraint(coeffs, LE, 0)
    for i, node in enumerate(tree.nodes):
        lp.add_constraint({lp.x_name[i]: 1}, LE, node.L)
    for i in range(tree.m):
        for job in admissible[i]:
            lp.add_constraint(
                {lp.y_name[(i, job.id)]: 1, lp.x_name[i]: -1}, LE, 0
            )
    for i in range(tree.m):
        bound = opt_lower_bound(tree, inst, i)
        lp.opt_bounds.append(bound)
        subtree = {lp.x_name[k]: 1 for k in tree.descendants(i)}
        if bound >= 2:
            lp.add_constraint(subtree, GE, 2)
        if bound >= 3:
            lp.add_constraint(dict(subtree), GE, 3)
    lp.set_objective({name: 1 for name in lp.x_name})
    return lp


# ---------------------------------------------------------------------------
# Time-indexed LP with interval ceiling constraints


def q_forced(job: Job, interval: tuple[int, int]) -> int:
    """Slots the job must occupy inside the interval even if everything
    outside it were open: max(0, p - |window \\ interval|)."""
    t1, t2 = interval
    overlap = max(0, min(job.deadline, t2) - max(job.release, t1))
    outside = (job.deadline - job.release) - overlap
    return max(0, job.length - outside)


class TimeIndexedLp(LpProblem):
    """Slot-indexed LP: x(t) in [0, 1] per slot, y(t, j) per admissible pair."""

    def __init__(self, inst: Instance):
        super().__init__()
        self.instance = inst
        self.x_name: list[str] = []
        self.y_name: dict[tuple[int, str], str] = {}

    def view(self, sol: LpSolution) -> "TimeIndexedSolution":
        if sol.status != OPTIMAL:
            raise ValueError(f"cannot view a {sol.status} solution")
        x = tuple(sol[self.x_name[t]] for t in range(self.instance.horizon))
        y = {key: sol[name] for key, name in self.y_name.items()}
        return TimeIndexedSolution(x_vec=x, y_map=y)


@dataclass(frozen=True)
class TimeIndexedSolution:
    x_vec: tuple[Fraction, ...]
    y_map: dict[tuple[int, str], Fraction]

    def x(self, t: int) -> Fraction:
        return self.x_vec[t]

    def y(self, t: int, job_id: str) -> Fraction:
        return self.y_map.get((t, job_id), _ZERO)

    @property
    def objective(self) -> Fraction:
        return sum(self.x_vec, start=_ZERO)


def build_cw_lp(inst: Instance) -> TimeIndexedLp:
    """Time-indexed LP with a ceiling constraint for every interval.

    Works for any instance (windows need not be laminar): job coverage,
    per-slot capacity, y <= x, x <= 1, and for each interval [t1, t2) the
    lower bound ceil(sum_j q_j(I) / g) on the open mass inside it.
    """
    lp = TimeIndexedLp(inst)
    T = inst.horizon
    jdx = {job.id: idx for idx, job in enumerate(inst.jobs)}
    for t in range(T):
        lp.x_name.append(lp.add_variable(f"x{t}", lb=0, ub=1))
    for job in inst.jobs:
        for t in range(job.release, job.deadline):
            lp.y_name[(t, job.id)] = lp.add_variable(f"y{t}_{jdx[job.id]}")

    for job in inst.jobs:
        coeffs = {
            lp.y_name[(t, job.id)]: 1 for t in range(job.release, job.deadline)
        }
        lp.add_constraint(coeffs, GE, job.length)
    for t in range(T):
        coeffs = {
            lp.y_name[(t, job.id)]: 1
            for job in inst.jobs
            if job.release <= t < job.deadline
        }
        if coeffs:
            coeffs[lp.x_name[t]] = -inst.g
            lp.add_constraint(coeffs, LE, 0)
    for job in inst.jobs:
        for t in range(job.release, job.deadline):
            lp.add_constraint(
                {lp.y_name[(t, job.id)]: 1, lp.x_name[t]: -1}, LE, 0
            )
    for t1 in range(T):
        for t2 in range(t1 + 1, T + 1):
            demand = sum(q_forced(job, (t1, t2)) for job in inst.jobs)
            lp.add_constraint(
                {lp.x_name[t]: 1 for t in range(t1, t2)},
                GE,
                ceil(Fraction(demand, inst.g)),
            )
    lp.set_objective({name: 1 for name in lp.x_name})
    return lp
