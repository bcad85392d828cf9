"""Shared test helpers: small builders and independent checkers."""

from fractions import Fraction
from itertools import combinations

from activetime.errors import GenerationFailed
from activetime.generators import random_laminar
from activetime.instance import Instance, Job


def inst(g, *jobs):
    """Instance from (id, r, d, p) tuples."""
    return Instance(g=g, jobs=tuple(Job(*j) for j in jobs))


def random_corpus(count, first_seed=1, **kwargs):
    """The first ``count`` feasible seeded instances at the given parameters."""
    out = []
    seed = first_seed
    while len(out) < count:
        try:
            out.append((seed, random_laminar(seed, **kwargs)))
        except GenerationFailed:
            pass
        seed += 1
    return out


def evaluate_lp(problem, assignment):
    """Exact residual check of every constraint at a full assignment."""
    for c in problem.constraints:
        lhs = sum(
            (Fraction(v) * assignment[name] for name, v in c.coeffs.items()),
            start=Fraction(0),
        )
        if c.rel == "<=" and not lhs <= c.rhs:
            return f"{c.coeffs} <= {c.rhs} violated: lhs {lhs}"
        if c.rel == ">=" and not lhs >= c.rhs:
            return f"{c.coeffs} >= {c.rhs} violated: lhs {lhs}"
        if c.rel == "==" and lhs != c.rhs:
            return f"{c.coeffs} == {c.rhs} violated: lhs {lhs}"
    for v in problem.variables:
        val = assignment[v.name]
        if val < v.lb or (v.ub is not None and val > v.ub):
            return f"{v.name} = {val} outside [{v.lb}, {v.ub}]"
    return None


def brute_force_schedule_exists(inst_, slots):
    """Backtracking scheduler, independent of the flow machinery.

    Assigns jobs one by one to combinations of open slots inside their
    windows, tracking per-slot loads.
    """
    slots = sorted(slots)
    loads = {t: 0 for t in slots}

    def place(idx):
        if idx == len(inst_.jobs):
            return True
        job = inst_.jobs[idx]
        options = [
            t for t in slots
            if job.release <= t < job.deadline and loads[t] < inst_.g
        ]
        for chosen in combinations(options, job.length):
            for t in chosen:
                loads[t] += 1
            if place(idx + 1):
                return True
            for t in chosen:
                loads[t] -= 1
        return False

    return place(0)
