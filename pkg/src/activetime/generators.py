"""Instance generators: the integrality-gap family and seeded random trees."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import GenerationFailed
from .feasibility import check_slots
from .instance import Instance, Job

__all__ = ["Lcg", "gap_instance", "gap_fractional_witness", "GapWitness", "random_laminar"]


class Lcg:
    """64-bit linear congruential generator with Knuth's MMIX constants.

    state' = (6364136223846793005 * state + 1442695040888963407) mod 2^64;
    draws take the top 32 bits.  The recipe is spelled out so other
    implementations can reproduce identical instance streams.
    """

    MULTIPLIER = 6364136223846793005
    INCREMENT = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next_raw(self) -> int:
        self.state = (self.MULTIPLIER * self.state + self.INCREMENT) & self.MASK
        return self.state

    def randint(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in [lo, hi] (top-32-bit draw, modulo)."""
        return lo + (self.next_raw() >> 32) % (hi - lo + 1)


def gap_instance(g: int) -> Instance:
    """The nested family with fractional cost g+2 but integral optimum 3g/2.

    One long job of length g spanning [0, 2g), plus g groups of g unit
    jobs, group i windowed to [2i, 2i+2); capacity g.
    """
    if g < 2:
        raise ValueError("gap instance requires g >= 2")
    jobs = [Job("j0", 0, 2 * g, g)]
    for i in range(g):
        jobs.extend(Job(f"u{i}_{q}", 2 * i, 2 * i + 2, 1) for q in range(g))
    return Instance(g=g, jobs=tuple(jobs))


@dataclass(frozen=True)
class GapWitness:
    """Slot-indexed fractional solution for the gap instance."""

    x: dict[int, Fraction]
    y: dict[tuple[int, str], Fraction]

    @property
    def objective(self) -> Fraction:
        return sum(self.x.values(), start=Fraction(0))


def gap_fractional_witness(g: int) -> GapWitness:
    """Open every slot to (g+2)/(2g); split each job evenly over its group's
    two slots (the long job gets 1/2 in every slot)."""
    if g < 2:
        raise ValueError("gap witness requires g >= 2")
    half = Fraction(1, 2)
    x = {t: Fraction(g + 2, 2 * g) for t in range(2 * g)}
    y: dict[tuple[int, str], Fraction] = {}
    for t in range(2 * g):
        y[(t, "j0")] = half
    for i in range(g):
        for q in range(g):
            y[(2 * i, f"u{i}_{q}")] = half
            y[(2 * i + 1, f"u{i}_{q}")] = half
    return GapWitness(x=x, y=y)


def random_laminar(
    seed: int,
    max_depth: int = 3,
    max_jobs: int = 8,
    max_g: int = 3,
    max_horizon: int = 12,
    retries: int = 64,
) -> Instance:
    """Seeded random laminar instance, guaranteed feasible.

    Windows are produced by recursively splitting intervals, attaching
    0-2 jobs per visited window; draws come from the in-repo LCG so a
    given seed yields the same instance everywhere.  Infeasible draws are
    resampled up to ``retries`` times.
    """
    rng = Lcg(seed)
    for _ in range(retries):
        g = rng.randint(1, max_g)
        horizon = rng.randint(2, max_horizon)
        jobs: list[Job] = []

        def visit(a: int, b: int, depth: int) -> None:
            if len(jobs) >= max_jobs:
                return
            for _ in range(rng.randint(0, 2)):
                if len(jobs) >= max_jobs:
                    return
                length = rng.randint(1, b - a)
                jobs.append(Job(f"j{len(jobs)}", a, b, length))
            if depth >= max_depth or b - a < 2:
                return
            if rng.randint(0, 3) == 0:
                return
            parts = min(rng.randint(2, 3), b - a)
            cuts = sorted(
                {rng.randint(a + 1, b - 1) for _ in range(parts - 1)} | {a, b}
            )
            for lo, hi in zip(cuts, cuts[1:]):
                # occasionally skip a span, leaving it in the parent's pool
                if rng.randint(0, 3) == 0:
                    continue
                visit(lo, hi, depth + 1)

        visit(0, horizon, 0)
        if not jobs:
            jobs.append(Job("j0", 0, horizon, rng.randint(1, horizon)))
        inst = Instance(g=g, jobs=tuple(jobs))
        open_all = {t for j in inst.jobs for t in range(j.release, j.deadline)}
        if check_slots(open_all, inst):
            return inst
    raise GenerationFailed(f"no feasible draw for seed {seed} in {retries} attempts")
