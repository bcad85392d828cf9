"""Hardness machinery as executable transforms.

Prefix sum cover: given vectors u_1..u_n, a target v and a budget k,
pick k vectors whose summed prefix sums dominate v's.  Set cover embeds
into it by a difference-plus-ramp rewrite of the characteristic vectors;
prefix sum cover in turn embeds into nested active-time scheduling by a
block construction whose only freedom is which per-block "special" slots
to open.  The packing side of that reduction (which machine-emptiness
profiles can absorb which job lengths) is implemented both as the prefix
inequality test and as the explicit greedy packing that witnesses it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DegenerateWidth,
    DimensionMismatch,
    MalformedLine,
    RangeViolation,
    TooManyJobs,
)
from .instance import Instance, Job

__all__ = [
    "PscInstance",
    "SetCoverInstance",
    "Configuration",
    "ReductionLayout",
    "prec",
    "psc_exhaustive",
    "setcover_to_psc",
    "psc_to_active_time",
    "config_fits",
    "pack_greedy",
    "parse_psc",
    "serialize_psc",
    "parse_setcover",
]


@dataclass(frozen=True)
class PscInstance:
    """Prefix-sum-cover instance: vectors u_1..u_n, target v, budget k.

    Every vector is entrywise non-increasing; u entries are positive,
    target entries nonnegative.
    """

    vectors: tuple[tuple[int, ...], ...]
    target: tuple[int, ...]
    k: int

    def __post_init__(self):
        d = len(self.target)
        if d < 1:
            raise ValueError("target must have at least one dimension")
        for u in self.vectors:
            if len(u) != d:
                raise DimensionMismatch(f"vector {u} has dimension {len(u)}, want {d}")
            if any(a < 1 for a in u):
                raise ValueError(f"vector {u} has an entry below 1")
            if any(u[j] < u[j + 1] for j in range(d - 1)):
                raise ValueError(f"vector {u} is not non-increasing")
        if any(a < 0 for a in self.target):
            raise ValueError(f"target {self.target} has a negative entry")
        if any(self.target[j] < self.target[j + 1] for j in range(d - 1)):
            raise ValueError(f"target {self.target} is not non-increasing")
        if self.k < 0:
            raise ValueError("budget k must be nonnegative")

    @property
    def d(self) -> int:
        return len(self.target)

    @property
    def n(self) -> int:
        return len(self.vectors)

    @property
    def W(self) -> int:
        """Maximum scalar across all vectors and the target."""
        return max(max((max(u) for u in self.vectors), default=0), max(self.target))


@dataclass(frozen=True)
class SetCoverInstance:
    """Universe [1, d], sets as 0/1 characteristic vectors, budget k."""

    d: int
    sets: tuple[tuple[int, ...], ...]
    k: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("universe must be nonempty")
        for s in self.sets:
            if len(s) != self.d or any(a not in (0, 1) for a in s):
                raise ValueError(f"{s} is not a 0/1 vector of length {self.d}")
        if self.k < 1:
            raise ValueError("budget k must be positive")


def prec(a, b) -> bool:
    """Prefix-sum dominance: every prefix sum of a is >= that of b."""
    if len(a) != len(b):
        raise DimensionMismatch(f"dimensions {len(a)} and {len(b)} differ")
    sa = sb = 0
    for x, y in zip(a, b):
        sa += x
        sb += y
        if sa < sb:
            return False
    return True


def psc_exhaustive(psc: PscInstance) -> tuple[int, ...] | None:
    """First k-subset of vector indices (lexicographic) solving the cover.

    Returns None when no k-subset works (including k > n).  Padding a
    smaller solution to exactly k vectors never hurts since all entries
    are positive, so searching exact-size subsets decides the problem.
    """
    from itertools import combinations

    if psc.k > psc.n:
        return None
    d = psc.d
    for combo in combinations(range(psc.n), psc.k):
        total = [0] * d
        for idx in combo:
            for j in range(d):
                total[j] += psc.vectors[idx][j]
        if prec(total, psc.target):
            return combo
    return None


def setcover_to_psc(sc: SetCoverInstance) -> PscInstance:
    """Rewrite set cover as prefix sum cover.

    With [w]_0 = 0, each characteristic vector u becomes
    ``u'_j = u_j - u_{j-1} + 2 + 2*(d - j)`` and the all-ones target
    becomes ``v'_j = v_j - v_{j-1} + 2k + 2k*(d - j)``.  The prefix sums
    telescope so that k chosen u' dominate v' exactly when the k sets
    cover the universe; the ramp slope of 2 keeps every produced vector
    non-increasing (slope 1 fails on patterns like 1,0,1).  Entries are
    checked against their guaranteed ranges: u' in [1, 2d+1], v' in
    [2k-1, 2kd+1].
    """
    d, k = sc.d, sc.k
    ones = [1] * d

    def ramp(vec: list[int], scale: int) -> tuple[int, ...]:
        out = []
        prev = 0
        for j in range(1, d + 1):
            out.append(vec[j - 1] - prev + 2 * scale + 2 * scale * (d - j))
            prev = vec[j - 1]
        return tuple(out)

    new_vectors = tuple(ramp(list(u), 1) for u in sc.sets)
    new_target = ramp(ones, k)

    for u in new_vectors:
        for a in u:
            if not 1 <= a <= 2 * d + 1:
                raise RangeViolation(f"u' entry {a} outside [1, {2 * d + 1}]")
        if any(u[j] < u[j + 1] for j in range(d - 1)):
            raise RangeViolation(f"u' vector {u} is not non-increasing")
    for a in new_target:
        if not 2 * k - 1 <= a <= 2 * k * d + 1:
            raise RangeViolation(f"v' entry {a} outside [{2 * k - 1}, {2 * k * d + 1}]")
    if any(new_target[j] < new_target[j + 1] for j in range(d - 1)):
        raise RangeViolation(f"v' vector {new_target} is not non-increasing")

    return PscInstance(vectors=new_vectors, target=new_target, k=k)


@dataclass(frozen=True)
class ReductionLayout:
    """Bookkeeping of a prefix-sum-cover reduction output.

    ``special_slots`` are the first slots of each width-W block; all
    other slots are pinned open by rigid jobs, so optimal schedules open
    ``baseline`` slots plus one per special slot they activate.
    """

    width: int
    special_slots: tuple[int, ...]
    baseline: int


def psc_to_active_time(psc: PscInstance) -> tuple[Instance, ReductionLayout]:
    """Encode prefix sum cover as a nested active-time instance.

    Block i (one per vector) spans ``[(i-1)*W, i*W)`` with the first slot
    special.  Rigid unit jobs pin every non-special slot and leave, when
    block i's special slot is opened, exactly u_i spare capacity on the
    first d machines; flexible unit jobs absorb the special slot so the
    block's capacity identity holds; one job of length v_j per dimension
    spans the whole horizon.  The block width is the largest u entry
    (at least 2, and at least enough for the target jobs to fit their
    windows); entries of v play no role in the block structure.
    """
    if psc.W < 2:
        raise DegenerateWidth(f"maximum scalar {psc.W} is below 2")
    if psc.n == 0:
        raise ValueError("reduction needs at least one vector")
    d, n = psc.d, psc.n
    max_u = max(max(u) for u in psc.vectors)
    width = max(2, max_u, -(-max(psc.target) // n))
    p = d * width

    jobs: list[Job] = []
    specials = []
    for i, u in enumerate(psc.vectors):
        base = i * width
        specials.append(base)
        rigid_used = 0
        for w in range(2, width + 1):
            cnt = sum(1 for a in u if a >= w)
            assert p - cnt >= 1
            rigid_used += cnt
            for q in range(p - cnt):
                jobs.append(Job(f"r{i}_{w}_{q}", base + w - 1, base + w, 1))
        flexible = sum(u) - d
        # per-block capacity identity: rigid slack equals the flexible jobs
        assert rigid_used == flexible
        for q in range(flexible):
            jobs.append(Job(f"f{i}_{q}", base, base + width, 1))
    for j, length in enumerate(psc.target):
        if length > 0:
            jobs.append(Job(f"v{j}", 0, n * width, length))

    layout = ReductionLayout(
        width=width, special_slots=tuple(specials), baseline=n * (width - 1)
    )
    return Instance(g=p, jobs=tuple(jobs)), layout


@dataclass(frozen=True)
class Configuration:
    """Machine-emptiness profile e and job lengths l, both non-increasing."""

    empties: tuple[int, ...]
    lengths: tuple[int, ...]

    def __post_init__(self):
        for name, seq in (("empties", self.empties), ("lengths", self.lengths)):
            if any(a < 0 for a in seq):
                raise ValueError(f"{name} contains a negative entry")
            if any(seq[j] < seq[j + 1] for j in range(len(seq) - 1)):
                raise ValueError(f"{name} is not non-increasing")


def config_fits(cfg: Configuration) -> bool:
    """True iff every prefix of e dominates the same prefix of l."""
    if len(cfg.lengths) > len(cfg.empties):
        raise TooManyJobs(
            f"{len(cfg.lengths)} jobs exceed {len(cfg.empties)} machines"
        )
    se = sl = 0
    for e, l in zip(cfg.empties, cfg.lengths):
        se += e
        sl += l
        if se < sl:
            return False
    return True


def pack_greedy(cfg: Configuration, slot_layout) -> dict[int, tuple[tuple[int, int], ...]] | None:
    """Explicit packing by the top-down machine walk.

    ``slot_layout[m]`` lists machine m+1's empty slot times; a job may not
    occupy two machines at the same time.  The j-th longest job is fitted
    from machine (q - j) downward, taking each machine's times not already
    used by this job.  Returns {job index: ((machine, time), ...)} or None.
    Succeeds whenever config_fits holds on a staircase layout.
    """
    q = len(cfg.lengths)
    if q > len(cfg.empties):
        return None
    for m, slots in enumerate(slot_layout):
        if len(slots) != cfg.empties[m]:
            raise ValueError(
                f"machine {m + 1} has {len(slots)} slots, profile says {cfg.empties[m]}"
            )
    free = [sorted(slots) for slots in slot_layout]
    assignment: dict[int, tuple[tuple[int, int], ...]] = {}
    for idx, length in enumerate(cfg.lengths):
        used_times: set[int] = set()
        placed: list[tuple[int, int]] = []
        for m in range(q - idx, 0, -1):
            if len(placed) == length:
                break
            avail = [t for t in free[m - 1] if t not in used_times]
            take = avail[: length - len(placed)]
            for t in take:
                placed.append((m, t))
                used_times.add(t)
                free[m - 1].remove(t)
        if len(placed) < length:
            return None
        assignment[idx] = tuple(placed)
    return assignment


# ---------------------------------------------------------------------------
# Text formats


def parse_psc(text: str) -> PscInstance:
    """Parse: ``d <int>``, ``k <int>``, ``v <d ints>``, ``u <d ints>`` per vector."""
    d = k = None
    target = None
    vectors = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        try:
            if tokens[0] == "d" and len(tokens) == 2:
                d = int(tokens[1])
            elif tokens[0] == "k" and len(tokens) == 2:
                k = int(tokens[1])
            elif tokens[0] == "v":
                target = tuple(int(t) for t in tokens[1:])
            elif tokens[0] == "u":
                vectors.append(tuple(int(t) for t in tokens[1:]))
            else:
                raise MalformedLine(f"line {lineno}: unknown directive {tokens[0]!r}")
        except ValueError:
            raise MalformedLine(f"line {lineno}: bad integer in {line!r}") from None
    if d is None or k is None or target is None:
        raise MalformedLine("missing one of the 'd', 'k', 'v' directives")
    if len(target) != d or any(len(u) != d for u in vectors):
        raise MalformedLine(f"vector length does not match d = {d}")
    return PscInstance(vectors=tuple(vectors), target=target, k=k)


def serialize_psc(psc: PscInstance) -> str:
    lines = [f"d {psc.d}", f"k {psc.k}", "v " + " ".join(map(str, psc.target))]
    lines.extend("u " + " ".join(map(str, u)) for u in psc.vectors)
    return "\n".join(lines) + "\n"


def parse_setcover(text: str) -> SetCoverInstance:
    """Parse: ``d <int>``, ``k <int>``, ``set <1-based elements...>`` per set."""
    d = k = None
    raw_sets: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        try:
            if tokens[0] == "d" and len(tokens) == 2:
                d = int(tokens[1])
            elif tokens[0] == "k" and len(tokens) == 2:
                k = int(tokens[1])
            elif tokens[0] == "set":
                raw_sets.append(tuple(int(t) for t in tokens[1:]))
            else:
                raise MalformedLine(f"line {lineno}: unknown directive {tokens[0]!r}")
        except ValueError:
            raise MalformedLine(f"line {lineno}: bad integer in {line!r}") from None
    if d is None or k is None:
        raise MalformedLine("missing 'd' or 'k' directive")
    sets = []
    for elems in raw_sets:
        if any(not 1 <= e <= d for e in elems):
            raise MalformedLine(f"set element outside [1, {d}]: {elems}")
        sets.append(tuple(1 if j + 1 in elems else 0 for j in range(d)))
    return SetCoverInstance(d=d, sets=tuple(sets), k=k)
