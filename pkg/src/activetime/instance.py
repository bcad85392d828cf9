"""Problem instances and the laminar window tree.

An instance is a machine capacity ``g`` plus a list of jobs, each with an
integer window ``[release, deadline)`` and processing time ``length``.  The
window family must be laminar: any two windows are disjoint or nested.  The
distinct windows then form a tree; each tree node owns the slots of its
interval not covered by any child (its private pool).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import DuplicateJobId, InvalidWindow, MalformedLine, NonLaminar

__all__ = [
    "Job",
    "Instance",
    "TreeNode",
    "LaminarTree",
    "parse_instance",
    "serialize_instance",
    "build_tree",
]


@dataclass(frozen=True)
class Job:
    """A preemptible job with window ``[release, deadline)`` and size ``length``."""

    id: str
    release: int
    deadline: int
    length: int

    @property
    def window(self) -> tuple[int, int]:
        return (self.release, self.deadline)


@dataclass(frozen=True)
class Instance:
    """A validated active-time instance with laminar windows.

    Construction checks every job (``r >= 0``, ``p >= 1``, window fits) and
    laminarity of the window family; invalid data raises the corresponding
    parse-level error even when built programmatically.
    """

    g: int
    jobs: tuple[Job, ...]

    def __post_init__(self):
        if self.g < 1:
            raise MalformedLine(f"machine capacity g must be >= 1, got {self.g}")
        if not self.jobs:
            raise MalformedLine("instance has no jobs")
        seen: set[str] = set()
        for job in self.jobs:
            if job.id in seen:
                raise DuplicateJobId(f"job id {job.id!r} appears twice")
            seen.add(job.id)
            if job.release < 0:
                raise InvalidWindow(f"job {job.id!r}: release {job.release} < 0")
            if job.length < 1:
                raise InvalidWindow(f"job {job.id!r}: length {job.length} < 1")
            if job.deadline < job.release + job.length:
                raise InvalidWindow(
                    f"job {job.id!r}: window [{job.release}, {job.deadline}) "
                    f"cannot hold length {job.length}"
                )
        bad = _crossing_pair(self.jobs)
        if bad is not None:
            raise NonLaminar(bad[0], bad[1])

    @property
    def horizon(self) -> int:
        """T = max deadline; slots live in [0, T)."""
        return max(j.deadline for j in self.jobs)

    @property
    def total_work(self) -> int:
        return sum(j.length for j in self.jobs)

    def job_by_id(self, job_id: str) -> Job:
        for job in self.jobs:
            if job.id == job_id:
                return job
        raise KeyError(job_id)


def _crossing_pair(jobs: Iterable[Job]) -> tuple[str, str] | None:
    """Return ids of the first pair of jobs whose windows cross, if any.

    Sweep over windows sorted by (start, -end): a window crossing its
    nearest still-open predecessor is the first violation in that order.
    """
    order = sorted(jobs, key=lambda j: (j.release, -j.deadline))
    stack: list[Job] = []
    for job in order:
        while stack and stack[-1].deadline <= job.release:
            stack.pop()
        if stack and stack[-1].deadline < job.deadline:
            # stack top starts at or before job and ends strictly inside it
            return (stack[-1].id, job.id)
        stack.append(job)
    return None


def parse_instance(text: str) -> Instance:
    """Parse the line-oriented instance format.

    One directive per line, ``#`` starts a comment::

        g <int>
        job <id> <r:int> <d:int> <p:int>
    """
    g: int | None = None
    jobs: list[Job] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "g":
            if len(tokens) != 2:
                raise MalformedLine(f"line {lineno}: expected 'g <int>'")
            if g is not None:
                raise MalformedLine(f"line {lineno}: duplicate 'g' directive")
            g = _parse_int(tokens[1], lineno)
        elif tokens[0] == "job":
            if len(tokens) != 5:
                raise MalformedLine(f"line {lineno}: expected 'job <id> <r> <d> <p>'")
            r, d, p = (_parse_int(t, lineno) for t in tokens[2:5])
            jobs.append(Job(id=tokens[1], release=r, deadline=d, length=p))
        else:
            raise MalformedLine(f"line {lineno}: unknown directive {tokens[0]!r}")
    if g is None:
        raise MalformedLine("missing 'g' directive")
    return Instance(g=g, jobs=tuple(jobs))


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise MalformedLine(f"line {lineno}: {token!r} is not an integer") from None


def serialize_instance(inst: Instance) -> str:
    """Emit the text format; parse(serialize(x)) == x."""
    lines = [f"g {inst.g}"]
    lines.extend(f"job {j.id} {j.release} {j.deadline} {j.length}" for j in inst.jobs)
    return "\n".join(lines) + "\n"


@dataclass
class TreeNode:
    """One distinct window of the laminar family.

    ``pool`` holds the slots of ``[start, end)`` not covered by any child
    interval; ``job_ids`` the jobs whose window equals this interval.
    """

    index: int
    start: int
    end: int
    parent: int | None
    depth: int
    children: tuple[int, ...] = ()
    pool: tuple[int, ...] = ()
    job_ids: tuple[str, ...] = ()

    @property
    def interval(self) -> tuple[int, int]:
        return (self.start, self.end)

    @property
    def L(self) -> int:
        """Private pool size: the capacity bound for this node's opening."""
        return len(self.pool)


class LaminarTree:
    """Tree of distinct job windows, indexed in pre-order.

    Pre-order indexing makes every subtree a contiguous index range, so
    descendant queries are range lookups.  All "arbitrary" tie-breaks
    downstream use this index.
    """

    def __init__(self, instance: Instance, nodes: list[TreeNode], node_of_job: dict[str, int]):
        self.instance = instance
        self.nodes = nodes
        self.node_of_job = node_of_job
        self._sub_end = [0] * len(nodes)
        for node in reversed(nodes):
            end = node.index + 1
            for c in node.children:
                end = max(end, self._sub_end[c])
            self._sub_end[node.index] = end

    @property
    def m(self) -> int:
        return len(self.nodes)

    def __iter__(self) -> Iterator[TreeNode]:
        return iter(self.nodes)

    def descendants(self, i: int) -> range:
        """Des(i): i and everything below it."""
        return range(i, self._sub_end[i])

    def strict_descendants(self, i: int) -> range:
        return range(i + 1, self._sub_end[i])

    def ancestors(self, i: int) -> list[int]:
        """Anc(i): i and everything above it, bottom-up."""
        chain = [i]
        parent = self.nodes[i].parent
        while parent is not None:
            chain.append(parent)
            parent = self.nodes[parent].parent
        return chain

    def strict_ancestors(self, i: int) -> list[int]:
        return self.ancestors(i)[1:]

    def is_ancestor(self, a: int, i: int) -> bool:
        """True iff a is an ancestor of i (non-strict)."""
        return a <= i < self._sub_end[a]

    def leaves(self) -> list[int]:
        return [n.index for n in self.nodes if not n.children]

    def jobs_under(self, i: int) -> list[Job]:
        """J(Des(i)): jobs bucketed at i or below."""
        by_id = {j.id: j for j in self.instance.jobs}
        out = []
        for k in self.descendants(i):
            out.extend(by_id[jid] for jid in self.nodes[k].job_ids)
        return out

    def jobs_at_or_above(self, i: int) -> list[Job]:
        """J(Anc(i)): the jobs that may be scheduled inside node i."""
        by_id = {j.id: j for j in self.instance.jobs}
        out = []
        for k in self.ancestors(i):
            out.extend(by_id[jid] for jid in self.nodes[k].job_ids)
        return out


def build_tree(inst: Instance) -> LaminarTree:
    """Build the laminar tree of distinct windows.

    One node per distinct window, parents by containment.  When several
    maximal windows exist, a synthetic job-free root with interval
    ``[0, horizon)`` is added so the family always forms one tree.
    """
    windows = sorted({j.window for j in inst.jobs}, key=lambda w: (w[0], -w[1]))
    children: dict[tuple[int, int], list[tuple[int, int]]] = {w: [] for w in windows}
    tops: list[tuple[int, int]] = []
    stack: list[tuple[int, int]] = []
    for w in windows:
        while stack and stack[-1][1] <= w[0]:
            stack.pop()
        if stack:
            children[stack[-1]].append(w)
        else:
            tops.append(w)
        stack.append(w)

    if len(tops) > 1:
        root = (0, inst.horizon)
        children[root] = tops
    else:
        root = tops[0]

    bucket: dict[tuple[int, int], list[str]] = {w: [] for w in windows}
    for job in inst.jobs:
        bucket[job.window].append(job.id)

    nodes: list[TreeNode] = []

    def visit(window: tuple[int, int], parent: int | None, depth: int) -> None:
        index = len(nodes)
        kids = children.get(window, [])
        covered = set()
        for a, b in kids:
            covered.update(range(a, b))
        pool = tuple(t for t in range(window[0], window[1]) if t not in covered)
        nodes.append(
            TreeNode(
                index=index,
                start=window[0],
                end=window[1],
                parent=parent,
                depth=depth,
                pool=pool,
                job_ids=tuple(bucket.get(window, ())),
            )
        )
        child_indices = []
        for kid in kids:
            child_indices.append(len(nodes))
            visit(kid, index, depth + 1)
        nodes[index].children = tuple(child_indices)

    visit(root, None, 0)

    node_of_job = {}
    window_node = {nodes[i].interval: i for i in range(len(nodes))}
    for job in inst.jobs:
        node_of_job[job.id] = window_node[job.window]

    for node in nodes:
        span = node.end - node.start
        kid_span = sum(nodes[c].end - nodes[c].start for c in node.children)
        assert node.L == span - kid_span
        assert node.children or node.job_ids, "leaf without a job"

    return LaminarTree(inst, nodes, node_of_job)
