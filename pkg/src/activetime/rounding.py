"""Rounding a pushed-down fractional opening to integers.

Topmost nodes start at the floor of their opening; walking the ancestors
of the topmost set bottom-to-top, candidates below the current node are
rounded up one at a time while the integral subtree total stays within
9/5 of the fractional subtree total.  The global 9/5 bound follows and is
certified on every run with exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor

from .errors import PreconditionViolated, RatioExceeded
from .instance import LaminarTree
from .transform import TransformedSolution

__all__ = ["IntegralOpening", "round_opening", "certify_ratio", "RATIO_BOUND"]

RATIO_BOUND = Fraction(9, 5)


@dataclass(frozen=True)
class IntegralOpening:
    """Integer slots per node plus the fractional total they were cut from."""

    x_tilde: tuple[int, ...]
    lp_total: Fraction

    @property
    def total_open(self) -> int:
        return sum(self.x_tilde)


def round_opening(ts: TransformedSolution, tree: LaminarTree) -> IntegralOpening:
    """Round the fractional opening of a pushed-down solution.

    Nodes outside the topmost set must already be integral (they are 0 or
    fully open after push-down).  The ancestor walk is by decreasing
    depth, ties by pre-order index; the rounded-up candidate is always
    the lowest-index eligible node.
    """
    x = ts.x_vec
    topmost = set(ts.topmost)
    x_tilde: list[int] = []
    for i in range(tree.m):
        if i in topmost:
            x_tilde.append(floor(x[i]))
        else:
            if x[i].denominator != 1:
                raise PreconditionViolated(
                    f"node {i} outside the topmost set has fractional x = {x[i]}"
                )
            x_tilde.append(int(x[i]))

    walk = sorted(
        {a for i in ts.topmost for a in tree.ancestors(i)},
        key=lambda i: (-tree.nodes[i].depth, i),
    )
    for i in walk:
        des = tree.descendants(i)
        frac_total = sum((x[k] for k in des), start=Fraction(0))
        int_total = sum(x_tilde[k] for k in des)
        while RATIO_BOUND * frac_total >= int_total + 1:
            candidate = next((k for k in des if x_tilde[k] < x[k]), None)
            if candidate is None:
                break
            x_tilde[candidate] = ceil(x[candidate])
            int_total += 1

    return IntegralOpening(x_tilde=tuple(x_tilde), lp_total=ts.objective)


def certify_ratio(opening: IntegralOpening) -> Fraction:
    """Exact ratio of opened slots to the fractional total; must be <= 9/5."""
    ratio = Fraction(opening.total_open) / opening.lp_total
    if ratio > RATIO_BOUND:
        raise RatioExceeded(ratio, opening.x_tilde)
    return ratio
