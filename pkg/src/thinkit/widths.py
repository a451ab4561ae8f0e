"""Exact width oracles for small graphs.

Cutwidth and linear MIM-width minimise, over all layouts, the maximum of a
function of the prefix set.  The value of a layout depends only on the chain of
prefix sets, so a DP over subsets gives the same optimum as trying every
permutation, at 2^n instead of n! cost.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from . import config
from .graph import Graph, Ordering


def max_induced_matching(n: int, edges: Iterable[tuple[int, int]]) -> int:
    """Largest set of edges whose endpoints induce exactly those edges, among ``edges`` only."""
    closed = [1 << v for v in range(n)]
    for u, v in edges:
        closed[u] |= 1 << v
        closed[v] |= 1 << u
    full = (1 << n) - 1

    @lru_cache(maxsize=None)
    def best(blocked: int) -> int:
        free = full & ~blocked
        while free:
            u = (free & -free).bit_length() - 1
            partners = closed[u] & ~blocked & ~(1 << u)
            if partners:
                break
            free &= free - 1
        else:
            return 0
        out = best(blocked | (1 << u))
        while partners:
            v = (partners & -partners).bit_length() - 1
            partners &= partners - 1
            out = max(out, 1 + best(blocked | closed[u] | closed[v]))
        return out

    return best(0)


def cut_edges(g: Graph, prefix_mask: int) -> list[tuple[int, int]]:
    return [(u, v) for u, v in g.edges if ((prefix_mask >> u) & 1) != ((prefix_mask >> v) & 1)]


def cut_size(g: Graph, prefix_mask: int) -> int:
    return len(cut_edges(g, prefix_mask))


def cut_mim(g: Graph, prefix_mask: int) -> int:
    """Maximum induced matching of the bipartite graph of edges crossing the cut."""
    return max_induced_matching(g.n, cut_edges(g, prefix_mask))


def _layout_minmax(g: Graph, cost: Callable[[Graph, int], int]) -> int:
    n = g.n
    full = (1 << n) - 1
    best = [0] * (1 << n)
    for mask in range(1, full + 1):
        inner = min(best[mask & ~(1 << v)] for v in range(n) if (mask >> v) & 1)
        best[mask] = max(inner, cost(g, mask) if mask != full else 0)
    return best[full]


def cutwidth_bruteforce(g: Graph, limit: int | None = None) -> int:
    config.check_cap("cutwidth", g.n, limit, config.WIDTH_LIMIT)
    return _layout_minmax(g, cut_size)


def lmimw_bruteforce(g: Graph, limit: int | None = None) -> int:
    config.check_cap("linear MIM-width", g.n, limit, config.WIDTH_LIMIT)
    return _layout_minmax(g, cut_mim)


def ordering_profile(g: Graph, order: Ordering | Sequence[int], cost: Callable[[Graph, int], int] = cut_mim) -> list[int]:
    """``cost`` of every proper prefix cut of ``order``."""
    seq = order.sequence if isinstance(order, Ordering) else tuple(order)
    out, mask = [], 0
    for v in seq[:-1]:
        mask |= 1 << v
        out.append(cost(g, mask))
    return out


def isoperimetric_peak(g: Graph, limit: int | None = None) -> int:
    """max over s of the minimum boundary size of an s-subset."""
    n = g.n
    config.check_cap("isoperimetric peak", n, limit, config.ISOPERIMETRIC_LIMIT)
    peak = 0
    for s in range(1, n + 1):
        low = n
        for xs in itertools.combinations(range(n), s):
            mask = 0
            reach = 0
            for v in xs:
                mask |= 1 << v
                reach |= g.masks[v]
            low = min(low, bin(reach & ~mask).count("1"))
            if low == 0:
                break
        peak = max(peak, low)
    return peak
