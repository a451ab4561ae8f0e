"""Maximum bipartite matching and minimum chain partitions of small posets."""

from __future__ import annotations

from typing import Sequence


def max_bipartite_matching(adj: Sequence[Sequence[int]], n_right: int) -> tuple[int, list[int]]:
    """Augmenting-path (Kuhn) matching.

    ``adj[u]`` lists the right vertices adjacent to left vertex ``u``.  Returns the
    matching size and ``match_right[v]``, the left partner of right vertex ``v``
    or -1.
    """
    match_right = [-1] * n_right

    def augment(u: int, seen: list[bool]) -> bool:
        for v in adj[u]:
            if seen[v]:
                continue
            seen[v] = True
            if match_right[v] == -1 or augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    size = 0
    for u in range(len(adj)):
        if augment(u, [False] * n_right):
            size += 1
    return size, match_right


def min_chain_partition(n: int, below: Sequence[Sequence[int]]) -> list[list[int]]:
    """Minimum chain partition of a transitive relation on ``0..n-1`` (Dilworth).

    ``below[u]`` lists every ``w`` with ``u < w`` in the order.  Chains come out as
    lists in increasing order; their number is ``n`` minus the matching size.
    """
    _, match_right = max_bipartite_matching(below, n)
    succ = [-1] * n
    has_pred = [False] * n
    for w, u in enumerate(match_right):
        if u != -1:
            succ[u] = w
            has_pred[w] = True
    chains = []
    for start in range(n):
        if has_pred[start]:
            continue
        chain = [start]
        while succ[chain[-1]] != -1:
            chain.append(succ[chain[-1]])
        chains.append(chain)
    return chains


def chains_needed(tops: Sequence[int], rest: Sequence[int], less) -> int:
    """Fewest new chains covering ``rest`` when each chain in ``tops`` may be extended once.

    ``less(a, b)`` is the strict order; it must be transitive.
    """
    right = {v: i for i, v in enumerate(rest)}
    left = list(tops) + list(rest)
    adj = [[right[b] for b in rest if less(a, b)] for a in left]
    size, _ = max_bipartite_matching(adj, len(rest))
    return len(rest) - size
