"""Loopless k-shortest paths (Yen) ordered by length, then node sequence."""

from __future__ import annotations

import heapq
from fractions import Fraction

from .errors import ValidationError
from .topology import Topology, neighbors_out

__all__ = ["k_shortest_paths", "path_length"]


def path_length(t: Topology, path) -> Fraction:
    return sum((l.length_km for l in t.path_links(path)), Fraction(0))


def _dijkstra(t: Topology, s: int, d: int, banned_nodes, banned_links):
    # Keys are (distance, node sequence): among equal-length paths the
    # lexicographically smallest one wins, and the order survives extension.
    heap = [(Fraction(0), (s,))]
    settled = set()
    while heap:
        dist, path = heapq.heappop(heap)
        u = path[-1]
        if u in settled:
            continue
        settled.add(u)
        if u == d:
            return dist, path
        for link in neighbors_out(t, u):
            v = link.head
            if v in settled or v in banned_nodes or (u, v) in banned_links:
                continue
            heapq.heappush(heap, (dist + link.length_km, path + (v,)))
    return None


def k_shortest_paths(t: Topology, s: int, d: int, k: int) -> list[tuple[int, ...]]:
    """Up to ``k`` simple paths from ``s`` to ``d``.

    Paths are node tuples in ascending total ``length_km``; equal lengths are
    ordered lexicographically by node sequence. An unreachable destination
    yields an empty list.
    """
    if s == d:
        raise ValidationError("source and destination must differ")
    if k < 1:
        raise ValidationError("k must be positive")
    neighbors_out(t, s)
    neighbors_out(t, d)
    first = _dijkstra(t, s, d, frozenset(), frozenset())
    if first is None:
        return []
    found = [first]
    candidates: list = []
    seen = {first[1]}
    while len(found) < k:
        _, last = found[-1]
        for i in range(len(last) - 1):
            root = last[: i + 1]
            spur = last[i]
            banned_links = {p[i : i + 2] for _, p in found if p[: i + 1] == root}
            spur_result = _dijkstra(t, spur, d, frozenset(root[:-1]), banned_links)
            if spur_result is None:
                continue
            total = root[:-1] + spur_result[1]
            if total in seen:
                continue
            seen.add(total)
            heapq.heappush(candidates, (path_length(t, total), total))
        if not candidates:
            break
        found.append(heapq.heappop(candidates))
    return [p for _, p in found]
