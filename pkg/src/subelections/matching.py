"""Maximum-cardinality bipartite matching."""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Hashable, Sequence

from .core import InvalidArgumentError

_INF = float("inf")


@dataclass(frozen=True)
class BipartiteGraph:
    n_left: int
    n_right: int
    adj: tuple[tuple[int, ...], ...]

    def __init__(self, n_left: int, n_right: int, adj: Sequence[Sequence[int]]):
        if len(adj) != n_left:
            raise InvalidArgumentError("need one neighbour list per left vertex")
        lists = []
        for nbrs in adj:
            row = tuple(sorted(set(int(r) for r in nbrs)))
            if row and (row[0] < 0 or row[-1] >= n_right):
                raise InvalidArgumentError("right vertex index out of range")
            lists.append(row)
        object.__setattr__(self, "n_left", n_left)
        object.__setattr__(self, "n_right", n_right)
        object.__setattr__(self, "adj", tuple(lists))

    @classmethod
    def from_edges(cls, n_left: int, n_right: int, edges):
        adj = [[] for _ in range(n_left)]
        for a, b in edges:
            adj[a].append(b)
        return cls(n_left, n_right, adj)


def max_bipartite_matching(g: BipartiteGraph) -> tuple[int, list[tuple[int, int]]]:
    """Hopcroft-Karp. Left vertices and neighbour lists are scanned in
    ascending order, so the result is deterministic.

    Returns:
        The matching size and the matched ``(left, right)`` pairs, sorted.
    """
    match_l = [-1] * g.n_left
    match_r = [-1] * g.n_right
    dist = [0.0] * g.n_left

    def bfs() -> bool:
        queue = deque()
        for a in range(g.n_left):
            if match_l[a] == -1:
                dist[a] = 0
                queue.append(a)
            else:
                dist[a] = _INF
        found = False
        while queue:
            a = queue.popleft()
            for b in g.adj[a]:
                nxt = match_r[b]
                if nxt == -1:
                    found = True
                elif dist[nxt] == _INF:
                    dist[nxt] = dist[a] + 1
                    queue.append(nxt)
        return found

    def dfs(root: int) -> bool:
        # iterative DFS along layered alternating paths
        stack = [(root, 0)]
        path = []
        while stack:
            a, i = stack.pop()
            nbrs = g.adj[a]
            while i < len(nbrs):
                b = nbrs[i]
                nxt = match_r[b]
                if nxt == -1:
                    path.append((a, b))
                    for x, y in path:
                        match_l[x] = y
                        match_r[y] = x
                    return True
                if dist[nxt] == dist[a] + 1:
                    stack.append((a, i + 1))
                    path.append((a, b))
                    stack.append((nxt, 0))
                    break
                i += 1
            else:
                dist[a] = _INF
                if path and stack:
                    path.pop()
        return False

    size = 0
    while bfs():
        for a in range(g.n_left):
            if match_l[a] == -1 and dfs(a):
                size += 1
    pairs = [(a, b) for a, b in enumerate(match_l) if b != -1]
    return size, pairs


def equal_key_matching(
    left_keys: Sequence[Hashable], right_keys: Sequence[Hashable]
) -> list[tuple[int, int]]:
    """Maximum matching in the bipartite graph joining equal keys.

    That graph is a disjoint union of complete bipartite blocks, so the
    optimum pairs, inside each block, the first ``min(|L|, |R|)`` left vertices
    with the first right ones in ascending order. Among maximum matchings the
    result is the lexicographically smallest sorted pair list.
    """
    pending = defaultdict(deque)
    for b, key in enumerate(right_keys):
        pending[key].append(b)
    pairs = []
    for a, key in enumerate(left_keys):
        queue = pending.get(key)
        if queue:
            pairs.append((a, queue.popleft()))
    return pairs
