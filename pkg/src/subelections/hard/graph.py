"""Undirected graphs on bitsets and an exact maximum-clique solver."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from ..core import InvalidArgumentError


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``; ``adj[x]`` is a bitset."""

    n: int
    adj: tuple[int, ...]

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InvalidArgumentError("negative vertex count")
        adj = [0] * n
        for x, y in edges:
            x, y = int(x), int(y)
            if x == y:
                raise InvalidArgumentError(f"self-loop at vertex {x}")
            if not (0 <= x < n and 0 <= y < n):
                raise InvalidArgumentError(f"edge ({x}, {y}) out of range for {n} vertices")
            adj[x] |= 1 << y
            adj[y] |= 1 << x
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", tuple(adj))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, combinations(range(n), 2))

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(x, y) for x in range(self.n) for y in range(x + 1, self.n) if self.adj[x] >> y & 1]

    @property
    def num_edges(self) -> int:
        return sum(bin(a).count("1") for a in self.adj) // 2

    def has_edge(self, x: int, y: int) -> bool:
        return bool(self.adj[x] >> y & 1)

    def neighbors(self, x: int) -> list[int]:
        return _members(self.adj[x])

    def non_neighbors(self, x: int) -> list[int]:
        return [y for y in range(self.n) if y != x and not self.adj[x] >> y & 1]

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(self.has_edge(x, y) for x, y in combinations(vs, 2))


def _members(bits: int) -> list[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


def _color_order(adj: tuple[int, ...], cand: int) -> tuple[list[int], list[int]]:
    """Greedy sequential colouring of ``cand``; vertices come out grouped by
    colour, each with the number of colours used so far (an upper bound on
    the clique size among it and the vertices before it)."""
    order, bounds = [], []
    uncolored = cand
    color = 0
    while uncolored:
        color += 1
        avail = uncolored
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            avail &= ~adj[v] & ~low
            uncolored &= ~low
            order.append(v)
            bounds.append(color)
    return order, bounds


def _search(adj, cand: int, clique: list[int], best: list[int], stop_at: int) -> bool:
    order, bounds = _color_order(adj, cand)
    for i in range(len(order) - 1, -1, -1):
        if len(clique) + bounds[i] <= len(best):
            return False
        v = order[i]
        clique.append(v)
        nxt = cand & adj[v]
        if nxt:
            if _search(adj, nxt, clique, best, stop_at):
                return True
        elif len(clique) > len(best):
            best[:] = clique
            if len(best) >= stop_at:
                return True
        clique.pop()
        cand &= ~(1 << v)
    return False


def _clique_size_within(adj, cand: int, stop_at: int) -> int:
    """Size of a maximum clique inside ``cand``, or ``stop_at`` once reached."""
    if not cand:
        return 0
    best: list[int] = []
    _search(adj, cand, [], best, stop_at)
    return len(best)


def clique_number(g: Graph) -> int:
    return _clique_size_within(g.adj, (1 << g.n) - 1, g.n + 1)


def max_clique(g: Graph) -> list[int]:
    """A maximum clique, the lexicographically smallest one when sorted.

    Branch and bound with greedy-colouring bounds finds the clique number;
    the canonical clique is then read off vertex by vertex, keeping the
    smallest vertex that still extends to a clique of that size.
    """
    if g.n == 0:
        return []
    omega = clique_number(g)
    chosen: list[int] = []
    cand = (1 << g.n) - 1
    for v in range(g.n):
        if len(chosen) == omega:
            break
        if not cand >> v & 1:
            continue
        rest = cand & g.adj[v] & ~((1 << (v + 1)) - 1)
        need = omega - len(chosen) - 1
        if need == 0 or _clique_size_within(g.adj, rest, need) >= need:
            chosen.append(v)
            cand = rest
    return chosen


def brute_force_clique_number(g: Graph) -> int:
    """Exhaustive clique number; exponential, for tests on small graphs."""
    for size in range(g.n, 0, -1):
        if any(g.is_clique(c) for c in combinations(range(g.n), size)):
            return size
    return 0
