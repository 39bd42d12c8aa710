"""Simple undirected graphs, deterministic generators, and brute-force oracles.

The oracles are the ground truth every detection algorithm is checked
against; they are desk-scale tools (clique enumeration refuses instances
whose estimated work exceeds 1e9 subsets).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import FrozenSet, Iterable, Iterator, List, Optional, Tuple

GEN_KINDS = ("gnp", "planted_clique", "planted_cycle", "complete", "path", "cycle", "empty")

ORACLE_WORK_CAP = 10**9


class GraphFormatError(ValueError):
    """Malformed edge-list input."""


class Graph:
    """Immutable simple undirected graph on nodes 0..n-1.

    Adjacency is kept both as sorted neighbor tuples and as per-node
    bitmasks (int), which make clique checks single AND operations.
    """

    __slots__ = ("n", "_adj_masks", "_neighbors", "m")

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]]):
        if n < 0:
            raise ValueError("n must be non-negative")
        self.n = n
        masks = [0] * n
        count = 0
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"node id out of range in edge ({u},{v})")
            if masks[u] >> v & 1:
                raise ValueError(f"duplicate edge ({u},{v})")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
            count += 1
        self._adj_masks = masks
        self._neighbors = [tuple(_bits(mask)) for mask in masks]
        self.m = count

    def degree(self, v: int) -> int:
        return len(self._neighbors[v])

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self._neighbors[v]

    def adj_mask(self, v: int) -> int:
        return self._adj_masks[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj_masks[u] >> v & 1)

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self._neighbors[u] if u < v]

    def density(self) -> Fraction:
        pairs = self.n * (self.n - 1) // 2
        return Fraction(self.m, pairs) if pairs else Fraction(0)

    def degrees(self) -> List[int]:
        return [len(nb) for nb in self._neighbors]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class GenSpec:
    """Deterministic test-instance description: same spec, same edge set."""

    kind: str
    n: int
    edge_prob: float = 0.0
    planted_size: int = 0
    seed: int = 0

    def validate(self) -> None:
        if self.kind not in GEN_KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if not 0.0 <= self.edge_prob <= 1.0:
            raise ValueError("edge_prob must be in [0,1]")
        if self.kind.startswith("planted") and not 0 < self.planted_size <= self.n:
            raise ValueError("planted_size must be in 1..n")


@dataclass(frozen=True)
class CliqueSet:
    """Canonical set of p-cliques, each an ascending node tuple."""

    p: int
    members: FrozenSet[Tuple[int, ...]]

    def __len__(self) -> int:
        return len(self.members)

    def nonempty(self) -> bool:
        return bool(self.members)


def generate(spec: GenSpec) -> Graph:
    """Build the graph described by `spec`; a pure function of the spec."""
    spec.validate()
    n = spec.n
    planted = set()
    if spec.kind == "complete":
        return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])
    if spec.kind == "empty":
        return Graph(n, [])
    if spec.kind == "path":
        return Graph(n, [(i, i + 1) for i in range(n - 1)])
    if spec.kind == "cycle":
        if n < 3:
            raise ValueError("cycle needs n >= 3")
        return Graph(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])
    if spec.kind == "planted_clique":
        s = spec.planted_size
        planted = {(u, v) for u in range(s) for v in range(u + 1, s)}
    elif spec.kind == "planted_cycle":
        s = spec.planted_size
        if s < 3:
            raise ValueError("planted cycle needs planted_size >= 3")
        planted = {(min(i, (i + 1) % s), max(i, (i + 1) % s)) for i in range(s)}
    rng = random.Random(spec.seed)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) in planted:
                edges.append((u, v))
            elif rng.random() < spec.edge_prob:
                edges.append((u, v))
    return Graph(n, edges)


def load_graph(path: str) -> Graph:
    """Read the edge-list format: header "n m", then m lines "u v", u < v."""
    n = m = None
    edges: List[Tuple[int, int]] = []
    seen_mask: List[int] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if n is None:
                if len(parts) != 2:
                    raise GraphFormatError(f"line {lineno}: header must be 'n m'")
                try:
                    n, m = int(parts[0]), int(parts[1])
                except ValueError:
                    raise GraphFormatError(f"line {lineno}: header must be 'n m'") from None
                if n < 0 or m < 0:
                    raise GraphFormatError(f"line {lineno}: negative header values")
                seen_mask = [0] * max(n, 1)
                continue
            if len(parts) != 2:
                raise GraphFormatError(f"line {lineno}: expected 'u v'")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: expected integer ids") from None
            if u == v:
                raise GraphFormatError(f"line {lineno}: self-loop at node {u}")
            if not (0 <= u < v < n):
                raise GraphFormatError(
                    f"line {lineno}: edge ({u},{v}) violates 0 <= u < v < n={n}"
                )
            if seen_mask[u] >> v & 1:
                raise GraphFormatError(f"line {lineno}: duplicate edge ({u},{v})")
            seen_mask[u] |= 1 << v
            edges.append((u, v))
    if n is None:
        raise GraphFormatError("missing header line 'n m'")
    if len(edges) != m:
        raise GraphFormatError(f"header promised {m} edges, found {len(edges)}")
    return Graph(n, edges)


def save_graph(graph: Graph, path: str) -> None:
    """Write the bit-exact edge-list format (edges sorted lexicographically)."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{graph.n} {graph.m}\n")
        for u, v in graph.edges():
            fh.write(f"{u} {v}\n")


# ---------------------------------------------------------------------------
# Brute-force oracles
# ---------------------------------------------------------------------------


def _check_oracle_cap(n: int, p: int) -> None:
    if comb(n, p) > ORACLE_WORK_CAP:
        raise ValueError(
            f"oracle refuses: C({n},{p}) = {comb(n, p)} exceeds the {ORACLE_WORK_CAP:.0e} work cap"
        )


def iter_cliques(graph: Graph, p: int) -> Iterator[Tuple[int, ...]]:
    """Yield all p-cliques as ascending tuples (backtracking enumeration)."""
    if p < 1 or p > graph.n:
        return
    masks = [graph.adj_mask(v) for v in range(graph.n)]
    full = (1 << graph.n) - 1

    def rec(chosen: Tuple[int, ...], cand: int) -> Iterator[Tuple[int, ...]]:
        if len(chosen) == p:
            yield chosen
            return
        mm = cand
        while mm:
            low = mm & -mm
            v = low.bit_length() - 1
            mm ^= low
            # nodes below v stay excluded: ascending order kills duplicates
            yield from rec(chosen + (v,), mm & masks[v])

    yield from rec((), full)


def oracle_cliques(graph: Graph, p: int) -> CliqueSet:
    """Exactly the p-cliques of the graph. Pre: 2 <= p <= n."""
    if not 2 <= p <= graph.n:
        raise ValueError(f"need 2 <= p <= n, got p={p}, n={graph.n}")
    _check_oracle_cap(graph.n, p)
    return CliqueSet(p=p, members=frozenset(iter_cliques(graph, p)))


def oracle_has_clique(graph: Graph, p: int) -> bool:
    """Emptiness check with short-circuit (no work cap; prunes hard)."""
    if p > graph.n or p < 1:
        return False
    for _ in iter_cliques(graph, p):
        return True
    return False


def _union_members(inv) -> Iterable[Tuple[int, ...]]:
    if hasattr(inv, "union"):
        u = inv.union()
        return u.members if isinstance(u, CliqueSet) else u
    if isinstance(inv, CliqueSet):
        return inv.members
    return inv


def oracle_has_extension(graph: Graph, inv, t: int) -> bool:
    """True iff some listed p-clique extends to a (p+t)-clique of the graph.

    Brute force: for each listed clique, enumerate t-cliques in the common
    neighborhood of its members.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    for members in _union_members(inv):
        common = (1 << graph.n) - 1
        for v in members:
            common &= graph.adj_mask(v)
        if _has_clique_in_mask(graph, common, t):
            return True
    return False


def _has_clique_in_mask(graph: Graph, mask: int, t: int) -> bool:
    if t == 0:
        return True

    def rec(cand: int, need: int) -> bool:
        if need == 0:
            return True
        mm = cand
        while mm:
            low = mm & -mm
            v = low.bit_length() - 1
            mm ^= low
            if rec(mm & graph.adj_mask(v), need - 1):
                return True
        return False

    return rec(mask, t)


def oracle_has_cycle(graph: Graph, length: int) -> bool:
    """True iff a simple cycle of exactly `length` exists (DFS, n <= ~128)."""
    if not 3 <= length <= graph.n:
        raise ValueError(f"need 3 <= length <= n, got {length}")
    for _ in iter_cycles(graph, length):
        return True
    return False


def iter_cycles(
    graph: Graph,
    length: int,
    active_mask: Optional[int] = None,
    through: Optional[int] = None,
    limit: Optional[int] = None,
) -> Iterator[Tuple[int, ...]]:
    """Yield simple cycles of exactly `length` as node sequences, each once.

    With `through`, only cycles containing that node, anchored there;
    otherwise anchored at their minimum node.  Direction is canonicalized by
    requiring the second node to be smaller than the last.
    """
    if length < 3:
        return
    n = graph.n
    full = (1 << n) - 1
    active = full if active_mask is None else active_mask
    count = 0

    def dfs(anchor: int, path: List[int], visited: int, low_floor: int) -> Iterator[Tuple[int, ...]]:
        nonlocal count
        if len(path) == length:
            if graph.has_edge(path[-1], anchor) and path[1] < path[-1]:
                count += 1
                if limit is not None and count > limit:
                    raise CycleEnumerationLimit(
                        f"more than {limit} cycles of length {length}"
                    )
                yield tuple(path)
            return
        for u in graph.neighbors(path[-1]):
            if u <= low_floor or visited >> u & 1 or not active >> u & 1:
                continue
            path.append(u)
            yield from dfs(anchor, path, visited | (1 << u), low_floor)
            path.pop()

    if through is not None:
        if not active >> through & 1:
            return
        yield from dfs(through, [through], 1 << through, -1)
    else:
        for s in range(n):
            if not active >> s & 1:
                continue
            # min-node anchoring: only use nodes above s
            yield from dfs(s, [s], 1 << s, s)


class CycleEnumerationLimit(RuntimeError):
    """Raised when cycle enumeration exceeds its configured cap."""
