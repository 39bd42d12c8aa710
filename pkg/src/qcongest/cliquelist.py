"""Classical K_p listing in the Congested Clique.

Nodes are split into s = ceil(n^(1/p)) contiguous groups; each size-p
multiset of group indices is owned by one node (round-robin over the
lexicographic multiset order).  The owner collects the edges among its
groups via Lenzen routing and enumerates every p-clique whose group
signature matches, so the union over owners is exactly the set of
p-cliques.

Round charges use the idealized exact-divisibility parameters (group size
n^(1-1/p), multiset count n/p!) scaled by graph density, so ledgers are
deterministic functions of (n, m, p); see the project notes on cost
accounting in the README.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .graph import CliqueSet, Graph
from .intmath import ceil_div, ceil_root, ceil_scaled_pow
from .netsim import CostLedger, KnowledgeState, RoutingDemand, route_lenzen


@dataclass(frozen=True)
class TupleAssignment:
    """Group partition plus the multiset-of-groups ownership map."""

    n: int
    p: int
    s: int
    groups: Tuple[range, ...]
    multisets: Tuple[Tuple[int, ...], ...]

    def owner(self, rank: int) -> int:
        return rank % self.n

    def multisets_per_node(self) -> int:
        return ceil_div(len(self.multisets), self.n)


class CliqueInventory:
    """Per-node collections of listed p-cliques.

    The lister also records each clique's common-neighborhood bitmask;
    extension algorithms start from those instead of recomputing.
    """

    def __init__(self, p: int, n: int):
        self.p = p
        self.n = n
        self.per_node: Dict[int, Set[Tuple[int, ...]]] = {}
        self._common: Dict[Tuple[int, ...], int] = {}

    def add(self, node: int, clique: Tuple[int, ...], common: Optional[int] = None) -> None:
        self.per_node.setdefault(node, set()).add(clique)
        if common is not None:
            self._common[clique] = common

    def common_masks(self, graph) -> Dict[Tuple[int, ...], int]:
        """clique -> bitmask of nodes adjacent to every member."""
        out: Dict[Tuple[int, ...], int] = {}
        full = (1 << self.n) - 1
        for clique in self.union_members():
            cached = self._common.get(clique)
            if cached is None:
                cached = full
                for v in clique:
                    cached &= graph.adj_mask(v)
            out[clique] = cached
        return out

    def mask_list(self, graph) -> List[int]:
        """Common-neighborhood masks of the union, one per distinct clique."""
        if len(self._common) == sum(len(s) for s in self.per_node.values()):
            # every clique was listed with its mask by exactly one owner
            return list(self._common.values())
        return list(self.common_masks(graph).values())

    def union(self) -> CliqueSet:
        members: Set[Tuple[int, ...]] = set()
        for cliques in self.per_node.values():
            members.update(cliques)
        return CliqueSet(p=self.p, members=frozenset(members))

    def union_members(self) -> Set[Tuple[int, ...]]:
        members: Set[Tuple[int, ...]] = set()
        for cliques in self.per_node.values():
            members.update(cliques)
        return members

    @classmethod
    def from_cliques(cls, p: int, n: int, cliques: Iterable[Tuple[int, ...]],
                     node: int = 0) -> "CliqueInventory":
        inv = cls(p, n)
        for c in cliques:
            inv.add(node, tuple(sorted(c)))
        return inv

    def dump(self) -> str:
        """Debug format: one line 'v: u1 u2 ... up' per listed clique, sorted."""
        lines = []
        for v in sorted(self.per_node):
            for clique in sorted(self.per_node[v]):
                lines.append(f"{v}: " + " ".join(str(u) for u in clique))
        return "\n".join(lines) + ("\n" if lines else "")


def tuple_assignment(n: int, p: int) -> TupleAssignment:
    """Deterministic group partition and multiset ownership for K_p listing."""
    if p < 2:
        raise ValueError("p must be >= 2")
    if n < 1:
        raise ValueError("n must be >= 1")
    s = ceil_root(n, p)
    size = ceil_div(n, s)
    groups = tuple(range(i * size, min((i + 1) * size, n)) for i in range(s))
    multisets = tuple(combinations_with_replacement(range(s), p))
    return TupleAssignment(n=n, p=p, s=s, groups=groups, multisets=multisets)


def listing_route_load(n: int, m: int, p: int) -> int:
    """Worst per-owner receive load for the listing route, in words.

    Idealized load: (multisets per node) * p * g^2 * rho with group size
    g = n^(1-1/p) and rho the graph density.
    """
    if m <= 0 or n < 2:
        return 0
    rho = Fraction(2 * m, n * (n - 1))
    s = ceil_root(n, p)
    ms_per_node = ceil_div(comb(s + p - 1, p), n)
    return ceil_scaled_pow(n, Fraction(2 * (p - 1), p), ms_per_node * p * rho)


def listing_route_rounds(n: int, m: int, p: int) -> int:
    """Lenzen rounds for the listing route: ceil(load / n)."""
    load = listing_route_load(n, m, p)
    return ceil_div(load, n) if load else 0


def list_kp(
    graph: Graph,
    p: int,
    ledger: CostLedger,
    phase: str = "kp-listing",
    knowledge: Optional[KnowledgeState] = None,
) -> CliqueInventory:
    """List all p-cliques; union over owners equals oracle_cliques(G, p)."""
    if p < 2:
        raise ValueError("p must be >= 2")
    n = graph.n
    ta = tuple_assignment(n, p)
    group_masks = [_range_mask(g) for g in ta.groups]
    transfer = None
    if knowledge is not None:
        # each owner learns every slot inside its multisets' group union
        transfer = []
        for rank, ms in enumerate(ta.multisets):
            union = 0
            for gi in set(ms):
                union |= group_masks[gi]
            transfer.append((ta.owner(rank), union, union))
    demand = RoutingDemand.single_load(listing_route_load(n, graph.m, p))
    route_lenzen(ledger, demand, n, phase=phase, knowledge=knowledge,
                 transfer=transfer)
    inv = CliqueInventory(p, n)
    for rank, ms in enumerate(ta.multisets):
        owner = ta.owner(rank)
        for clique, common in _multiset_cliques(graph, ta.groups, group_masks, ms):
            inv.add(owner, clique, common)
    return inv


def _range_mask(r: range) -> int:
    mask = 0
    for v in r:
        mask |= 1 << v
    return mask


def _multiset_cliques(
    graph: Graph,
    groups: Sequence[range],
    group_masks: Sequence[int],
    ms: Tuple[int, ...],
) -> Iterable[Tuple[Tuple[int, ...], int]]:
    """Yield (p-clique, common-neighborhood mask) with one node per slot.

    Repeated group indices take ascending combinations within the group, so
    each clique with this group signature appears exactly once.  The common
    mask falls out of the candidate intersection at the last slot.
    """
    p = len(ms)

    def rec(slot: int, chosen: Tuple[int, ...], common: int):
        if slot == p:
            yield chosen, common
            return
        gi = ms[slot]
        cand = common & group_masks[gi]
        if slot > 0 and ms[slot - 1] == gi:
            # same group as previous slot: enforce ascending node order
            cand &= ~((1 << (chosen[-1] + 1)) - 1)
        mm = cand
        while mm:
            low = mm & -mm
            v = low.bit_length() - 1
            mm ^= low
            yield from rec(slot + 1, chosen + (v,), common & graph.adj_mask(v))

    full = (1 << graph.n) - 1
    for clique, common in rec(0, (), full):
        yield tuple(sorted(clique)), common
