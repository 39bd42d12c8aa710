"""Congested Clique clique detection.

Five strategies, all reducing detection to clique listing plus quantum
search over partitions of the remaining search space:

* triangle15  - the n^(1/5) triangle warmup (shards A_i x A_j x Q_k).
* plus1       - K_{p+1} from K_p listing, one flat search over node batches.
* nested      - K_{p+t} via a depth-t nested search with level exponents
                r_i = (1-1/p)/2^(t-i); requires t <= 1 + log2(p-1).
* blackbox    - extension that treats the listing as a black box; level
                setups broadcast adjacency bitmasks, cost n^(1-1/2^t).
* sparse      - degree-batched extension whose search cost depends on the
                average degree mu instead of n.

Round charges are exact-integer functions of (n, m) and the strategy
parameters, computed from the idealized exact-divisibility partition sizes
scaled by graph density; answers are evaluated on the real adjacency.
Cost and answer never interact.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .cliquelist import CliqueInventory, list_kp, listing_route_rounds
from .graph import Graph
from .intmath import ceil_div, ceil_pow, ceil_scaled_pow
from .netsim import CliqueNet, CostLedger, KnowledgeState
from .qsearch import (
    DEFAULT_PARAMS,
    NestedSearchPlan,
    QuantumCostParams,
    SearchLevel,
    SearchOutcome,
    charge_search,
    grover_cost,
    nested_cost_predict,
    run_nested_search,
    run_search,
    _derive_seed,
)

STRATEGIES = ("triangle15", "plus1", "nested", "blackbox", "sparse")


@dataclass(frozen=True)
class LevelPartition:
    """One level of a nested search: V split into count contiguous ranges."""

    level: int
    exponent: Fraction
    count: int
    parts: Tuple[range, ...]


@dataclass(frozen=True)
class DegreeBatching:
    """Partition of V into batches of roughly equal degree sum."""

    batches: Tuple[Tuple[int, ...], ...]
    target: int


@dataclass(frozen=True)
class DetectionPlan:
    q: int
    strategy: str
    p: int
    t: int
    predicted_exponent: float
    listing_bound: str = "dlp12"  # listing cost bound used by the planner


# ---------------------------------------------------------------------------
# shared partition / inventory helpers
# ---------------------------------------------------------------------------


def _merge_stats(stats: Optional[Dict[str, int]], queries: int) -> None:
    if stats is not None:
        stats["queries"] = stats.get("queries", 0) + queries


def id_ranges(n: int, count: int) -> Tuple[range, ...]:
    """Split 0..n-1 into `count` contiguous ranges, sizes differing by <= 1."""
    if count < 1:
        raise ValueError("count must be >= 1")
    base, extra = divmod(n, count)
    parts = []
    start = 0
    for i in range(count):
        size = base + (1 if i < extra else 0)
        parts.append(range(start, start + size))
        start += size
    return tuple(parts)


def range_mask(r: range) -> int:
    mask = 0
    for v in r:
        mask |= 1 << v
    return mask


def _density(n: int, m: int) -> Fraction:
    pairs = n * (n - 1) // 2
    return Fraction(m, pairs) if pairs else Fraction(0)


def _inventory_masks(graph: Graph, inv: CliqueInventory) -> List[int]:
    """Common-neighborhood masks of the union inventory.

    Extension stages only ever need the common neighborhoods, not the
    member tuples: growing a clique by node w maps its mask c to
    c & adj(w).
    """
    return inv.mask_list(graph)


def _extend_masks(graph: Graph, masks: List[int], part_mask: int) -> List[int]:
    """Masks of all one-node extensions drawn from part_mask."""
    out: List[int] = []
    adj = graph.adj_mask
    for common in masks:
        cand = common & part_mask
        while cand:
            low = cand & -cand
            cand ^= low
            out.append(common & adj(low.bit_length() - 1))
    return out


def _any_extension(masks: List[int], part_mask: int) -> bool:
    return any(common & part_mask for common in masks)


# ---------------------------------------------------------------------------
# triangle detection in ~n^(1/5) rounds
# ---------------------------------------------------------------------------


def _triangle_costs(n: int, m: int) -> Tuple[int, int, int]:
    """(warmup route rounds, search domain, per-query rounds)."""
    rho = _density(n, m)
    warmup = ceil_scaled_pow(n, Fraction(1, 5), rho)
    domain = ceil_pow(n, Fraction(2, 5))
    # query: learn E(A_i u A_j, Q_k^l): 2 * n^(3/5) * n^(2/5) * rho words
    query = ceil_scaled_pow(n, 0, 2 * rho) + 1  # + per-query leader converge
    return warmup, domain, query


def detect_triangle_quintic(
    graph: Graph,
    ledger: CostLedger,
    seed: int = 0,
    params: QuantumCostParams = DEFAULT_PARAMS,
    stats: Optional[Dict[str, int]] = None,
    knowledge: Optional[KnowledgeState] = None,
) -> bool:
    """Shard V^3 over nodes, learn A_i x A_j, search Q_k in batches."""
    n = graph.n
    if n < 32:
        raise ValueError("triangle detection needs n >= 32")
    warmup, domain, query_rounds = _triangle_costs(n, graph.m)
    ledger.charge("triangle/warmup", "clique", "route", warmup)
    n_a = ceil_pow(n, Fraction(2, 5))
    a_parts = id_ranges(n, n_a)
    if knowledge is not None:
        # shard (i, j, k) of node s: the warmup teaches it the A_i x A_j slots
        a_masks = [range_mask(r) for r in a_parts]
        n_q_k = ceil_pow(n, Fraction(1, 5))
        for shard in range(n_a * n_a * n_q_k):
            owner = shard % n
            i, j = shard // (n_a * n_q_k), (shard // n_q_k) % n_a
            knowledge.add_rectangle(owner, a_masks[i], a_masks[j])

    n_q = ceil_pow(n, Fraction(1, 5))
    q_parts = id_ranges(n, n_q)
    batch_masks: List[int] = []
    for ell in range(domain):
        mask = 0
        for part in q_parts:
            size = ceil_div(len(part), domain) if len(part) else 0
            lo = ell * size
            for v in part[lo : lo + size]:
                mask |= 1 << v
        batch_masks.append(mask)
    edges = graph.edges()

    def checker(ell: int) -> Tuple[bool, int]:
        w_mask = batch_masks[ell]
        for u, v in edges:
            if graph.adj_mask(u) & graph.adj_mask(v) & w_mask:
                return True, query_rounds
        return False, query_rounds

    outcome = run_search(domain, checker, ledger, params, seed=seed,
                         phase="triangle/search")
    _merge_stats(stats, outcome.queries_evaluated)
    return outcome.found


def triangle_cost_only(
    n: int, m: int, ledger: CostLedger, params: QuantumCostParams = DEFAULT_PARAMS
) -> SearchOutcome:
    warmup, domain, query_rounds = _triangle_costs(n, m)
    ledger.charge("triangle/warmup", "clique", "route", warmup)
    rounds = charge_search(ledger, domain, query_rounds, params, "clique",
                           "triangle/search")
    return SearchOutcome(False, None, rounds, 0)


# ---------------------------------------------------------------------------
# K_{p+1} detection from K_p listing
# ---------------------------------------------------------------------------


def _plus1_costs(n: int, m: int, p: int) -> Tuple[int, int]:
    """(search domain, per-query rounds) for the +1 extension search."""
    rho = _density(n, m)
    domain = ceil_pow(n, Fraction(p - 1, p))
    # query: each owner learns E(T^v, Q_i): p * n^(1-1/p) * n^(1/p) * rho words
    query = ceil_scaled_pow(n, 0, p * rho) + 1
    return domain, query


def detect_plus1(
    graph: Graph,
    p: int,
    ledger: CostLedger,
    seed: int = 0,
    params: QuantumCostParams = DEFAULT_PARAMS,
    inv: Optional[CliqueInventory] = None,
    stats: Optional[Dict[str, int]] = None,
) -> bool:
    """List K_p, then one flat search over node batches for the +1 node."""
    n = graph.n
    if p < 2:
        raise ValueError("p must be >= 2")
    if n < 2**p:
        raise ValueError(f"plus1 needs n >= 2^p = {2**p}")
    if inv is None:
        inv = list_kp(graph, p, ledger)
    else:
        if inv.p != p:
            raise ValueError(f"inventory holds {inv.p}-cliques, need {p}")
        ledger.charge("kp-listing", "clique", "route", listing_route_rounds(n, graph.m, p))
    masks = _inventory_masks(graph, inv)
    domain, query_rounds = _plus1_costs(n, graph.m, p)
    batch_masks = [range_mask(r) for r in id_ranges(n, domain)]

    def checker(i: int) -> Tuple[bool, int]:
        return _any_extension(masks, batch_masks[i]), query_rounds

    outcome = run_search(domain, checker, ledger, params, seed=seed,
                         phase="plus1/search")
    _merge_stats(stats, outcome.queries_evaluated)
    return outcome.found


def plus1_cost_only(
    n: int, m: int, p: int, ledger: CostLedger,
    params: QuantumCostParams = DEFAULT_PARAMS,
) -> None:
    ledger.charge("kp-listing", "clique", "route", listing_route_rounds(n, m, p))
    domain, query_rounds = _plus1_costs(n, m, p)
    charge_search(ledger, domain, query_rounds, params, "clique", "plus1/search")


# ---------------------------------------------------------------------------
# K_{p+t} detection via the nested search with r_i = (1-1/p)/2^(t-i)
# ---------------------------------------------------------------------------


def nested_feasible(p: int, t: int) -> bool:
    """The level-exponent system balances only when t <= 1 + log2(p-1)."""
    return p >= 2 and t >= 1 and 2 ** (t - 1) <= p - 1


def nested_level_partitions(n: int, p: int, t: int) -> List[LevelPartition]:
    out = []
    for i in range(1, t + 1):
        r_i = Fraction(p - 1, p) / 2 ** (t - i)
        count = ceil_pow(n, r_i)
        out.append(LevelPartition(level=i, exponent=r_i, count=count,
                                  parts=id_ranges(n, count)))
    return out


def _nested_costs(n: int, m: int, p: int, t: int) -> Tuple[List[int], List[int], int]:
    """(level domain sizes, setup rounds s_1..s_{t-1}, check rounds)."""
    rho = _density(n, m)
    sizes: List[int] = []
    setups: List[int] = []
    for i in range(1, t + 1):
        r_i = Fraction(p - 1, p) / 2 ** (t - i)
        sizes.append(ceil_pow(n, r_i))
        if i < t:
            setups.append(ceil_scaled_pow(n, 1 - Fraction(1, p) - r_i, rho))
    r_t = Fraction(p - 1, p)
    check = ceil_scaled_pow(n, 1 - Fraction(1, p) - r_t, rho) + 1
    return sizes, setups, check


def detect_nested(
    graph: Graph,
    p: int,
    t: int,
    ledger: CostLedger,
    seed: int = 0,
    params: QuantumCostParams = DEFAULT_PARAMS,
    inv: Optional[CliqueInventory] = None,
    stats: Optional[Dict[str, int]] = None,
) -> bool:
    """List K_p, then run the depth-t nested search for the t extra nodes."""
    if not nested_feasible(p, t):
        raise ValueError(
            f"(p={p}, t={t}) violates the constraint t <= 1 + log2(p-1)"
        )
    n = graph.n
    if inv is None:
        inv = list_kp(graph, p, ledger)
    else:
        if inv.p != p:
            raise ValueError(f"inventory holds {inv.p}-cliques, need {p}")
        ledger.charge("kp-listing", "clique", "route", listing_route_rounds(n, graph.m, p))
    base_masks = _inventory_masks(graph, inv)
    partitions = nested_level_partitions(n, p, t)
    part_masks = [[range_mask(r) for r in lp.parts] for lp in partitions]
    sizes, setup_rounds, check_rounds = _nested_costs(n, graph.m, p, t)

    # stack[i] holds the union inventory masks after absorbing levels 1..i
    stack: List[List[int]] = [base_masks] + [[] for _ in range(t)]

    def make_setup(level_idx: int):
        def setup(prefix: Tuple[int, ...]) -> int:
            mask = part_masks[level_idx][prefix[-1]]
            stack[level_idx + 1] = _extend_masks(graph, stack[level_idx], mask)
            return setup_rounds[level_idx]

        return setup

    levels = [
        SearchLevel(sizes[i], make_setup(i) if i < t - 1 else None)
        for i in range(t)
    ]

    def checker(tup: Tuple[int, ...]) -> Tuple[bool, int]:
        mask = part_masks[t - 1][tup[-1]]
        return _any_extension(stack[t - 1], mask), check_rounds

    plan = NestedSearchPlan(levels=levels, checker=checker, params=params)
    outcome = run_nested_search(plan, ledger, seed=seed, phase="nested/search")
    _merge_stats(stats, outcome.queries_evaluated)
    return outcome.found


def nested_cost_only(
    n: int, m: int, p: int, t: int, ledger: CostLedger,
    params: QuantumCostParams = DEFAULT_PARAMS,
) -> None:
    if not nested_feasible(p, t):
        raise ValueError(
            f"(p={p}, t={t}) violates the constraint t <= 1 + log2(p-1)"
        )
    ledger.charge("kp-listing", "clique", "route", listing_route_rounds(n, m, p))
    sizes, setups, check = _nested_costs(n, m, p, t)
    rounds = nested_cost_predict(sizes, setups, check, params)
    ledger.charge("nested/search", "clique", "quantum", rounds)


# ---------------------------------------------------------------------------
# black-box extension: K_p inventory -> K_{p+t} detection in n^(1-1/2^t)
# ---------------------------------------------------------------------------


def _blackbox_costs(n: int, t: int, packing: bool) -> Tuple[List[int], List[int], int]:
    """(level domain sizes, setup rounds s_1..s_t, check rounds).

    Level l splits V into n^(1/2^(t-l)) parts; its setup broadcasts each
    node's adjacency bitmask over the current part (m-independent: a
    bitmask conveys presence and absence alike).
    """
    capacity = CliqueNet(max(n, 2)).word.capacity
    sizes: List[int] = []
    setups: List[int] = []
    for lvl in range(1, t + 1):
        frac = Fraction(1, 2 ** (t - lvl))
        sizes.append(ceil_pow(n, frac))
        part_size = ceil_pow(n, 1 - frac)
        setups.append(ceil_div(part_size, capacity) if packing else part_size)
    return sizes, setups, 1  # check: converge emptiness, one bit


def extend_blackbox(
    graph: Graph,
    inv: CliqueInventory,
    t: int,
    ledger: CostLedger,
    seed: int = 0,
    params: QuantumCostParams = DEFAULT_PARAMS,
    packing: bool = True,
    stats: Optional[Dict[str, int]] = None,
) -> bool:
    """Nested search growing the inventory one level-part node at a time."""
    if t < 1:
        raise ValueError("t must be >= 1")
    n = graph.n
    sizes, setup_rounds, check_rounds = _blackbox_costs(n, t, packing)
    parts = [[range_mask(r) for r in id_ranges(n, sizes[i])] for i in range(t)]
    base_masks = _inventory_masks(graph, inv)
    stack: List[List[int]] = [base_masks] + [[] for _ in range(t)]

    def make_setup(level_idx: int):
        def setup(prefix: Tuple[int, ...]) -> int:
            mask = parts[level_idx][prefix[-1]]
            stack[level_idx + 1] = _extend_masks(graph, stack[level_idx], mask)
            return setup_rounds[level_idx]

        return setup

    levels = [SearchLevel(sizes[i], make_setup(i)) for i in range(t)]

    def checker(tup: Tuple[int, ...]) -> Tuple[bool, int]:
        return bool(stack[t]), check_rounds

    plan = NestedSearchPlan(levels=levels, checker=checker, params=params)
    outcome = run_nested_search(plan, ledger, seed=seed, phase="blackbox/search")
    _merge_stats(stats, outcome.queries_evaluated)
    return outcome.found


def blackbox_cost_only(
    n: int, t: int, ledger: CostLedger,
    params: QuantumCostParams = DEFAULT_PARAMS,
    packing: bool = True,
) -> None:
    sizes, setups, check = _blackbox_costs(n, t, packing)
    rounds = nested_cost_predict(sizes, setups, check, params)
    ledger.charge("blackbox/search", "clique", "quantum", rounds)


# ---------------------------------------------------------------------------
# sparsity-aware extension: cost in mu = m/n instead of n
# ---------------------------------------------------------------------------


def degree_batching(degrees: Sequence[int], target: int) -> DegreeBatching:
    """Greedy fill in id order; a batch closes once its degree sum >= target."""
    if target < 1:
        raise ValueError("target must be >= 1")
    batches: List[Tuple[int, ...]] = []
    current: List[int] = []
    acc = 0
    for v, d in enumerate(degrees):
        current.append(v)
        acc += d
        if acc >= target:
            batches.append(tuple(current))
            current, acc = [], 0
    if current or not batches:
        batches.append(tuple(current))
    return DegreeBatching(batches=tuple(batches), target=target)


def _sparse_base_costs(n: int, m: int) -> Tuple[int, int]:
    """(domain y, per-query rounds) for the degree-batched +1 search."""
    y = max(1, ceil_div(2 * m, n))
    # query: broadcast a batch's incident edges (degree sum ~ n), converge
    query = 1 + 1
    return y, query


def _sparse_level_x(n: int, m: int, t: int) -> int:
    mu = Fraction(m, n)
    if mu <= 1:
        return 1
    return ceil_pow(mu, Fraction(1, 2 ** (t - 1)))


def _sparse_bcast_rounds(n: int, m: int, x: int) -> int:
    return ceil_div(m, n * x)


def extend_sparse(
    graph: Graph,
    inv: CliqueInventory,
    t: int,
    ledger: CostLedger,
    seed: int = 0,
    params: QuantumCostParams = DEFAULT_PARAMS,
    stats: Optional[Dict[str, int]] = None,
) -> bool:
    """Degree-batched extension; empty graphs short-circuit to False."""
    if t < 1:
        raise ValueError("t must be >= 1")
    n, m = graph.n, graph.m
    if m == 0:
        return False
    masks = _inventory_masks(graph, inv)
    found, rounds, queries = _sparse_search(graph, masks, t, params)
    _merge_stats(stats, queries)
    ledger.charge("sparse/search", "clique", "quantum", rounds)
    if found and params.fail_prob > 0.0:
        if random.Random(_derive_seed(seed, "sparse-fail")).random() < params.fail_prob:
            found = False
    return found


def _sparse_search(
    graph: Graph,
    masks: List[int],
    t: int,
    params: QuantumCostParams,
) -> Tuple[bool, int, int]:
    n, m = graph.n, graph.m
    degrees = graph.degrees()
    if t == 1:
        y_analytic, query = _sparse_base_costs(n, m)
        batching = degree_batching(degrees, target=n)
        y = len(batching.batches)
        found = False
        queries = 0
        for batch in batching.batches:
            queries += 1
            bmask = 0
            for v in batch:
                bmask |= 1 << v
            if _any_extension(masks, bmask):
                found = True
                break
        return found, grover_cost(y, query, params), queries

    x = _sparse_level_x(n, m, t)
    bcast = _sparse_bcast_rounds(n, m, x)
    batching = degree_batching(degrees, target=max(1, ceil_div(2 * m, x)))
    batches = list(batching.batches)[:x]
    while len(batches) < x:
        batches.append(tuple())
    found = False
    queries = 0
    inner_rounds: Optional[int] = None
    for batch in batches:
        queries += 1
        bmask = 0
        for v in batch:
            bmask |= 1 << v
        grown = _extend_masks(graph, masks, bmask)
        sub_found, sub_rounds, sub_queries = _sparse_search(graph, grown, t - 1, params)
        queries += sub_queries
        if inner_rounds is None:
            inner_rounds = sub_rounds
        if sub_found:
            found = True
            break
    total = grover_cost(x, bcast + (inner_rounds or 0), params)
    return found, total, queries


def sparse_rounds(n: int, m: int, t: int,
                  params: QuantumCostParams = DEFAULT_PARAMS) -> int:
    """Analytic extension-search rounds, mu-scaled: ~ mu^(1-1/2^t)."""
    if m <= 0:
        return 0
    if t == 1:
        y, query = _sparse_base_costs(n, m)
        return grover_cost(y, query, params)
    x = _sparse_level_x(n, m, t)
    query = _sparse_bcast_rounds(n, m, x) + sparse_rounds(n, m, t - 1, params)
    return grover_cost(x, query, params)


def sparse_cost_only(
    n: int, m: int, t: int, ledger: CostLedger,
    params: QuantumCostParams = DEFAULT_PARAMS,
) -> None:
    ledger.charge("sparse/search", "clique", "quantum",
                  sparse_rounds(n, m, t, params))


# ---------------------------------------------------------------------------
# strategy planner and dispatcher
# ---------------------------------------------------------------------------


def _candidate_plans(
    n: int, m: int, q: int, listing_gate: bool = True
) -> List[Tuple[Tuple, DetectionPlan]]:
    mu = Fraction(m, n) if n else Fraction(0)
    log_mu_over_log_n = (
        math.log(float(mu)) / math.log(n) if mu > 1 and n > 1 else 0.0
    )
    pref = {s: i for i, s in enumerate(STRATEGIES)}
    out: List[Tuple[Tuple, DetectionPlan]] = []

    def push(strategy: str, p: int, t: int, exponent: float) -> None:
        plan = DetectionPlan(q=q, strategy=strategy, p=p, t=t,
                             predicted_exponent=exponent)
        out.append(((exponent, t, p, pref[strategy]), plan))

    if q == 3 and n >= 32:
        push("triangle15", 2, 1, 0.2)
    for p in range(2, q):
        t = q - p
        if listing_gate and 2**p > n:
            continue  # listing degenerates below n = 2^p
        listing = float(Fraction(p - 2, p))
        if t == 1 and p >= 3:
            push("plus1", p, 1, max(listing, float(Fraction(p - 1, 2 * p))))
        if nested_feasible(p, t):
            search = float(Fraction(p - 1, p) * (1 - Fraction(1, 2**t)))
            push("nested", p, t, max(listing, search))
        push("blackbox", p, t, max(listing, float(1 - Fraction(1, 2**t))))
        sparse_search = (1 - 1.0 / 2**t) * log_mu_over_log_n
        push("sparse", p, t, max(listing, sparse_search))
    return out


def plan_strategy(n: int, m: int, q: int, strategy: Optional[str] = None) -> DetectionPlan:
    """Pick the (strategy, p, t) with the smallest predicted round exponent.

    Ties break toward smaller t, then smaller p.  With `strategy` given,
    only that strategy's parameterizations compete.
    """
    if q < 3:
        raise ValueError("q must be >= 3")
    if strategy is not None and strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    for gate in (True, False):
        candidates = _candidate_plans(n, m, q, listing_gate=gate)
        if strategy is not None:
            candidates = [c for c in candidates if c[1].strategy == strategy]
        if candidates:
            candidates.sort(key=lambda c: c[0])
            return candidates[0][1]
    raise ValueError(f"no applicable strategy for q={q}, n={n}")


def applicable_strategies(n: int, m: int, q: int) -> List[DetectionPlan]:
    """Best parameterization of every strategy that applies to (n, m, q)."""
    best: Dict[str, Tuple[Tuple, DetectionPlan]] = {}
    for key, plan in _candidate_plans(n, m, q):
        cur = best.get(plan.strategy)
        if cur is None or key < cur[0]:
            best[plan.strategy] = (key, plan)
    return [best[s][1] for s in STRATEGIES if s in best]


def detect_clique(
    graph: Graph,
    q: int,
    ledger: CostLedger,
    strategy: Optional[str] = None,
    seed: int = 0,
    params: QuantumCostParams = DEFAULT_PARAMS,
    inv: Optional[CliqueInventory] = None,
    stats: Optional[Dict[str, int]] = None,
    packing: bool = True,
) -> bool:
    """Dispatch to the planned (or requested) strategy.

    Degenerate inputs (q > n, empty graph) short-circuit to False at zero
    quantum cost.
    """
    if q < 3:
        raise ValueError("q must be >= 3")
    if q > graph.n or graph.m == 0:
        return False
    plan = plan_strategy(graph.n, graph.m, q, strategy)
    if plan.strategy == "triangle15":
        return detect_triangle_quintic(graph, ledger, seed=seed, params=params,
                                       stats=stats)
    if plan.strategy == "plus1":
        return detect_plus1(graph, plan.p, ledger, seed=seed, params=params,
                            inv=inv, stats=stats)
    if plan.strategy == "nested":
        return detect_nested(graph, plan.p, plan.t, ledger, seed=seed,
                             params=params, inv=inv, stats=stats)
    if inv is None:
        inv = list_kp(graph, plan.p, ledger)
    else:
        if inv.p != plan.p:
            raise ValueError(f"inventory holds {inv.p}-cliques, need {plan.p}")
        ledger.charge("kp-listing", "clique", "route",
                      listing_route_rounds(graph.n, graph.m, plan.p))
    if plan.strategy == "blackbox":
        return extend_blackbox(graph, inv, plan.t, ledger, seed=seed,
                               params=params, stats=stats, packing=packing)
    return extend_sparse(graph, inv, plan.t, ledger, seed=seed, params=params,
                         stats=stats)
