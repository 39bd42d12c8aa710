"""Clique detection strategies against the brute-force oracles."""

from fractions import Fraction

import pytest

from qcongest.cli import fit_slope
from qcongest.cliquedetect import (
    applicable_strategies,
    blackbox_cost_only,
    degree_batching,
    detect_clique,
    detect_nested,
    detect_plus1,
    detect_triangle_quintic,
    extend_blackbox,
    extend_sparse,
    nested_cost_only,
    nested_level_partitions,
    plan_strategy,
    plus1_cost_only,
    sparse_cost_only,
    triangle_cost_only,
)
from qcongest.cliquelist import CliqueInventory, list_kp
from qcongest.graph import (
    GenSpec,
    Graph,
    generate,
    oracle_has_clique,
    oracle_has_extension,
)
from qcongest.netsim import CostLedger
from qcongest.qsearch import QuantumCostParams, nested_cost_predict


def gnp(n, p, seed):
    return generate(GenSpec(kind="gnp", n=n, edge_prob=p, seed=seed))


class TestTriangle:
    def test_planted_triangle(self):
        g = Graph(32, [(0, 1), (0, 2), (1, 2)])
        assert detect_triangle_quintic(g, CostLedger())

    def test_star_is_triangle_free(self):
        g = Graph(64, [(0, i) for i in range(1, 64)])
        assert not detect_triangle_quintic(g, CostLedger())

    def test_matches_oracle_on_sparse_gnp(self):
        g = gnp(512, 0.05, 11)
        assert detect_triangle_quintic(g, CostLedger()) == oracle_has_clique(g, 3)

    def test_needs_32_nodes(self):
        with pytest.raises(ValueError):
            detect_triangle_quintic(Graph(16, [(0, 1)]), CostLedger())

    def test_cost_only_matches_full_mode_ledger(self):
        # identical accounting on the same realized (n, m)
        g = gnp(1024, 0.5, 1)
        full = CostLedger()
        detect_triangle_quintic(g, full)
        cost = CostLedger()
        triangle_cost_only(g.n, g.m, cost)
        assert [e.rounds for e in full.entries] == [e.rounds for e in cost.entries]
        assert [e.kind for e in full.entries] == [e.kind for e in cost.entries]


class TestExtendBlackbox:
    def test_k5_from_triangles(self):
        g = generate(GenSpec(kind="complete", n=5))
        inv = list_kp(g, 3, CostLedger())
        assert extend_blackbox(g, inv, 2, CostLedger())

    def test_empty_inventory(self):
        g = generate(GenSpec(kind="complete", n=5))
        inv = CliqueInventory(3, 5)
        assert not extend_blackbox(g, inv, 2, CostLedger())

    def test_matches_extension_oracle(self):
        g = gnp(128, 0.4, 2)
        inv = list_kp(g, 3, CostLedger())
        got = extend_blackbox(g, inv, 1, CostLedger())
        assert got == oracle_has_extension(g, inv, 1)

    def test_partial_inventory_is_respected(self):
        # extension is relative to the inventory, not all cliques
        edges = [(u, v) for u in range(4) for v in range(u + 1, 4)]
        edges += [(3, 8), (3, 9), (8, 9)]
        g = Graph(10, edges)
        inv = CliqueInventory.from_cliques(3, 10, [(3, 8, 9)])
        assert not extend_blackbox(g, inv, 1, CostLedger())
        assert oracle_has_clique(g, 4)


class TestExtendSparse:
    def test_planted_k5_with_path(self):
        edges = [(u, v) for u in range(5) for v in range(u + 1, 5)]
        edges += [(i, i + 1) for i in range(5, 127)]
        g = Graph(128, edges)
        inv = list_kp(g, 4, CostLedger())
        sparse_led = CostLedger()
        assert extend_sparse(g, inv, 1, sparse_led)
        black_led = CostLedger()
        assert extend_blackbox(g, inv, 1, black_led)
        # mu << n: the sparsity-aware search is much cheaper
        assert sparse_led.total() < black_led.total() / 4

    def test_empty_inventory(self):
        g = gnp(64, 0.2, 3)
        assert not extend_sparse(g, CliqueInventory(3, 64), 1, CostLedger())

    def test_empty_graph_zero_rounds(self):
        g = generate(GenSpec(kind="empty", n=32))
        led = CostLedger()
        assert not extend_sparse(g, CliqueInventory(3, 32), 1, led)
        assert led.total() == 0

    def test_triangle_via_edge_inventory(self):
        g = gnp(256, 3 / 256, 4)
        inv = list_kp(g, 2, CostLedger())
        got = extend_sparse(g, inv, 1, CostLedger())
        assert got == oracle_has_clique(g, 3)

    def test_recursive_t2_matches_oracle(self):
        for seed in range(4):
            g = gnp(48, 0.35, seed + 100)
            inv = list_kp(g, 2, CostLedger())
            got = extend_sparse(g, inv, 2, CostLedger())
            assert got == oracle_has_clique(g, 4)

    def test_degree_batching_bounds(self):
        g = gnp(96, 0.3, 7)
        batching = degree_batching(g.degrees(), target=96)
        nodes = sorted(v for b in batching.batches for v in b)
        assert nodes == list(range(96))
        maxdeg = max(g.degrees())
        for batch in batching.batches[:-1]:
            s = sum(g.degree(v) for v in batch)
            assert 96 / 2 <= s <= 96 + maxdeg


class TestDetectPlus1:
    def test_k6_contains_k4(self):
        g = generate(GenSpec(kind="planted_clique", n=32, edge_prob=0.0,
                             planted_size=6, seed=0))
        assert detect_plus1(g, 3, CostLedger())

    def test_bipartite_has_no_k4(self):
        edges = [(u, v) for u in range(8) for v in range(8, 16)]
        g = Graph(16, edges)
        assert not detect_plus1(g, 3, CostLedger())

    def test_exponent_one_third_for_p3(self):
        ns = [2**k for k in range(10, 17)]
        ys = []
        for n in ns:
            led = CostLedger()
            plus1_cost_only(n, n * (n - 1) // 2, 3, led)
            ys.append(led.total())
        assert abs(fit_slope(ns, ys) - 1 / 3) < 0.05


class TestDetectNested:
    def test_planted_k5(self):
        g = generate(GenSpec(kind="planted_clique", n=32, edge_prob=0.0,
                             planted_size=5, seed=0))
        assert detect_nested(g, 3, 2, CostLedger())

    def test_level_exponents_p3_t2(self):
        parts = nested_level_partitions(64, 3, 2)
        assert parts[0].exponent == Fraction(1, 3)
        assert parts[1].exponent == Fraction(2, 3)

    def test_constraint_rejected(self):
        g = gnp(64, 0.5, 0)
        with pytest.raises(ValueError, match="constraint"):
            detect_nested(g, 3, 3, CostLedger())

    def test_matches_oracle_q6(self):
        g = gnp(128, 0.5, 8)
        got = detect_nested(g, 4, 2, CostLedger())
        assert got == oracle_has_clique(g, 6)

    def test_rounds_equal_predictor(self):
        # full run charges exactly the closed-form prediction
        g = generate(GenSpec(kind="planted_clique", n=128, edge_prob=0.3,
                             planted_size=7, seed=5))
        led = CostLedger()
        assert detect_nested(g, 5, 2, led)
        from qcongest.cliquedetect import _nested_costs

        sizes, setups, check = _nested_costs(g.n, g.m, 5, 2)
        quantum = [e for e in led.entries if e.kind == "quantum"]
        assert len(quantum) == 1
        assert quantum[0].rounds == nested_cost_predict(sizes, setups, check)

    def test_ledger_independent_of_answer(self):
        # same (n, m), clique present vs destroyed: identical ledgers
        g1 = generate(GenSpec(kind="planted_clique", n=48, edge_prob=0.15,
                              planted_size=5, seed=3))
        edges = g1.edges()
        assert oracle_has_clique(g1, 5)
        # break the planted clique, keep m: swap one clique edge for a non-edge
        edges.remove((0, 1))
        non_edge = next(
            (u, v) for u in range(48) for v in range(u + 1, 48)
            if not g1.has_edge(u, v)
        )
        g2 = Graph(48, edges + [non_edge])
        led1, led2 = CostLedger(), CostLedger()
        r1 = detect_nested(g1, 4, 1, led1)
        r2 = detect_nested(g2, 4, 1, led2)
        assert g1.m == g2.m
        assert led1.entries == led2.entries
        assert r1  # sanity: answers may differ, charges may not


class TestPlanner:
    def test_q5_dense(self):
        n = 64
        plan = plan_strategy(n, n * (n - 1) // 2, 5)
        assert (plan.p, plan.t) == (4, 1)
        assert abs(plan.predicted_exponent - 0.5) < 1e-9

    def test_q4(self):
        n = 64
        plan = plan_strategy(n, n * (n - 1) // 2, 4)
        assert (plan.p, plan.t) == (3, 1)
        assert abs(plan.predicted_exponent - 1 / 3) < 1e-9

    def test_q6_nested_beats_plus1(self):
        n = 64
        plan = plan_strategy(n, n * (n - 1) // 2, 6)
        assert plan.strategy == "nested" and (plan.p, plan.t) == (4, 2)
        assert abs(plan.predicted_exponent - 0.5625) < 1e-9
        # cross-check by enumerating feasible pairs
        best = min(
            max(1 - 2 / p, (1 - 1 / p) * (1 - 1 / 2 ** (6 - p)))
            for p in range(3, 6)
            if 2 ** (6 - p - 1) <= p - 1
        )
        assert abs(plan.predicted_exponent - best) < 1e-9

    def test_sparse_wins_on_sparse_graphs(self):
        plan = plan_strategy(4096, 4096 * 4, 5)
        assert plan.strategy == "sparse"

    def test_strategy_filter(self):
        plan = plan_strategy(64, 2016, 5, strategy="blackbox")
        assert plan.strategy == "blackbox"

    def test_applicable_strategies_q7(self):
        plans = applicable_strategies(64, 2016, 7)
        names = {p.strategy for p in plans}
        assert names == {"plus1", "nested", "blackbox", "sparse"}
        small = applicable_strategies(32, 496, 7)
        assert {p.strategy for p in small} == {"nested", "blackbox", "sparse"}


class TestDetectClique:
    @pytest.mark.parametrize("q", [3, 4, 5, 6, 7])
    def test_complete_padded(self, q):
        g = generate(GenSpec(kind="planted_clique", n=64, edge_prob=0.05,
                             planted_size=q, seed=q))
        assert detect_clique(g, q, CostLedger(), seed=1)

    def test_multipartite_one_short(self):
        # complete (q-1)-partite graph: clique number q-1
        q = 5
        parts = [range(i * 8, (i + 1) * 8) for i in range(q - 1)]
        edges = []
        for i, a in enumerate(parts):
            for b in parts[i + 1:]:
                edges += [(u, v) for u in a for v in b]
        g = Graph(8 * (q - 1), edges)
        assert not detect_clique(g, q, CostLedger(), seed=2)

    def test_degenerate_inputs(self):
        g = gnp(16, 0.5, 0)
        led = CostLedger()
        assert not detect_clique(g, 20, led)
        assert led.total() == 0
        empty = generate(GenSpec(kind="empty", n=16))
        assert not detect_clique(empty, 3, led)
        assert led.total() == 0

    @pytest.mark.parametrize("strategy", ["plus1", "nested", "blackbox", "sparse"])
    def test_fail_injection_never_creates_positives(self, strategy):
        g = generate(GenSpec(kind="planted_clique", n=32, edge_prob=0.2,
                             planted_size=5, seed=4))
        params = QuantumCostParams(fail_prob=0.999999)
        led = CostLedger()
        found = detect_clique(g, 5, led, strategy=strategy, seed=0, params=params)
        assert not found  # injected misses only ever flip found -> False

    def test_small_oracle_suite(self):
        agree = 0
        for seed in range(20):
            n = 32 + (seed % 16)
            g = gnp(n, (0.2, 0.5, 0.8)[seed % 3], seed + 50)
            q = 4 + seed % 3
            got = detect_clique(g, q, CostLedger(), seed=seed)
            assert got == oracle_has_clique(g, q)
            agree += 1
        assert agree == 20


class TestCostOnlySlopes:
    def test_blackbox_extension_exponents(self):
        for t in (1, 2):
            ns = [2**k for k in range(10, 17)]
            ys = []
            for n in ns:
                led = CostLedger()
                blackbox_cost_only(n, t, led, packing=False)
                ys.append(led.total())
            assert abs(fit_slope(ns, ys) - (1 - 1 / 2**t)) < 0.05

    def test_sparse_mu_scaling(self):
        n = 2**14
        mus = [2**k for k in range(4, 11)]
        ys = []
        for mu in mus:
            led = CostLedger()
            sparse_cost_only(n, mu * n, 1, led)
            ys.append(led.total())
        assert abs(fit_slope(mus, ys) - 0.5) < 0.07

    def test_nested_exponents(self):
        for p, t in ((3, 1), (4, 1), (4, 2), (5, 2)):
            ns = [2**k for k in range(10, 17)]
            ys = []
            for n in ns:
                led = CostLedger()
                nested_cost_only(n, n * (n - 1) // 2, p, t, led)
                ys.append(led.total())
            target = max(1 - 2 / p, (1 - 1 / p) * (1 - 1 / 2**t))
            assert abs(fit_slope(ns, ys) - target) < 0.05, (p, t)


class TestKnowledgeTracking:
    def test_triangle_warmup_rectangles(self):
        from qcongest.netsim import KnowledgeState

        g = gnp(36, 0.3, 1)
        ks = KnowledgeState(36)
        before = [ks.rectangle_count(v) for v in range(36)]
        detect_triangle_quintic(g, CostLedger(), knowledge=ks)
        after = [ks.rectangle_count(v) for v in range(36)]
        # monotone: rectangles only accumulate, every node owns >= 1 shard
        assert all(b >= a for a, b in zip(before, after))
        assert all(b > a for a, b in zip(before, after))

    def test_listing_owner_knows_its_groups(self):
        from qcongest.cliquelist import tuple_assignment
        from qcongest.netsim import KnowledgeState

        g = gnp(16, 0.4, 2)
        ks = KnowledgeState(16)
        list_kp(g, 2, CostLedger(), knowledge=ks)
        ta = tuple_assignment(16, 2)
        # owner of multiset (0, 1) must know all slots across groups 0 and 1
        rank = ta.multisets.index((0, 1))
        owner = ta.owner(rank)
        for u in ta.groups[0]:
            for v in ta.groups[1]:
                assert ks.knows(owner, u, v)


class TestLedgerDeterminism:
    def test_identical_runs_identical_ledgers(self):
        g = gnp(48, 0.4, 12)
        ledgers = []
        for _ in range(2):
            led = CostLedger()
            detect_nested(g, 3, 2, led, seed=5)
            ledgers.append(led.entries)
        assert ledgers[0] == ledgers[1]

    def test_identical_cycle_runs_identical_ledgers(self):
        from qcongest.cycledetect import detect_even_cycle
        from qcongest.graph import GenSpec, generate

        g = generate(GenSpec(kind="planted_cycle", n=48, edge_prob=0.02,
                             planted_size=4, seed=3))
        entries = []
        for _ in range(2):
            led = CostLedger()
            detect_even_cycle(g, 4, led, seed=9)
            entries.append(led.entries)
        assert entries[0] == entries[1]


class TestNestedDepthThree:
    def test_t3_matches_oracle(self):
        # t = 3 is feasible from p = 5 (2^(t-1) <= p-1)
        for kind, prob, seed in (("planted_clique", 0.25, 3), ("gnp", 0.25, 4),
                                 ("gnp", 0.55, 5)):
            spec = GenSpec(kind=kind, n=40, edge_prob=prob,
                           planted_size=8 if kind == "planted_clique" else 0,
                           seed=seed)
            g = generate(spec)
            got = detect_nested(g, 5, 3, CostLedger(), seed=1)
            assert got == oracle_has_clique(g, 8)
