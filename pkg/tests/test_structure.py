"""Tests for layer profiles, chain maximization, biclique extraction,
and distance-preserving removals."""

from __future__ import annotations

import random

import pytest

from edl.core import (
    DenseDigraph,
    VertexPartition,
    directed_cycle,
    is_isomorphic,
    remove_vertex,
)
from edl.families import BoundName, closed_form, d_2r_r_1, d_nrs
from edl.structure import (
    LayerProfile,
    biconn_large_n_constants,
    bipartite_large_n_constants,
    chain_value,
    claim_optimal_profiles,
    extract_bidirected_biclique,
    is_distance_preserving_removal,
    layer_profile_size,
    maximize_chain,
)


def complete_bipartite(n1: int, n2: int):
    cls = [1] * n1 + [2] * n2
    part = VertexPartition(cls)
    rows = [part.mask(2) if cls[i] == 1 else part.mask(1)
            for i in range(n1 + n2)]
    return DenseDigraph(n1 + n2, rows), part


def induces_biclique(D, s1, s2) -> bool:
    return all(D.rows[a] >> b & 1 and D.rows[b] >> a & 1
               for a in s1 for b in s2)


# =========================================================================
# Layer profiles
# =========================================================================

class TestLayerProfile:
    def test_fields(self):
        p = LayerProfile((1, 1, 4, 3, 1))
        assert p.r == 4
        assert p.n == 10
        assert p.n_e == 6
        assert p.n_o == 4
        assert p.x(2) == 3
        assert p.x(0) == 0

    def test_size_formula(self):
        assert layer_profile_size(LayerProfile((1, 1, 4, 3, 1))) == 40
        for n in (6, 9, 12):
            assert layer_profile_size(LayerProfile((1, n - 2, 1))) == 3 * (n - 2)

    def test_validation(self):
        with pytest.raises(ValueError, match="n_0 must be 1"):
            LayerProfile((2, 1, 1))
        with pytest.raises(ValueError, match="n_1 must be >= 1"):
            LayerProfile((1, 0, 2))
        with pytest.raises(ValueError, match="at least layers"):
            LayerProfile((1,))

    def test_hashable(self):
        assert LayerProfile((1, 2, 1)) in {LayerProfile((1, 2, 1))}


# =========================================================================
# Chain maximization
# =========================================================================

class TestMaximizeChain:
    def test_10_4(self):
        value, optima = maximize_chain(10, 4)
        assert value == 20
        tails = {p.layers[1:] for p in optima}
        assert {(1, 3, 4, 1), (1, 4, 3, 1), (2, 3, 3, 1),
                (3, 3, 2, 1), (2, 4, 2, 1)} <= tails

    def test_12_5(self):
        value, _ = maximize_chain(12, 5)
        assert value == 26

    def test_minimal_order(self):
        value, optima = maximize_chain(5, 4)
        assert value == 4
        assert [p.layers for p in optima] == [(1, 1, 1, 1, 1)]

    def test_value_formula_and_claim_shape_full_range(self):
        # maximize_chain raises internally if the brute-force optimum set
        # or value ever disagrees with the characterization
        for n in range(4, 15):
            for r in range(3, n):
                value, optima = maximize_chain(n, r)
                x = n - r - 1
                assert value == r + 2 * x + x * x // 4
                assert set(optima) == claim_optimal_profiles(n, r)
                for p in optima:
                    assert p.layers[-1] == 1
                    assert chain_value(p) == value

    def test_optima_sorted_and_deterministic(self):
        _, a = maximize_chain(11, 4)
        _, b = maximize_chain(11, 4)
        assert a == b
        assert a == sorted(a, key=lambda p: p.layers)

    def test_layered_size_matches_bipartite_bound(self):
        # Balanced extremal profiles reproduce the closed-form arc count.
        for n in range(4, 15):
            for r in range(3, n):
                profs = [p for p in claim_optimal_profiles(n, r)
                         if abs(p.n_e - 1 - p.n_o) <= 1]
                assert profs
                got = max(layer_profile_size(p) for p in profs)
                assert got == closed_form(BoundName.BIP_DIGRAPH, n=n, r=r)

    def test_domain(self):
        with pytest.raises(ValueError, match="n > r >= 3"):
            maximize_chain(5, 5)
        with pytest.raises(ValueError, match="n > r >= 3"):
            maximize_chain(5, 2)


# =========================================================================
# Biclique extraction
# =========================================================================

class TestExtractBidirectedBiclique:
    def test_complete_is_returned_whole(self):
        D, part = complete_bipartite(4, 4)
        s1, s2 = extract_bidirected_biclique(D, part, 1)
        assert (s1, s2) == ((0, 1, 2, 3), (4, 5, 6, 7))

    def test_one_missing_pair(self):
        D, part = complete_bipartite(6, 6)
        rows = list(D.rows)
        rows[0] &= ~(1 << 6)
        rows[6] &= ~(1 << 0)
        D = DenseDigraph(12, rows)
        s1, s2 = extract_bidirected_biclique(D, part, 1)
        assert len(s1) == len(s2) >= 5
        assert induces_biclique(D, s1, s2)

    def test_empty_seeds_give_k0(self):
        D, part = complete_bipartite(3, 3)
        rows = [0] * 6
        sparse = DenseDigraph(6, rows)
        assert extract_bidirected_biclique(sparse, part, 1) == ((), ())

    def test_improper_partition(self):
        D, _ = complete_bipartite(3, 3)
        with pytest.raises(ValueError, match="joins class"):
            extract_bidirected_biclique(D, VertexPartition([1] * 6), 1)

    def test_t_domain(self):
        D, part = complete_bipartite(2, 2)
        with pytest.raises(ValueError, match="t must be"):
            extract_bidirected_biclique(D, part, 0)

    def test_guarantee_on_dense_random(self):
        # hypotheses: average total degree >= n - t and n > 9t
        rng = random.Random(2024)
        ran = 0
        while ran < 25:
            t = rng.choice([1, 2])
            n = rng.choice([24, 30, 36, 48, 60])
            if n <= 9 * t:
                continue
            n1 = n // 2 + rng.randint(-2, 2)
            n2 = n - n1
            D, part = complete_bipartite(n1, n2)
            max_del = 2 * n1 * n2 - (n * (n - t) + 1) // 2
            if max_del < 0:
                continue
            crossing = [(i, j) for i in range(n1) for j in range(n1, n)]
            crossing += [(j, i) for (i, j) in crossing]
            rng.shuffle(crossing)
            rows = list(D.rows)
            for (a, b) in crossing[: rng.randint(0, max_del)]:
                rows[a] &= ~(1 << b)
            D = DenseDigraph(n, rows)
            s1, s2 = extract_bidirected_biclique(D, part, t)
            assert len(s1) * 18 * t >= n
            assert induces_biclique(D, s1, s2)
            ran += 1


# =========================================================================
# Distance-preserving removal
# =========================================================================

class TestDistancePreservingRemoval:
    def test_blowup_copy_is_removable(self):
        ok, witness = is_distance_preserving_removal(d_nrs(10, 3, 2), 0)
        assert ok
        assert witness is None

    def test_directed_cycle_never_removable(self):
        for v in range(5):
            ok, witness = is_distance_preserving_removal(directed_cycle(5), v)
            assert not ok
            assert witness == {"reason": "not_strong"}

    @pytest.mark.parametrize("r", [3, 4])
    def test_minimal_member_has_no_removal(self, r):
        D = d_2r_r_1(r)
        for v in range(D.n):
            ok, _ = is_distance_preserving_removal(D, v)
            assert not ok

    def test_distance_change_witness(self):
        # bidirected path 0-1-2: dropping the middle disconnects
        from edl.core import from_arc_list

        D = from_arc_list(3, [(0, 1), (1, 0), (1, 2), (2, 1)])
        ok, witness = is_distance_preserving_removal(D, 1)
        assert not ok
        assert witness["reason"] == "not_strong"
        # adding the chord 0<->2 keeps strongness but shortens nothing
        D = from_arc_list(3, [(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)])
        ok, witness = is_distance_preserving_removal(D, 1)
        assert ok

    def test_distance_changed_witness_original_labels(self):
        from edl.core import bidirected_cycle

        # deleting 0 from bidirected C5 stretches the pair (1, 4)
        ok, witness = is_distance_preserving_removal(bidirected_cycle(5), 0)
        assert not ok
        assert witness == {"reason": "distance_changed", "pair": (1, 4),
                           "before": 2, "after": 3}

    def test_outradius_changed_witness(self):
        from edl.core import from_arc_list

        # bidirected path 0-1-2-3: distances among 0,1,2 survive deleting
        # 3 but the outradius drops from 2 to 1
        D = from_arc_list(4, [(0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2)])
        ok, witness = is_distance_preserving_removal(D, 3)
        assert not ok
        assert witness == {"reason": "outradius_changed",
                           "before": 2, "after": 1}

    def test_preconditions(self):
        with pytest.raises(ValueError, match="not strong"):
            is_distance_preserving_removal(DenseDigraph(3, [0, 0, 0]), 0)
        with pytest.raises(ValueError, match="at least 2"):
            is_distance_preserving_removal(DenseDigraph(1, [0]), 0)

    @pytest.mark.parametrize("r", [3, 4])
    def test_reduction_chain_reaches_minimal_member(self, r):
        for n in range(2 * r + 1, 13):
            for s in range(1, (n - 2 * r + 2) // 2 + 1):
                D = d_nrs(n, r, s)
                while D.n > 2 * r:
                    for v in range(D.n):
                        ok, _ = is_distance_preserving_removal(D, v)
                        if ok:
                            D = remove_vertex(D, v)
                            break
                    else:
                        pytest.fail(f"stuck at order {D.n} from ({n},{r},{s})")
                assert is_isomorphic(D, d_2r_r_1(r))


# =========================================================================
# Recorded constants
# =========================================================================

class TestLargeNConstants:
    def test_biconn(self):
        c = biconn_large_n_constants(3)
        assert c["t"] == 3
        assert c["n0"] == 8 * 3 * (40 * 9 + 12 + 1) + 1
        assert c["n1"] == 4 * c["n0"]

    def test_bipartite(self):
        c = bipartite_large_n_constants(4)
        assert c["t"] == 4
        assert c["n0"] == 18 * 4 * (45 * 16 + 24 + 1) + 2
        assert c["n1"] == 20 * c["n0"]
