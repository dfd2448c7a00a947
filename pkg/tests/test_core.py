"""Unit tests for the digraph core type, operations, and serialization."""

from __future__ import annotations

import itertools
import random

import pytest

from edl import core


FIG8_LEFT_ARCS = [
    (0, 1), (0, 3), (1, 0), (1, 2), (2, 0), (2, 1), (2, 3), (2, 5),
    (3, 0), (3, 4), (4, 0), (4, 1), (4, 3), (4, 5), (5, 1), (5, 2),
    (5, 3), (5, 4),
]


def random_digraph(rng, n):
    rows = [rng.getrandbits(n) & ~(1 << i) & ((1 << n) - 1) for i in range(n)]
    return core.DenseDigraph(n, rows)


def relabel(D, p):
    return core.from_arc_list(D.n, [(p[i], p[j]) for i, j in core.arcs(D)])


def brute_canonical(D):
    """Reference canonical form: minimum over all permutations."""
    n = D.n
    best = None
    for p in itertools.permutations(range(n)):
        rows = []
        for a in range(n):
            val = 0
            for b in range(n):
                if D.rows[p[a]] >> p[b] & 1:
                    val |= 1 << (n - 1 - b)
            rows.append(val)
        t = tuple(rows)
        if best is None or t < best:
            best = t
    out = []
    for val in best:
        row = 0
        for b in range(n):
            if val >> (n - 1 - b) & 1:
                row |= 1 << b
        out.append(row)
    return core.DenseDigraph(n, out)


# =========================================================================
# DenseDigraph type
# =========================================================================

class TestDenseDigraph:
    def test_validation(self):
        with pytest.raises(ValueError):
            core.DenseDigraph(0, [])
        with pytest.raises(ValueError):
            core.DenseDigraph(65, [0] * 65)
        with pytest.raises(ValueError):
            core.DenseDigraph(3, [0, 0])
        with pytest.raises(ValueError):
            core.DenseDigraph(3, [1 << 3, 0, 0])
        with pytest.raises(ValueError):
            core.DenseDigraph(3, [1, 0, 0])  # self-loop at 0

    def test_immutable_and_hashable(self):
        D = core.directed_cycle(4)
        with pytest.raises(AttributeError):
            D.n = 5
        assert hash(D) == hash(core.directed_cycle(4))
        assert D == core.directed_cycle(4)
        assert D != core.directed_cycle(5)

    def test_degrees(self):
        D = core.from_arc_list(3, [(0, 1), (0, 2), (1, 2)])
        assert D.arc_count == 3
        assert D.outdeg(0) == 2 and D.indeg(2) == 2
        assert D.has_arc(0, 1) and not D.has_arc(1, 0)

    def test_order_bounds(self):
        D = core.bidirected_clique(64)
        assert D.arc_count == 64 * 63
        assert core.DenseDigraph(1, [0]).arc_count == 0


class TestVertexPartition:
    def test_validation(self):
        with pytest.raises(ValueError):
            core.VertexPartition([])
        with pytest.raises(ValueError):
            core.VertexPartition([1, 3])

    def test_accessors(self):
        P = core.VertexPartition([1, 2, 1, 2, 2])
        assert P.members(1) == (0, 2)
        assert P.sizes() == (2, 3)
        assert P.opposite_size(0) == 3
        assert P.opposite_size(1) == 2
        assert P.mask(2) == 0b11010


# =========================================================================
# Constructors and basic operations
# =========================================================================

class TestFromArcList:
    def test_directed_triangle(self):
        D = core.from_arc_list(3, [(0, 1), (1, 2), (2, 0)])
        assert D.arc_count == 3

    def test_fig8_left_arc_count(self):
        D = core.from_arc_list(6, FIG8_LEFT_ARCS)
        assert D.arc_count == 18

    def test_duplicates_idempotent(self):
        D = core.from_arc_list(2, [(0, 1), (1, 0), (0, 1)])
        assert D.arc_count == 2
        assert D == core.bidirected_clique(2)

    def test_errors(self):
        with pytest.raises(ValueError):
            core.from_arc_list(3, [(0, 3)])
        with pytest.raises(ValueError):
            core.from_arc_list(3, [(1, 1)])


class TestComplement:
    def test_clique_to_empty(self):
        assert core.complement(core.bidirected_clique(4)) == core.empty_digraph(4)

    def test_directed_triangle(self):
        C3 = core.directed_cycle(3)
        assert core.complement(C3) == core.reverse(C3)
        assert core.complement(C3).arc_count == 3

    def test_fig8_left(self):
        D = core.from_arc_list(6, FIG8_LEFT_ARCS)
        assert core.complement(D).arc_count == 30 - 18

    def test_involution(self):
        rng = random.Random(11)
        for _ in range(30):
            D = random_digraph(rng, rng.randint(1, 9))
            assert core.complement(core.complement(D)) == D
            assert core.complement(D).arc_count == D.n * (D.n - 1) - D.arc_count


class TestReverse:
    def test_cycle(self):
        C4 = core.directed_cycle(4)
        R = core.reverse(C4)
        assert R.arc_count == 4
        assert R.has_arc(1, 0) and not R.has_arc(0, 1)

    def test_symmetric_fixed_point(self):
        K3 = core.bidirected_clique(3)
        assert core.reverse(K3) == K3
        assert core.is_symmetric(K3)

    def test_involution(self):
        rng = random.Random(12)
        for _ in range(30):
            D = random_digraph(rng, rng.randint(1, 9))
            assert core.reverse(core.reverse(D)) == D
            assert core.reverse(D).arc_count == D.arc_count


class TestIntersect:
    def test_idempotent(self):
        D = core.from_arc_list(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
        assert core.intersect(D, D) == D

    def test_with_complement_empty(self):
        D = core.directed_cycle(5)
        assert core.intersect(D, core.complement(D)) == core.empty_digraph(5)

    def test_order_mismatch(self):
        with pytest.raises(ValueError):
            core.intersect(core.directed_cycle(3), core.directed_cycle(4))


class TestRemoveVertex:
    def test_clique(self):
        for v in range(5):
            assert core.remove_vertex(core.bidirected_clique(5), v) == core.bidirected_clique(4)

    def test_index_compaction(self):
        D = core.from_arc_list(4, [(0, 2), (2, 3), (3, 1)])
        E = core.remove_vertex(D, 1)
        assert E == core.from_arc_list(3, [(0, 1), (1, 2)])

    def test_errors(self):
        with pytest.raises(ValueError):
            core.remove_vertex(core.DenseDigraph(1, [0]), 0)
        with pytest.raises(ValueError):
            core.remove_vertex(core.directed_cycle(3), 3)


class TestBlowUp:
    def test_identity_with_k1(self):
        C4 = core.directed_cycle(4)
        assert core.blow_up(C4, [(1, core.bidirected_clique(1))]) == C4
        all_k1 = [(v, core.bidirected_clique(1)) for v in range(4)]
        assert core.blow_up(C4, all_k1) == C4

    def test_c8_two_cliques(self):
        # Blowing up two consecutive C_8 vertices by K_2 each stays
        # symmetric with 10 vertices and 15 edges (30 arcs).
        C8 = core.bidirected_cycle(8)
        G = core.blow_up(C8, [(0, core.bidirected_clique(2)),
                              (1, core.bidirected_clique(2))])
        assert G.n == 10
        assert core.is_symmetric(G)
        assert G.arc_count == 30

    def test_clique_blowup_size_depends_on_sum(self):
        # For two bidirectionally adjacent targets with equal external
        # degree, clique blow-ups by K_s, K_t give an arc count that
        # depends only on s + t.
        base = core.from_arc_list(4, [(0, 1), (1, 0), (0, 2), (1, 3)])
        counts = set()
        for s in (1, 2, 3):
            t = 4 - s
            G = core.blow_up(base, [(0, core.bidirected_clique(s)),
                                    (1, core.bidirected_clique(t))])
            assert G.n == 6
            counts.add(G.arc_count)
        assert len(counts) == 1

    def test_directions_inherited(self):
        # v0 -> v1 only; copies of v1 must all receive, never send.
        base = core.from_arc_list(2, [(0, 1)])
        G = core.blow_up(base, [(1, core.empty_digraph(3))])
        assert G.n == 4
        assert core.arcs(G) == [(0, 1), (0, 2), (0, 3)]

    def test_non_adjacent_targets_stay_non_adjacent(self):
        base = core.from_arc_list(3, [(0, 1), (1, 2)])
        G = core.blow_up(base, [(0, core.bidirected_clique(2)),
                                (2, core.bidirected_clique(2))])
        # copies of 0 are vertices 0,1; copies of 2 are vertices 3,4
        for a in (0, 1):
            for b in (3, 4):
                assert not G.has_arc(a, b) and not G.has_arc(b, a)

    def test_errors(self):
        C4 = core.directed_cycle(4)
        with pytest.raises(ValueError):
            core.blow_up(C4, [(0, core.bidirected_clique(2)),
                              (0, core.bidirected_clique(2))])
        with pytest.raises(ValueError):
            core.blow_up(C4, [(9, core.bidirected_clique(2))])
        with pytest.raises(ValueError):
            core.blow_up(core.directed_cycle(4), [(0, core.bidirected_clique(62))])


class TestIsBipartite:
    def test_directed_c4(self):
        P = core.is_bipartite(core.directed_cycle(4))
        assert P is not None
        assert P.members(1) == (0, 2) and P.members(2) == (1, 3)

    def test_odd_cycle(self):
        assert core.is_bipartite(core.bidirected_clique(3)) is None

    def test_matches_odd_cycle_search(self):
        # Cross-check against brute-force odd closed walks for n <= 7.
        rng = random.Random(13)
        for _ in range(120):
            n = rng.randint(1, 7)
            D = random_digraph(rng, n)
            und = [[False] * n for _ in range(n)]
            for i, j in core.arcs(D):
                und[i][j] = und[j][i] = True
            # odd cycle exists iff some odd-length closed walk exists
            reach_odd = [[False] * n for _ in range(n)]
            reach_even = [[i == j for j in range(n)] for i in range(n)]
            for _ in range(2 * n):
                new_odd = [row[:] for row in reach_odd]
                new_even = [row[:] for row in reach_even]
                for i in range(n):
                    for j in range(n):
                        for k in range(n):
                            if und[j][k]:
                                if reach_even[i][j]:
                                    new_odd[i][k] = True
                                if reach_odd[i][j]:
                                    new_even[i][k] = True
                reach_odd, reach_even = new_odd, new_even
            has_odd_cycle = any(reach_odd[i][i] for i in range(n))
            assert (core.is_bipartite(D) is None) == has_odd_cycle

    def test_partition_is_proper(self):
        rng = random.Random(14)
        for _ in range(60):
            D = random_digraph(rng, rng.randint(2, 8))
            P = core.is_bipartite(D)
            if P is None:
                continue
            for i, j in core.arcs(D):
                assert P.classes[i] != P.classes[j]


# =========================================================================
# Canonical form and isomorphism
# =========================================================================

class TestCanonicalForm:
    def test_matches_brute_force(self):
        rng = random.Random(21)
        for _ in range(60):
            D = random_digraph(rng, rng.randint(1, 5))
            assert core.canonical_form(D) == brute_canonical(D)

    def test_relabeled_triangle(self):
        C3 = core.directed_cycle(3)
        R = relabel(C3, [2, 0, 1])
        assert core.canonical_form(C3) == core.canonical_form(R)

    def test_distinguishes_cycle_from_path(self):
        C3 = core.directed_cycle(3)
        P3 = core.from_arc_list(3, [(1, 0), (2, 1)])
        assert core.canonical_form(C3) != core.canonical_form(P3)

    def test_invariant_under_relabeling(self):
        # 200 random digraphs (n <= 7), 20 random relabelings each.
        rng = random.Random(22)
        for _ in range(200):
            n = rng.randint(2, 7)
            D = random_digraph(rng, n)
            cf = core.canonical_form(D)
            for _ in range(20):
                p = list(range(n))
                rng.shuffle(p)
                assert core.canonical_form(relabel(D, p)) == cf

    def test_symmetric_inputs(self):
        assert core.canonical_form(core.bidirected_clique(8)) == core.bidirected_clique(8)
        assert core.canonical_form(core.empty_digraph(8)) == core.empty_digraph(8)
        cf = core.canonical_form(core.bidirected_cycle(8))
        assert cf == brute_canonical(core.bidirected_cycle(8))

    def test_order_limit(self):
        with pytest.raises(ValueError):
            core.canonical_form(core.empty_digraph(13))


class TestIsIsomorphic:
    def test_relabelings(self):
        rng = random.Random(23)
        for _ in range(40):
            n = rng.randint(2, 7)
            D = random_digraph(rng, n)
            p = list(range(n))
            rng.shuffle(p)
            assert core.is_isomorphic(D, relabel(D, p))

    def test_negative_cases(self):
        assert not core.is_isomorphic(core.directed_cycle(4), core.bidirected_cycle(4))
        assert not core.is_isomorphic(core.directed_cycle(4), core.directed_cycle(5))
        D1 = core.from_arc_list(4, [(0, 1), (1, 2), (2, 3)])
        D2 = core.from_arc_list(4, [(0, 1), (0, 2), (0, 3)])
        assert not core.is_isomorphic(D1, D2)


# =========================================================================
# Serialization
# =========================================================================

class TestAdmFormat:
    def test_exact_text(self):
        D = core.from_arc_list(3, [(0, 1), (1, 2), (2, 0)])
        assert core.to_adm(D) == "3\n010\n001\n100\n"

    def test_round_trip_random(self):
        rng = random.Random(31)
        for _ in range(500):
            D = random_digraph(rng, rng.randint(1, 10))
            assert core.from_adm(core.to_adm(D)) == D

    def test_parse_errors(self):
        with pytest.raises(core.ParseError, match="line 1"):
            core.from_adm("x\n010\n001\n100\n")
        with pytest.raises(core.ParseError, match="line 3"):
            core.from_adm("3\n010\n01\n100\n")
        with pytest.raises(core.ParseError, match="line 2, column 2"):
            core.from_adm("3\n0a0\n001\n100\n")
        with pytest.raises(core.ParseError, match="diagonal"):
            core.from_adm("2\n10\n00\n")
        with pytest.raises(core.ParseError):
            core.from_adm("3\n010\n001\n")
        with pytest.raises(core.ParseError):
            core.from_adm("2\n01\n10\n11\n")
        with pytest.raises(core.ParseError):
            core.from_adm("")


class TestJsonFormat:
    def test_object_shape(self):
        D = core.from_arc_list(3, [(2, 0), (0, 1)])
        obj = core.to_json_obj(D)
        assert obj == {"n": 3, "arcs": [[0, 1], [2, 0]]}

    def test_round_trip_random(self):
        rng = random.Random(32)
        for _ in range(500):
            D = random_digraph(rng, rng.randint(1, 10))
            assert core.from_json(core.to_json(D)) == D

    def test_adm_json_lossless(self):
        rng = random.Random(33)
        for _ in range(100):
            D = random_digraph(rng, rng.randint(1, 10))
            assert core.from_json(core.to_json(core.from_adm(core.to_adm(D)))) == D

    def test_duplicate_arcs_accepted(self):
        D = core.from_json('{"n": 2, "arcs": [[0, 1], [0, 1], [1, 0]]}')
        assert D.arc_count == 2

    def test_errors(self):
        with pytest.raises(core.ParseError):
            core.from_json('{"n": 2}')
        with pytest.raises(core.ParseError):
            core.from_json('{"n": 2, "arcs": [[0, 0]]}')
        with pytest.raises(core.ParseError):
            core.from_json('{"n": 2, "arcs": [[0]]}')
        with pytest.raises(core.ParseError, match="line 1"):
            core.from_json("{not json")


class TestDotExport:
    def test_shape(self):
        D = core.from_arc_list(3, [(0, 1), (2, 1)])
        text = core.to_dot(D)
        assert text.startswith("digraph D {")
        assert "  v0;" in text and "  v2;" in text
        assert "  v0 -> v1;" in text and "  v2 -> v1;" in text
        assert text.rstrip().endswith("}")
