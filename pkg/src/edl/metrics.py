"""Distance-based digraph invariants.

All-pairs BFS distances, in/out eccentricities, the three radii (rad_out,
rad_in, and the possibly half-integer radius encoded as the integer
rad2 = min over v of ecc_out(v) + ecc_in(v)), diameter, Wiener index,
average distance, strong connectivity, and the per-vertex degree-bound
reports used by the verification suite.

No floating point anywhere: distances and the Wiener index are ints,
average distance is an exact fractions.Fraction, half-integer radii are
kept doubled.  Unreachable pairs carry the UNREACHABLE sentinel (None).
"""

from dataclasses import dataclass
from fractions import Fraction

from edl.core import VertexPartition, reverse

UNREACHABLE = None

CLIQUE_MAX_N = 20


# =========================================================================
# Distances
# =========================================================================

class DistanceMatrix:
    """All-pairs hop distances; entry None means unreachable.

    Attributes:
        n: vertex count.
        d: tuple of n tuples; d[i][j] is an int or None, d[i][i] = 0.
    """

    __slots__ = ("n", "d")

    def __init__(self, n, d):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", tuple(tuple(row) for row in d))

    def __setattr__(self, name, value):
        raise AttributeError("DistanceMatrix is immutable")

    def dist(self, i, j):
        return self.d[i][j]


def _bfs_row(rows, n, source):
    """Distances from source as a list (None for unreachable)."""
    dist = [None] * n
    dist[source] = 0
    seen = 1 << source
    frontier = 1 << source
    depth = 0
    while frontier:
        depth += 1
        nxt = 0
        m = frontier
        while m:
            v = (m & -m).bit_length() - 1
            nxt |= rows[v]
            m &= m - 1
        nxt &= ~seen
        m = nxt
        while m:
            v = (m & -m).bit_length() - 1
            dist[v] = depth
            m &= m - 1
        seen |= nxt
        frontier = nxt
    return dist


def distance_matrix(D):
    """All-pairs BFS distance matrix of D."""
    return DistanceMatrix(D.n, [_bfs_row(D.rows, D.n, s) for s in range(D.n)])


def is_strong(D):
    """True iff every ordered pair of vertices is connected by a path."""
    n = D.n
    full = (1 << n) - 1
    # forward closure from 0, backward closure to 0
    for rows in (D.rows, reverse(D).rows):
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            m = frontier
            while m:
                v = (m & -m).bit_length() - 1
                nxt |= rows[v]
                m &= m - 1
            frontier = nxt & ~seen
            seen |= nxt
        if seen != full:
            return False
    return True


# =========================================================================
# Metric summary
# =========================================================================

@dataclass(frozen=True)
class MetricSummary:
    """Bundle of the distance invariants of one digraph.

    Integer fields are None when the underlying quantity is infinite.
    avg_distance is an exact Fraction (None when wiener is infinite or
    n = 1), rad2 is the doubled radius min_v (ecc_out(v) + ecc_in(v)).
    """

    n: int
    arc_count: int
    ecc_out: tuple
    ecc_in: tuple
    rad_out: object
    rad_in: object
    rad2: object
    diameter: object
    wiener: object
    avg_distance: object
    outdeg: tuple
    indeg: tuple
    totaldeg: tuple
    strong: bool
    bipartite: bool


def _ecc_from_row(row):
    """Max of a distance row, None if any entry is unreachable."""
    worst = 0
    for v in row:
        if v is None:
            return None
        if v > worst:
            worst = v
    return worst


def _min_skipping_none(values):
    finite = [v for v in values if v is not None]
    return min(finite) if finite else None


def metric_summary(D):
    """Compute the full MetricSummary of D."""
    from edl.core import is_bipartite  # local import to keep module load light

    n = D.n
    dm = distance_matrix(D)
    rd = reverse(D)
    ecc_out = tuple(_ecc_from_row(dm.d[i]) for i in range(n))
    ecc_in = tuple(_ecc_from_row([dm.d[j][i] for j in range(n)]) for i in range(n))
    rad_out = _min_skipping_none(ecc_out)
    rad_in = _min_skipping_none(ecc_in)
    rad2 = _min_skipping_none(
        [a + b if a is not None and b is not None else None
         for a, b in zip(ecc_out, ecc_in)]
    )
    strong = all(e is not None for e in ecc_out)
    diameter = max(e for e in ecc_out) if strong else None
    if strong:
        wiener = sum(v for row in dm.d for v in row)
        avg = Fraction(wiener, n * n - n) if n > 1 else None
    else:
        wiener = None
        avg = None
    outdeg = tuple(r.bit_count() for r in D.rows)
    indeg = tuple(r.bit_count() for r in rd.rows)
    return MetricSummary(
        n=n,
        arc_count=D.arc_count,
        ecc_out=ecc_out,
        ecc_in=ecc_in,
        rad_out=rad_out,
        rad_in=rad_in,
        rad2=rad2,
        diameter=diameter,
        wiener=wiener,
        avg_distance=avg,
        outdeg=outdeg,
        indeg=indeg,
        totaldeg=tuple(a + b for a, b in zip(outdeg, indeg)),
        strong=strong,
        bipartite=is_bipartite(D) is not None,
    )


def summary_to_json_obj(ms):
    """Flat JSON-ready dict for a MetricSummary.

    rad2 appears both raw and as the decimal radius string ("2.5"; "inf"
    when undefined); avg_distance is a "p/q" string.
    """
    if ms.rad2 is None:
        rad_str = "inf"
    elif ms.rad2 % 2 == 0:
        rad_str = str(ms.rad2 // 2)
    else:
        rad_str = f"{ms.rad2 // 2}.5"
    return {
        "n": ms.n,
        "arc_count": ms.arc_count,
        "ecc_out": list(ms.ecc_out),
        "ecc_in": list(ms.ecc_in),
        "rad_out": ms.rad_out,
        "rad_in": ms.rad_in,
        "rad2": ms.rad2,
        "rad": rad_str,
        "diameter": ms.diameter,
        "wiener": ms.wiener,
        "avg_distance": (f"{ms.avg_distance.numerator}/{ms.avg_distance.denominator}"
                         if ms.avg_distance is not None else None),
        "outdeg": list(ms.outdeg),
        "indeg": list(ms.indeg),
        "totaldeg": list(ms.totaldeg),
        "strong": ms.strong,
        "bipartite": ms.bipartite,
    }


# =========================================================================
# Proof-level per-vertex quantities
# =========================================================================

def co_out_neighborhood(D, v):
    """F(v): vertices other than v with no arc v->x, ascending tuple."""
    return tuple(x for x in range(D.n) if x != v and not D.rows[v] >> x & 1)


def _simple_paths_from(D, v, length, target_dist, dm, avoid):
    """Yield simple paths (vertex tuples after v) of the given arc length.

    The endpoint must be at distance exactly target_dist from v; vertices
    in avoid (a bitmask) and v itself are excluded.
    """
    blocked = avoid | (1 << v)

    def rec(last, used, path):
        if len(path) == length:
            if dm.d[v][last] == target_dist:
                yield tuple(path)
            return
        m = D.rows[last] & ~used & ~blocked
        while m:
            w = (m & -m).bit_length() - 1
            m &= m - 1
            path.append(w)
            yield from rec(w, used | (1 << w), path)
            path.pop()

    first = D.rows[v] & ~blocked
    m = first
    while m:
        w = (m & -m).bit_length() - 1
        m &= m - 1
        yield from rec(w, 1 << w, [w])


def _two_disjoint_paths(D, v, r, dm):
    """Search the two vertex-disjoint paths of the equality condition.

    Wanted: a path v u_1 .. u_r (r arcs, d(v, u_r) = r) and a path
    v w_2 .. w_r (r-1 arcs, d(v, w_r) = r-1) sharing only v.

    Returns:
        (found, path1, path2) with the paths as vertex tuples after v,
        or (False, None, None).
    """
    for p1 in _simple_paths_from(D, v, r, r, dm, 0):
        used = 0
        for x in p1:
            used |= 1 << x
        for p2 in _simple_paths_from(D, v, r - 1, r - 1, dm, used):
            return True, p1, p2
    return False, None, None


@dataclass(frozen=True)
class DegreeBoundReport:
    """Per-vertex degree-bound check results.

    Attributes:
        n, r: order and verified outradius.
        bound: the degree cap; per-vertex for the bipartite variant.
        totaldeg: per-vertex total degrees.
        within_bound: per-vertex flags totaldeg[v] <= bound for v.
        equality_vertices: vertices meeting the bound exactly.
        equality_details: tuple of per-equality-vertex dicts describing
            the structural equality conditions that were checked.
    """

    n: int
    r: int
    bound: tuple
    totaldeg: tuple
    within_bound: tuple
    equality_vertices: tuple
    equality_details: tuple


def check_outradius_degree_bound(D, r):
    """Check totaldeg(v) <= 2(n-1) - (2r-3) for a digraph of outradius r.

    Re-verifies that rad_out(D) = r, flags every vertex against the bound,
    and for vertices meeting it exactly searches the structural equality
    conditions: full indegree, outdegree n-1-(2r-3), and two directed
    paths from v of lengths r and r-1 (endpoint distances r and r-1),
    vertex-disjoint apart from v.  The path search is exhaustive
    enumeration; the report records found/not found and never asserts.

    Args:
        D: digraph.
        r: claimed outradius.

    Returns:
        DegreeBoundReport.

    Raises:
        ValueError: outradius mismatch.
    """
    n = D.n
    dm = distance_matrix(D)
    ecc_out = [_ecc_from_row(dm.d[i]) for i in range(n)]
    actual = _min_skipping_none(ecc_out)
    if actual != r:
        raise ValueError(f"outradius mismatch: expected {r}, actual {actual}")
    bound = 2 * (n - 1) - (2 * r - 3)
    outdeg = [row.bit_count() for row in D.rows]
    indeg = [0] * n
    for row in D.rows:
        m = row
        while m:
            j = (m & -m).bit_length() - 1
            indeg[j] += 1
            m &= m - 1
    totaldeg = [a + b for a, b in zip(outdeg, indeg)]
    within = [t <= bound for t in totaldeg]
    eq_vertices = [v for v in range(n) if totaldeg[v] == bound]
    details = []
    for v in eq_vertices:
        found, p1, p2 = _two_disjoint_paths(D, v, r, dm)
        details.append({
            "vertex": v,
            "indeg_full": indeg[v] == n - 1,
            "outdeg_matches": outdeg[v] == n - 1 - (2 * r - 3),
            "disjoint_paths_found": found,
            "path_r": (v,) + p1 if found else None,
            "path_r_minus_1": (v,) + p2 if found else None,
        })
    return DegreeBoundReport(
        n=n,
        r=r,
        bound=tuple([bound] * n),
        totaldeg=tuple(totaldeg),
        within_bound=tuple(within),
        equality_vertices=tuple(eq_vertices),
        equality_details=tuple(details),
    )


def _all_shortest_paths(D, v, target, dm):
    """All shortest v->target paths as vertex tuples including endpoints."""
    dist = dm.d[v]
    out = []

    def rec(last, path):
        if last == target:
            out.append(tuple(path))
            return
        m = D.rows[last]
        while m:
            w = (m & -m).bit_length() - 1
            m &= m - 1
            if dist[w] == dist[last] + 1 and dm.d[w][target] is not None \
                    and dist[w] + dm.d[w][target] == dist[target]:
                path.append(w)
                rec(w, path)
                path.pop()

    rec(v, [v])
    return out


UNIVERSAL_DISJOINT_MAX_N = 8


def check_bipartite_degree_bound(D, partition, r):
    """Check totaldeg(v) <= 2|opposite class| - (r-2) for bipartite D.

    Preconditions (distinct errors): the partition must be proper for D,
    D must be biconnected (strong), rad_out(D) must equal r, and r must
    be even and at least 4.  For vertices meeting their bound exactly the
    report records the structural conditions; the universal requirement
    that any two shortest paths to the two endpoints are disjoint is
    enumerated exhaustively for n <= 8 and replaced by an existence check
    for one disjoint pair above that.

    Args:
        D: digraph.
        partition: VertexPartition of D's vertices.
        r: claimed outradius (even, >= 4).

    Returns:
        DegreeBoundReport (bound is per-vertex).
    """
    n = D.n
    if not isinstance(partition, VertexPartition) or len(partition.classes) != n:
        raise ValueError("partition does not cover the digraph's vertex set")
    for i in range(n):
        m = D.rows[i]
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            if partition.classes[i] == partition.classes[j]:
                raise ValueError(
                    f"not bipartite: arc {i}->{j} joins class "
                    f"{partition.classes[i]} to itself"
                )
    if not is_strong(D):
        raise ValueError("not strong: the bound needs a biconnected digraph")
    if r % 2 != 0:
        raise ValueError(f"outradius parity error: r must be even, got {r}")
    if r < 4:
        raise ValueError(f"r must be at least 4, got {r}")
    dm = distance_matrix(D)
    ecc_out = [_ecc_from_row(dm.d[i]) for i in range(n)]
    actual = _min_skipping_none(ecc_out)
    if actual != r:
        raise ValueError(f"outradius mismatch: expected {r}, actual {actual}")
    outdeg = [row.bit_count() for row in D.rows]
    indeg = [0] * n
    for row in D.rows:
        m = row
        while m:
            j = (m & -m).bit_length() - 1
            indeg[j] += 1
            m &= m - 1
    totaldeg = [a + b for a, b in zip(outdeg, indeg)]
    bound = [2 * partition.opposite_size(v) - (r - 2) for v in range(n)]
    within = [t <= b for t, b in zip(totaldeg, bound)]
    eq_vertices = [v for v in range(n) if totaldeg[v] == bound[v]]
    details = []
    for v in eq_vertices:
        opp = partition.opposite_size(v)
        found, p1, p2 = _two_disjoint_paths(D, v, r, dm)
        entry = {
            "vertex": v,
            "indeg_full": indeg[v] == opp,
            "outdeg_matches": outdeg[v] == opp - (r - 2),
            "disjoint_paths_found": found,
        }
        if found and n <= UNIVERSAL_DISJOINT_MAX_N:
            # Universal condition: some endpoint pair (x at distance r,
            # y at distance r-1) has EVERY shortest-path pair disjoint.
            universal = False
            at_r = [x for x in range(n) if dm.d[v][x] == r]
            at_r1 = [y for y in range(n) if dm.d[v][y] == r - 1]
            for x in at_r:
                px = _all_shortest_paths(D, v, x, dm)
                for y in at_r1:
                    py = _all_shortest_paths(D, v, y, dm)
                    ok = True
                    for a in px:
                        sa = set(a) - {v}
                        for b in py:
                            if sa & (set(b) - {v}):
                                ok = False
                                break
                        if not ok:
                            break
                    if ok:
                        universal = True
                        break
                if universal:
                    break
            entry["check_mode"] = "universal"
            entry["universal_disjoint"] = universal
        else:
            entry["check_mode"] = "existence"
            entry["universal_disjoint"] = None
        details.append(entry)
    return DegreeBoundReport(
        n=n,
        r=r,
        bound=tuple(bound),
        totaldeg=tuple(totaldeg),
        within_bound=tuple(within),
        equality_vertices=tuple(eq_vertices),
        equality_details=tuple(details),
    )


# =========================================================================
# Clique number
# =========================================================================

def clique_number(D):
    """Order of the largest bidirected clique (brute force, n <= 20)."""
    n = D.n
    if n > CLIQUE_MAX_N:
        raise ValueError(f"clique_number supports n <= {CLIQUE_MAX_N}, got {n}")
    mutual = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and D.rows[i] >> j & 1 and D.rows[j] >> i & 1:
                mutual[i] |= 1 << j
    best = [1] if n else [0]

    def expand(clique_size, cand):
        if clique_size + cand.bit_count() <= best[0]:
            return
        if not cand:
            if clique_size > best[0]:
                best[0] = clique_size
            return
        m = cand
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            if clique_size + cand.bit_count() <= best[0]:
                return
            expand(clique_size + 1, cand & mutual[v])
            cand &= ~(1 << v)

    expand(0, (1 << n) - 1)
    return best[0]
