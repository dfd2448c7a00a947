"""Proof-level structural procedures.

Layer-profile accounting for the layered bipartite extremal shape, the
integer chain maximization with its characterization of optima,
bidirected-biclique extraction from dense bipartite digraphs, and the
distance-preserving vertex-removal predicate.
"""

from dataclasses import dataclass

from edl.core import VertexPartition, remove_vertex
from edl.metrics import distance_matrix, is_strong


# =========================================================================
# Layer profiles
# =========================================================================

@dataclass(frozen=True)
class LayerProfile:
    """Sizes (n_0, .., n_r) of the distance layers from a center vertex.

    Invariants: n_0 = 1 and every later layer is nonempty (an empty
    middle layer would cut the reachable set short of depth r).
    """

    layers: tuple

    def __post_init__(self):
        layers = tuple(self.layers)
        object.__setattr__(self, "layers", layers)
        if len(layers) < 2:
            raise ValueError("profile needs at least layers n_0, n_1")
        if layers[0] != 1:
            raise ValueError(f"n_0 must be 1, got {layers[0]}")
        for i, v in enumerate(layers):
            if i >= 1 and v < 1:
                raise ValueError(f"layer n_{i} must be >= 1, got {v}")

    @property
    def r(self):
        return len(self.layers) - 1

    @property
    def n(self):
        return sum(self.layers)

    @property
    def n_e(self):
        return sum(self.layers[0::2])

    @property
    def n_o(self):
        return sum(self.layers[1::2])

    def x(self, i):
        """Excess x_i = n_i - 1."""
        return self.layers[i] - 1


def layer_profile_size(p):
    """Arc count of the layered bipartite extremal shape with profile p.

    Evaluates (n_e - 1) n_o + sum_i n_i n_{i+1}.
    """
    layers = p.layers
    chain = sum(layers[i] * layers[i + 1] for i in range(len(layers) - 1))
    return (p.n_e - 1) * p.n_o + chain


# =========================================================================
# Chain maximization
# =========================================================================

def _compositions(total, parts):
    """Positive integer compositions of total into parts (lex order)."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def chain_value(profile):
    """The maximized quantity n_1 + sum_{i=1..r-1} n_i n_{i+1} of a
    LayerProfile."""
    tail = profile.layers[1:]
    return tail[0] + sum(tail[i] * tail[i + 1] for i in range(len(tail) - 1))


def claim_optimal_profiles(n, r):
    """The characterized optimum set of the chain maximization.

    All layers are 1 except at most three consecutive layers
    n_j, n_{j+1}, n_{j+2} with 1 <= j <= r - 2 satisfying
    |n_{j+1} + 1 - (n_j + n_{j+2})| <= 1, and n_r = 1.

    Returns:
        Set of LayerProfile.
    """
    if not n > r >= 3:
        raise ValueError(f"need n > r >= 3, got n={n}, r={r}")
    out = set()
    trio_sum = n - 1 - (r - 3)
    for j in range(1, r - 1):
        for (a, b, c) in _compositions(trio_sum, 3):
            if abs(a + c - (b + 1)) > 1:
                continue
            if j + 2 == r and c != 1:
                continue
            tail = [1] * r
            tail[j - 1], tail[j], tail[j + 1] = a, b, c
            out.add(LayerProfile((1,) + tuple(tail)))
    return out


def maximize_chain(n, r):
    """Maximize n_1 + sum_{i=1..r-1} n_i n_{i+1} over layer profiles.

    Brute force over all compositions of n - 1 into r positive parts; the
    optimum set is cross-checked against the characterized shape (see
    claim_optimal_profiles) and the closed-form value
    r + 2(n-r-1) + floor((n-r-1)^2 / 4), raising if either disagrees.

    Args:
        n: order (n > r).
        r: chain length (r >= 3).

    Returns:
        (max value, sorted list of optimal LayerProfile).
    """
    if not n > r >= 3:
        raise ValueError(f"need n > r >= 3, got n={n}, r={r}")
    best = -1
    optima = []
    for tail in _compositions(n - 1, r):
        p = LayerProfile((1,) + tail)
        v = chain_value(p)
        if v > best:
            best = v
            optima = [p]
        elif v == best:
            optima.append(p)
    x = n - r - 1
    want = r + 2 * x + x * x // 4
    if best != want:
        raise RuntimeError(
            f"chain maximum {best} differs from closed form {want} "
            f"at n={n}, r={r}"
        )
    if set(optima) != claim_optimal_profiles(n, r):
        raise RuntimeError(
            f"chain optimum set differs from its characterization "
            f"at n={n}, r={r}"
        )
    optima.sort(key=lambda p: p.layers)
    return best, optima


# =========================================================================
# Bidirected biclique extraction
# =========================================================================

def extract_bidirected_biclique(D, partition, t):
    """Extract a bidirected complete bipartite subdigraph greedily.

    Seeds S_1, S_2 with every vertex whose total degree is at least
    2|opposite class| - 3t + 1, then alternately fixes the smallest
    unprocessed vertex of one side and deletes all vertices of the other
    side not joined to it in both directions.  The surviving sets induce
    a bidirected complete bipartite subdigraph; they are truncated to
    equal size k.  When D has average total degree >= n - t and n > 9t,
    the procedure guarantees k >= n / (18t).

    Args:
        D: bipartite digraph.
        partition: proper VertexPartition of D.
        t: density slack parameter, t >= 1.

    Returns:
        (S1, S2): ascending vertex tuples of equal size (possibly empty).

    Raises:
        ValueError: improper partition or t < 1.
    """
    n = D.n
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
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
    indeg = [0] * n
    for row in D.rows:
        m = row
        while m:
            j = (m & -m).bit_length() - 1
            indeg[j] += 1
            m &= m - 1
    sets = {1: [], 2: []}
    for v in range(n):
        k = partition.classes[v]
        threshold = 2 * partition.opposite_size(v) - 3 * t + 1
        if D.rows[v].bit_count() + indeg[v] >= threshold:
            sets[k].append(v)
    if not sets[1] or not sets[2]:
        return (), ()
    alive = {1: set(sets[1]), 2: set(sets[2])}
    processed = {1: set(), 2: set()}
    side = 1
    while True:
        pending_1 = alive[1] - processed[1]
        pending_2 = alive[2] - processed[2]
        if not pending_1 and not pending_2:
            break
        pending = pending_1 if side == 1 else pending_2
        if pending:
            v = min(pending)
            processed[side].add(v)
            other = 2 if side == 1 else 1
            for u in list(alive[other]):
                if not (D.rows[v] >> u & 1 and D.rows[u] >> v & 1):
                    alive[other].discard(u)
        side = 2 if side == 1 else 1
    s1 = sorted(alive[1])
    s2 = sorted(alive[2])
    k = min(len(s1), len(s2))
    return tuple(s1[:k]), tuple(s2[:k])


# =========================================================================
# Distance-preserving removal
# =========================================================================

def is_distance_preserving_removal(D, v):
    """Whether deleting v keeps D strong with all distances unchanged.

    Args:
        D: strong digraph with at least 2 vertices.
        v: vertex to delete.

    Returns:
        (True, None) when D minus v is strong, has the same outradius,
        and every pairwise distance among the remaining vertices is
        unchanged; otherwise (False, witness) where witness is a dict
        naming the first violation (vertices in D's original labels).

    Raises:
        ValueError: D not strong or too small.
    """
    n = D.n
    if n < 2:
        raise ValueError("need at least 2 vertices")
    if not is_strong(D):
        raise ValueError("digraph is not strong")
    sub = remove_vertex(D, v)
    if not is_strong(sub):
        return False, {"reason": "not_strong"}
    before = distance_matrix(D)
    after = distance_matrix(sub)
    keep = [x for x in range(n) if x != v]
    for i, x in enumerate(keep):
        for j, y in enumerate(keep):
            if before.d[x][y] != after.d[i][j]:
                return False, {
                    "reason": "distance_changed",
                    "pair": (x, y),
                    "before": before.d[x][y],
                    "after": after.d[i][j],
                }
    rad_before = min(max(row) for row in before.d)
    rad_after = min(max(row) for row in after.d)
    if rad_before != rad_after:
        return False, {
            "reason": "outradius_changed",
            "before": rad_before,
            "after": rad_after,
        }
    return True, None


# =========================================================================
# Recorded large-n threshold constants
# =========================================================================

def biconn_large_n_constants(r):
    """Threshold constants quoted by the large-n biconnected argument.

    Recorded for reference only; nothing here evaluates them against
    digraphs (they are far beyond enumerable orders).
    """
    t = 2 * r - 3
    n0 = 8 * t * (40 * t * t + 4 * t + 1) + 1
    return {"t": t, "n0": n0, "n1": (2 * r - 2) * n0}


def bipartite_large_n_constants(r):
    """Threshold constants quoted by the large-n bipartite argument.

    Recorded for reference only, as with biconn_large_n_constants.
    """
    t = 2 * (r - 2)
    n0 = 18 * t * (45 * t * t + 6 * t + 1) + 2
    return {"t": t, "n0": n0, "n1": 5 * r * n0}
