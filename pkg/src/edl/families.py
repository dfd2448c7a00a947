"""Constructors for the named extremal digraph families and the
closed-form size bounds they attain.

Vertex labelings are fixed and documented on each constructor (path or
cycle vertices first in index order, blow-up copies grouped in place of
their original), so serialized outputs are reproducible byte for byte.
Constructors validate parameter domains strictly; t-parameters are always
derived, never user-supplied.
"""

import enum
from dataclasses import dataclass

from edl.core import (
    DenseDigraph,
    VertexPartition,
    bidirected_clique,
    bidirected_cycle,
    blow_up,
    empty_digraph,
    from_arc_list,
    intersect,
)


class FamilyKind(enum.Enum):
    GAMMA_BAR = "gamma-bar"
    GAMMA_BAR_BLOWUP = "gamma-bar-blowup"
    GAMMA_STAR = "gamma-star"
    GAMMA_STAR_BLOWUP = "gamma-star-blowup"
    G_NRS = "g-nrs"
    D_2R_R_1 = "d-2r-r-1"
    D_NRS = "d-nrs"
    BIP_CYCLE_BLOWUP = "bip-cycle-blowup"
    BIP_DIGRAPH_EXTREMAL = "bip-digraph-extremal"
    D_NRS_BIPARTITE = "d-nrs-bipartite"


class BoundName(enum.Enum):
    VIZING_F = "vizing-f"
    DSV11 = "dsv11"
    FRIDMAN = "fridman"
    RAD3_BICONN = "rad3-biconn"
    BICONN_GENERAL = "biconn-general"
    GAMMA_2R1 = "gamma-2r1"
    BIP_DIGRAPH = "bip-digraph"
    BIP_BICONN_CONJ = "bip-biconn-conj"


@dataclass(frozen=True)
class FamilySpec:
    """A family kind plus its parameters, hashable for report keys."""

    kind: FamilyKind
    params: tuple

    @staticmethod
    def make(kind, **params):
        return FamilySpec(kind, tuple(sorted(params.items())))

    def as_dict(self):
        return dict(self.params)


def _require(cond, message):
    if not cond:
        raise ValueError(message)


# =========================================================================
# Radius families (general digraphs)
# =========================================================================

def gamma_bar(d):
    """The order-(d+1) digraph with vertices v_0..v_d and arcs
    v_i -> v_j whenever i >= j-1 and i != j.

    Arc count d(d+3)/2; the unique extremal digraph for doubled radius
    2r = d at order d+1.
    """
    _require(d >= 1, f"gamma_bar needs d >= 1, got {d}")
    arcs = [(i, j) for i in range(d + 1) for j in range(d + 1)
            if i != j and i >= j - 1]
    return from_arc_list(d + 1, arcs)


def gamma_bar_blowup(n, d, i, s):
    """Blow-up of gamma_bar(d): v_i by K_s and v_{i+1} by K_{n-d+1-s}.

    Labeling: v_0..v_{i-1}, then the s copies of v_i, the t copies of
    v_{i+1}, then v_{i+2}..v_d.
    """
    _require(d >= 1, f"gamma_bar_blowup needs d >= 1, got {d}")
    _require(n >= d + 1, f"need n >= d+1, got n={n}, d={d}")
    _require(1 <= i <= d - 2, f"need 1 <= i <= d-2, got i={i}, d={d}")
    _require(1 <= s <= n - d, f"need 1 <= s <= n-d, got s={s}, n-d={n - d}")
    t = n - d + 1 - s
    return blow_up(gamma_bar(d), [(i, bidirected_clique(s)),
                                  (i + 1, bidirected_clique(t))])


def gamma_star(r):
    """gamma_bar(r-1) on v_1..v_r plus a source v_0 with the single arc
    v_0 -> v_1.

    v_1 is the unique vertex of the inner part with out-eccentricity r-1,
    so ecc_out(v_0) = r; no vertex reaches v_0, hence the digraph is not
    strong and its outradius is r.  Labeling: v_0..v_r in index order.
    """
    _require(r >= 2, f"gamma_star needs r >= 2, got {r}")
    arcs = [(a, b) for a in range(1, r + 1) for b in range(1, r + 1)
            if a != b and a >= b - 1]
    arcs.append((0, 1))
    return from_arc_list(r + 1, arcs)


def gamma_star_blowup(n, r, i, s):
    """Blow-up of gamma_star(r): v_i by K_s and v_{i+1} by K_{n-r+1-s}.

    The extremal digraphs of order n and outradius r; arc count
    n(n-r) + (r^2-r-2)/2 independent of i and s.
    """
    _require(r >= 3, f"gamma_star_blowup needs r >= 3, got {r}")
    _require(n >= r + 1, f"need n >= r+1, got n={n}, r={r}")
    _require(1 <= i <= r - 2, f"need 1 <= i <= r-2, got i={i}, r={r}")
    _require(1 <= s <= n - r, f"need 1 <= s <= n-r, got s={s}, n-r={n - r}")
    t = n - r + 1 - s
    return blow_up(gamma_star(r), [(i, bidirected_clique(s)),
                                   (i + 1, bidirected_clique(t))])


# =========================================================================
# Radius families (undirected, as symmetric digraphs)
# =========================================================================

def g_nrs(n, r, s):
    """The extremal radius-r graph: C_{2r} with two consecutive vertices
    blown up by cliques K_s and K_{n-2r+2-s}.

    Symmetric digraph; edge count (arc_count / 2) equals the radius-r
    maximum ((n-2r)^2 + 5n - 6r) / 2.  Labeling: cycle vertices
    0..2r-1, vertex 0 blown by K_s and vertex 1 by K_t in place.
    """
    _require(r >= 3, f"g_nrs needs r >= 3, got {r}")
    _require(n >= 2 * r, f"need n >= 2r, got n={n}, r={r}")
    _require(1 <= s and 2 * s <= n - 2 * r + 2,
             f"need 1 <= s <= (n-2r+2)/2, got s={s}")
    t = n - 2 * r + 2 - s
    return blow_up(bidirected_cycle(2 * r), [(0, bidirected_clique(s)),
                                             (1, bidirected_clique(t))])


# =========================================================================
# Outradius families (biconnected digraphs)
# =========================================================================

def d_2r_r_1(r):
    """The biconnected extremal digraph of order 2r and outradius r.

    Two copies of the gamma_bar pattern on v_1..v_r and w_1..w_r, plus
    all arcs v_i -> w_1 and w_i -> v_1.  Arc count r^2 + 3r - 2.
    Labeling: v_1..v_r at 0..r-1, w_1..w_r at r..2r-1.
    """
    _require(r >= 2, f"d_2r_r_1 needs r >= 2, got {r}")
    arcs = []
    for a in range(1, r + 1):
        for b in range(1, r + 1):
            if a != b and a >= b - 1:
                arcs.append((a - 1, b - 1))
                arcs.append((r + a - 1, r + b - 1))
    for a in range(1, r + 1):
        if a != 1:
            arcs.append((a - 1, r))      # v_a -> w_1
            arcs.append((r + a - 1, 0))  # w_a -> v_1
    arcs.append((0, r))                  # v_1 -> w_1
    arcs.append((r, 0))                  # w_1 -> v_1
    return from_arc_list(2 * r, arcs)


def d_nrs(n, r, s):
    """Blow-up of d_2r_r_1(r): v_1 by K_s and w_1 by K_{n-2r+2-s}.

    The biconnected extremal digraphs of order n and outradius r; arc
    count (n-(r-1))^2 + (r-3), independent of s.  Labeling: the s copies
    of v_1 first, then v_2..v_r, the t copies of w_1, then w_2..w_r.
    """
    _require(r >= 3, f"d_nrs needs r >= 3, got {r}")
    _require(n >= 2 * r, f"need n >= 2r, got n={n}, r={r}")
    _require(1 <= s and 2 * s <= n - 2 * r + 2,
             f"need 1 <= s <= (n-2r+2)/2, got s={s}")
    t = n - 2 * r + 2 - s
    return blow_up(d_2r_r_1(r), [(0, bidirected_clique(s)),
                                 (r, bidirected_clique(t))])


# =========================================================================
# Bipartite families
# =========================================================================

def bip_cycle_blowup(n, r, a, b, c):
    """C_{2r} with three consecutive vertices blown up by stable sets
    of sizes a, b, c.

    Symmetric and bipartite; edge count 2r - 4 + (b+1)(a+c).  The
    radius-r bipartite extremal members are the ones flagged by
    bip_cycle_blowup_is_extremal.  Labeling: cycle vertices 0..2r-1,
    vertices 0, 1, 2 blown in place.
    """
    _require(r >= 4, f"bip_cycle_blowup needs r >= 4, got {r}")
    _require(min(a, b, c) >= 1, f"need a, b, c >= 1, got ({a}, {b}, {c})")
    _require(a + b + c == n - 2 * r + 3,
             f"composition mismatch: a+b+c = {a + b + c}, "
             f"need n-2r+3 = {n - 2 * r + 3}")
    return blow_up(bidirected_cycle(2 * r), [(0, empty_digraph(a)),
                                             (1, empty_digraph(b)),
                                             (2, empty_digraph(c))])


def bip_cycle_blowup_is_extremal(n, r, a, b, c):
    """True iff the profile attains the bipartite radius-r maximum."""
    _require(a + b + c == n - 2 * r + 3,
             f"composition mismatch: a+b+c = {a + b + c}, "
             f"need n-2r+3 = {n - 2 * r + 3}")
    return abs(a + c - (b + 1)) <= 1


def _bip_backbone(r):
    """gamma_star(r) restricted to arcs between opposite parity classes.

    Arcs: v_0 -> v_1, the chain v_i -> v_{i+1}, and every back arc
    v_a -> v_b with 1 <= b < a and a - b odd.
    """
    arcs = [(0, 1)]
    for i in range(1, r):
        arcs.append((i, i + 1))
    for a2 in range(2, r + 1):
        for b2 in range(1, a2):
            if (a2 - b2) % 2 == 1:
                arcs.append((a2, b2))
    return from_arc_list(r + 1, arcs)


def bip_digraph_extremal(n, r, a, b, c, j):
    """Blow-up of the bipartite backbone of gamma_star(r) at positions
    j, j+1, j+2 by stable sets of sizes a, b, c.

    The backbone keeps exactly the gamma_star(r) arcs joining vertices of
    opposite index parity; blow-up positions avoid the source v_0.  The
    result is bipartite with outradius r (only v_0 has finite
    out-eccentricity).  Extremal profiles (see
    bip_digraph_extremal_is_extremal) have arc count
    ceil(n(n-2)/4) + r - 4 + floor((n-r+3)^2/4).  Labeling: backbone
    vertices v_0..v_r in order with blow-up copies grouped in place.
    """
    _require(r >= 3, f"bip_digraph_extremal needs r >= 3, got {r}")
    _require(min(a, b, c) >= 1, f"need a, b, c >= 1, got ({a}, {b}, {c})")
    _require(a + b + c == n - r + 2,
             f"composition mismatch: a+b+c = {a + b + c}, "
             f"need n-r+2 = {n - r + 2}")
    _require(1 <= j and j + 2 <= r,
             f"placement violation: need 1 <= j <= r-2, got j={j}, r={r}")
    return blow_up(_bip_backbone(r), [(j, empty_digraph(a)),
                                      (j + 1, empty_digraph(b)),
                                      (j + 2, empty_digraph(c))])


def bip_digraph_extremal_partition(n, r, a, b, c, j):
    """Parity bipartition of bip_digraph_extremal with copies inheriting
    their backbone vertex's class (class 1 = even backbone index)."""
    sizes = [1] * (r + 1)
    sizes[j], sizes[j + 1], sizes[j + 2] = a, b, c
    classes = []
    for pos in range(r + 1):
        classes.extend([1 if pos % 2 == 0 else 2] * sizes[pos])
    _require(len(classes) == n, f"order mismatch: built {len(classes)}, need {n}")
    return VertexPartition(classes)


def bip_digraph_extremal_is_extremal(n, r, a, b, c, j):
    """True iff the profile attains the bipartite outradius-r maximum.

    Needs |a+c-(b+1)| <= 1, the last layer trivial (j+2 < r or c = 1),
    and near-balance of (class(v_0) - 1) against the other class, which
    for odd r encodes that v_0's class is at least as large.
    """
    part = bip_digraph_extremal_partition(n, r, a, b, c, j)
    n_e, n_o = part.sizes()
    return (abs(a + c - (b + 1)) <= 1
            and (j + 2 < r or c == 1)
            and abs((n_e - 1) - n_o) <= 1)


def d_nrs_bipartite(n, r):
    """The bipartite subdigraph of the balanced d_nrs member.

    Intersects d_nrs(n, r, s) with s = floor(n/2) - (r-1) with the
    bidirected complete bipartite digraph on the parity classes
    V_1 = {copies of v_i, i odd} + {copies of w_i, i even} and V_2 the
    rest; the classes have sizes floor(n/2) and ceil(n/2).  Strong,
    bipartite, outradius r; for r = 4 the arc count is
    floor((n-2)^2 / 2).
    """
    _require(r >= 4, f"d_nrs_bipartite needs r >= 4, got {r}")
    _require(n >= 2 * r, f"need n >= 2r, got n={n}, r={r}")
    s = n // 2 - (r - 1)
    D = d_nrs(n, r, s)
    part = d_nrs_bipartite_partition(n, r)
    m1 = part.mask(1)
    m2 = part.mask(2)
    rows = [m2 if m1 >> i & 1 else m1 for i in range(n)]
    K = DenseDigraph(n, rows)
    return intersect(D, K)


def d_nrs_bipartite_partition(n, r):
    """Parity bipartition of d_nrs_bipartite: class 1 holds the copies
    of v_i with i odd and of w_i with i even."""
    _require(r >= 4, f"d_nrs_bipartite needs r >= 4, got {r}")
    _require(n >= 2 * r, f"need n >= 2r, got n={n}, r={r}")
    s = n // 2 - (r - 1)
    t = n - 2 * r + 2 - s
    classes = []
    classes.extend([1] * s)                       # copies of v_1 (1 odd)
    for k in range(2, r + 1):                     # v_2..v_r
        classes.append(1 if k % 2 == 1 else 2)
    classes.extend([2] * t)                       # copies of w_1 (1 odd)
    for k in range(2, r + 1):                     # w_2..w_r
        classes.append(1 if k % 2 == 0 else 2)
    return VertexPartition(classes)


# =========================================================================
# Closed-form bounds
# =========================================================================

def closed_form(name, **params):
    """Evaluate a closed-form size bound exactly.

    Args:
        name: a BoundName member.
        params: the formula's parameters; n and r as applicable.
            GAMMA_2R1 takes either r (integer radius, doubled radius 2r)
            or rad2 (doubled radius directly, allowing half-integers).

    Returns:
        Exact integer bound value.
    """
    if name is BoundName.VIZING_F:
        n, r = params["n"], params["r"]
        _require(r >= 1, f"VIZING_F needs r >= 1, got {r}")
        if r == 1:
            _require(n >= 1, f"need n >= 1, got {n}")
            return n * (n - 1) // 2
        if r == 2:
            _require(n >= 4, f"VIZING_F at r=2 needs n >= 4, got {n}")
            return n * (n - 2) // 2
        _require(n >= 2 * r, f"VIZING_F needs n >= 2r, got n={n}, r={r}")
        return ((n - 2 * r) ** 2 + 5 * n - 6 * r) // 2
    if name is BoundName.DSV11:
        n, r = params["n"], params["r"]
        _require(r >= 4, f"DSV11 needs r >= 4, got {r}")
        _require(n >= 2 * r, f"DSV11 needs n >= 2r, got n={n}, r={r}")
        return (n - 2 * r + 4) ** 2 // 4 + 2 * r - 4
    if name is BoundName.FRIDMAN:
        n, r = params["n"], params["r"]
        _require(r >= 2, f"FRIDMAN needs r >= 2, got {r}")
        _require(n >= r + 1, f"FRIDMAN needs n >= r+1, got n={n}, r={r}")
        return n * (n - r) + (r * r - r - 2) // 2
    if name is BoundName.RAD3_BICONN:
        n = params["n"]
        _require(n >= 6, f"RAD3_BICONN needs n >= 6, got {n}")
        return (n - 2) ** 2
    if name is BoundName.BICONN_GENERAL:
        n, r = params["n"], params["r"]
        _require(r >= 2, f"BICONN_GENERAL needs r >= 2, got {r}")
        _require(n >= 2 * r, f"BICONN_GENERAL needs n >= 2r, got n={n}, r={r}")
        return (n - (r - 1)) ** 2 + (r - 3)
    if name is BoundName.GAMMA_2R1:
        if "rad2" in params:
            rad2 = params["rad2"]
        else:
            rad2 = 2 * params["r"]
        _require(rad2 >= 5, f"GAMMA_2R1 needs doubled radius >= 5, got {rad2}")
        return (rad2 + 1) * (rad2 + 2) // 2 - 1
    if name is BoundName.BIP_DIGRAPH:
        n, r = params["n"], params["r"]
        _require(r >= 3, f"BIP_DIGRAPH needs r >= 3, got {r}")
        _require(n >= r + 1, f"BIP_DIGRAPH needs n >= r+1, got n={n}, r={r}")
        return -(-(n * (n - 2)) // 4) + r - 4 + (n - r + 3) ** 2 // 4
    if name is BoundName.BIP_BICONN_CONJ:
        n, r = params["n"], params["r"]
        return d_nrs_bipartite(n, r).arc_count
    raise ValueError(f"unknown bound name: {name!r}")


# =========================================================================
# FamilySpec dispatch
# =========================================================================

_CONSTRUCTORS = {
    FamilyKind.GAMMA_BAR: (gamma_bar, ("d",)),
    FamilyKind.GAMMA_BAR_BLOWUP: (gamma_bar_blowup, ("n", "d", "i", "s")),
    FamilyKind.GAMMA_STAR: (gamma_star, ("r",)),
    FamilyKind.GAMMA_STAR_BLOWUP: (gamma_star_blowup, ("n", "r", "i", "s")),
    FamilyKind.G_NRS: (g_nrs, ("n", "r", "s")),
    FamilyKind.D_2R_R_1: (d_2r_r_1, ("r",)),
    FamilyKind.D_NRS: (d_nrs, ("n", "r", "s")),
    FamilyKind.BIP_CYCLE_BLOWUP: (bip_cycle_blowup, ("n", "r", "a", "b", "c")),
    FamilyKind.BIP_DIGRAPH_EXTREMAL:
        (bip_digraph_extremal, ("n", "r", "a", "b", "c", "j")),
    FamilyKind.D_NRS_BIPARTITE: (d_nrs_bipartite, ("n", "r")),
}


def construct_family(spec):
    """Build the digraph described by a FamilySpec."""
    fn, names = _CONSTRUCTORS[spec.kind]
    given = spec.as_dict()
    missing = [k for k in names if k not in given]
    _require(not missing, f"{spec.kind.value} needs parameters {missing}")
    extra = [k for k in given if k not in names]
    _require(not extra, f"{spec.kind.value} got unknown parameters {extra}")
    return fn(**{k: given[k] for k in names})


def family_kind_from_cli_name(name):
    """Map a kebab-case CLI family name to its FamilyKind."""
    for kind in FamilyKind:
        if kind.value == name:
            return kind
    raise ValueError(f"unknown family name: {name!r}")


def bound_name_from_cli_name(name):
    """Map a kebab-case CLI bound name to its BoundName."""
    for bn in BoundName:
        if bn.value == name:
            return bn
    raise ValueError(f"unknown bound name: {name!r}")
