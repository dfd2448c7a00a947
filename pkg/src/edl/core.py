"""Dense small-order digraph type and structural operations.

A digraph on n vertices (1 <= n <= 64) is stored as a tuple of row bitmasks:
bit j of rows[i] is set iff the arc i->j exists.  The diagonal is always
zero.  Undirected graphs are represented as symmetric digraphs, so an
undirected edge contributes two arcs and edge counts are arc_count // 2.

All operations are pure functions over immutable values, safe to share
between concurrent workers.
"""

import json


class ParseError(ValueError):
    """Malformed serialized digraph; the message carries line/column info."""


# =========================================================================
# Core types
# =========================================================================

class DenseDigraph:
    """Immutable digraph on vertices 0..n-1 with bitmask adjacency rows.

    Attributes:
        n: vertex count, 1 <= n <= 64.
        rows: tuple of n ints; bit j of rows[i] is set iff arc i->j exists.
    """

    __slots__ = ("n", "rows")

    def __init__(self, n, rows):
        if not isinstance(n, int) or not 1 <= n <= 64:
            raise ValueError(f"order must be an int in 1..64, got {n!r}")
        rows = tuple(int(r) for r in rows)
        if len(rows) != n:
            raise ValueError(f"expected {n} rows, got {len(rows)}")
        full = (1 << n) - 1
        for i, row in enumerate(rows):
            if row < 0 or row & ~full:
                raise ValueError(f"row {i} has bits outside vertices 0..{n - 1}")
            if row >> i & 1:
                raise ValueError(f"self-loop at vertex {i}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("DenseDigraph is immutable")

    def __eq__(self, other):
        if not isinstance(other, DenseDigraph):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"DenseDigraph(n={self.n}, arc_count={self.arc_count})"

    @property
    def arc_count(self):
        """Number of arcs (ordered pairs)."""
        return sum(row.bit_count() for row in self.rows)

    def has_arc(self, i, j):
        """True iff the arc i->j exists."""
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise ValueError(f"vertex out of range: ({i}, {j})")
        return bool(self.rows[i] >> j & 1)

    def out_mask(self, i):
        """Bitmask of out-neighbors of vertex i."""
        return self.rows[i]

    def outdeg(self, i):
        return self.rows[i].bit_count()

    def indeg(self, j):
        return sum(row >> j & 1 for row in self.rows)


class VertexPartition:
    """Assignment of each vertex to class 1 or class 2.

    Attributes:
        classes: tuple with classes[v] in {1, 2}.
    """

    __slots__ = ("classes",)

    def __init__(self, classes):
        classes = tuple(int(c) for c in classes)
        if not classes:
            raise ValueError("partition needs at least one vertex")
        if any(c not in (1, 2) for c in classes):
            raise ValueError("classes must be 1 or 2")
        object.__setattr__(self, "classes", classes)

    def __setattr__(self, name, value):
        raise AttributeError("VertexPartition is immutable")

    def __eq__(self, other):
        if not isinstance(other, VertexPartition):
            return NotImplemented
        return self.classes == other.classes

    def __hash__(self):
        return hash(self.classes)

    def __repr__(self):
        s1, s2 = self.sizes()
        return f"VertexPartition(sizes=({s1}, {s2}))"

    def members(self, k):
        """Tuple of vertices in class k (1 or 2), ascending."""
        return tuple(v for v, c in enumerate(self.classes) if c == k)

    def mask(self, k):
        """Bitmask of class k."""
        m = 0
        for v, c in enumerate(self.classes):
            if c == k:
                m |= 1 << v
        return m

    def sizes(self):
        """Pair (|class 1|, |class 2|)."""
        n1 = sum(1 for c in self.classes if c == 1)
        return n1, len(self.classes) - n1

    def opposite_size(self, v):
        """Size of the class NOT containing vertex v."""
        n1, n2 = self.sizes()
        return n2 if self.classes[v] == 1 else n1


# =========================================================================
# Constructors
# =========================================================================

def from_arc_list(n, arcs):
    """Build a digraph from an explicit arc list.

    Args:
        n: vertex count.
        arcs: iterable of (i, j) ordered pairs; duplicates are idempotent.

    Returns:
        DenseDigraph with exactly the listed arcs.
    """
    rows = [0] * n
    for i, j in arcs:
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"arc ({i}, {j}) out of range for order {n}")
        if i == j:
            raise ValueError(f"self-loop arc ({i}, {j}) not allowed")
        rows[i] |= 1 << j
    return DenseDigraph(n, rows)


def empty_digraph(n):
    """Digraph on n vertices with no arcs."""
    return DenseDigraph(n, [0] * n)


def bidirected_clique(n):
    """Bidirected complete digraph K_n (every ordered pair an arc)."""
    full = (1 << n) - 1
    return DenseDigraph(n, [full & ~(1 << i) for i in range(n)])


def directed_cycle(n):
    """Directed cycle 0 -> 1 -> ... -> n-1 -> 0."""
    if n < 2:
        raise ValueError("directed cycle needs n >= 2")
    return from_arc_list(n, [(i, (i + 1) % n) for i in range(n)])


def bidirected_cycle(n):
    """Symmetric cycle: arcs both ways around 0 - 1 - ... - n-1 - 0."""
    if n < 3:
        raise ValueError("bidirected cycle needs n >= 3")
    arcs = []
    for i in range(n):
        j = (i + 1) % n
        arcs.append((i, j))
        arcs.append((j, i))
    return from_arc_list(n, arcs)


# =========================================================================
# Structural operations
# =========================================================================

def arcs(D):
    """Sorted list of (i, j) arc pairs."""
    out = []
    for i, row in enumerate(D.rows):
        m = row
        while m:
            j = (m & -m).bit_length() - 1
            out.append((i, j))
            m &= m - 1
    return out


def complement(D):
    """Complement with respect to the bidirected clique (diagonal stays 0)."""
    full = (1 << D.n) - 1
    return DenseDigraph(D.n, [~row & full & ~(1 << i) for i, row in enumerate(D.rows)])


def reverse(D):
    """Transpose: arc i->j becomes j->i."""
    cols = [0] * D.n
    for i, row in enumerate(D.rows):
        m = row
        while m:
            j = (m & -m).bit_length() - 1
            cols[j] |= 1 << i
            m &= m - 1
    return DenseDigraph(D.n, cols)


def intersect(D1, D2):
    """Arc-wise intersection; vertex sets identified by index."""
    if D1.n != D2.n:
        raise ValueError(f"order mismatch: {D1.n} != {D2.n}")
    return DenseDigraph(D1.n, [a & b for a, b in zip(D1.rows, D2.rows)])


def is_symmetric(D):
    """True iff every arc has its reverse (undirected graph)."""
    for i in range(D.n):
        for j in range(i + 1, D.n):
            if (D.rows[i] >> j & 1) != (D.rows[j] >> i & 1):
                return False
    return True


def remove_vertex(D, v):
    """Induced subdigraph on V - {v}, remaining indices compacted in order."""
    if D.n < 2:
        raise ValueError("cannot remove a vertex from an order-1 digraph")
    if not 0 <= v < D.n:
        raise ValueError(f"vertex {v} out of range for order {D.n}")
    low = (1 << v) - 1
    rows = []
    for i, row in enumerate(D.rows):
        if i == v:
            continue
        rows.append((row >> (v + 1)) << v | (row & low))
    return DenseDigraph(D.n - 1, rows)


def blow_up(D, targets):
    """Blow up the listed vertices by substitution digraphs.

    Each target vertex v is replaced by a copy of its digraph H.  Every
    copy-vertex inherits v's arcs to and from the rest of the digraph in
    the same directions; between copies of two different targets, arcs
    appear exactly in the direction(s) present between the originals;
    arcs inside a copy are H's own arcs.  Blow-up by a 1-vertex H is the
    identity on that target.

    Args:
        D: digraph to expand.
        targets: list of (vertex, H) pairs with distinct vertices.

    Returns:
        DenseDigraph of order sum over vertices of their block sizes.
    """
    subs = {}
    for v, H in targets:
        if not 0 <= v < D.n:
            raise ValueError(f"target vertex {v} out of range")
        if v in subs:
            raise ValueError(f"duplicate target vertex {v}")
        subs[v] = H

    sizes = [subs[v].n if v in subs else 1 for v in range(D.n)]
    new_n = sum(sizes)
    if new_n > 64:
        raise ValueError(f"blow-up order {new_n} exceeds the limit 64")

    offset = [0] * D.n
    acc = 0
    for v in range(D.n):
        offset[v] = acc
        acc += sizes[v]
    block = [((1 << sizes[v]) - 1) << offset[v] for v in range(D.n)]

    rows = [0] * new_n
    for v in range(D.n):
        out = 0
        m = D.rows[v]
        while m:
            w = (m & -m).bit_length() - 1
            out |= block[w]
            m &= m - 1
        for a in range(sizes[v]):
            internal = subs[v].rows[a] << offset[v] if v in subs else 0
            rows[offset[v] + a] = out | internal
    return DenseDigraph(new_n, rows)


def is_bipartite(D):
    """2-color the underlying undirected graph if possible.

    An arc in either direction counts as adjacency.  Coloring is
    deterministic: each weakly-connected component is rooted at its
    smallest uncolored vertex, which gets class 1.

    Returns:
        VertexPartition, or None when an odd cycle exists.
    """
    n = D.n
    und = [0] * n
    for i, row in enumerate(D.rows):
        und[i] |= row
        m = row
        while m:
            j = (m & -m).bit_length() - 1
            und[j] |= 1 << i
            m &= m - 1
    color = [0] * n
    for root in range(n):
        if color[root]:
            continue
        color[root] = 1
        queue = [root]
        while queue:
            v = queue.pop(0)
            other = 3 - color[v]
            m = und[v]
            while m:
                w = (m & -m).bit_length() - 1
                m &= m - 1
                if color[w] == 0:
                    color[w] = other
                    queue.append(w)
                elif color[w] != other:
                    return None
    return VertexPartition(color)


# =========================================================================
# Canonical form and isomorphism
# =========================================================================

CANON_MAX_N = 12


def _row_value(D, perm_order, src):
    """Row bitstring value of src under a full slot assignment."""
    n = D.n
    val = 0
    row = D.rows[src]
    for b, orig in enumerate(perm_order):
        if row >> orig & 1:
            val |= 1 << (n - 1 - b)
    return val


def _transposition_gens(D):
    """Transpositions (u v) that are automorphisms, as permutation tuples."""
    n = D.n
    cols = [0] * n
    for i, row in enumerate(D.rows):
        m = row
        while m:
            j = (m & -m).bit_length() - 1
            cols[j] |= 1 << i
            m &= m - 1
    gens = []
    for u in range(n):
        for v in range(u + 1, n):
            keep = ~((1 << u) | (1 << v))
            if (D.rows[u] ^ D.rows[v]) & keep:
                continue
            if (cols[u] ^ cols[v]) & keep:
                continue
            if (D.rows[u] >> v & 1) != (D.rows[v] >> u & 1):
                continue
            g = list(range(n))
            g[u], g[v] = v, u
            gens.append(tuple(g))
    return gens


def canonical_form(D):
    """Canonical representative of D's isomorphism class.

    The result is the relabeling of D whose row-major adjacency bit string
    is lexicographically smallest; D1 and D2 are isomorphic iff their
    canonical forms are equal.  Exact branch-and-bound over vertex
    relabelings with sound pruning (minimum-outdegree first slot, an
    optimistic prefix bound against the incumbent, and skipping candidates
    that are transposition-equivalent to an already-tried sibling).

    Args:
        D: digraph of order at most 12 (documented limit).

    Returns:
        DenseDigraph equal to the lexicographically smallest relabeling.
    """
    n = D.n
    if n > CANON_MAX_N:
        raise ValueError(f"canonical_form supports n <= {CANON_MAX_N}, got {n}")
    if n == 1:
        return DenseDigraph(1, (0,))

    rows = D.rows
    outdeg = [r.bit_count() for r in rows]
    indeg = [0] * n
    for r in rows:
        m = r
        while m:
            j = (m & -m).bit_length() - 1
            indeg[j] += 1
            m &= m - 1

    # Discovered automorphisms; seeded with transposition automorphisms,
    # extended whenever two leaves produce the same matrix value.
    gens = _transposition_gens(D)
    gen_set = set(gens)
    identity = tuple(range(n))

    # Incumbent: identity labeling gives a valid upper bound.
    best = [_row_value(D, list(range(n)), i) for i in range(n)]
    best_perm = list(range(n))

    perm = [0] * n
    fixed = [0] * n          # fixed[a] = bits of row a in assigned columns

    def rec(k, assigned):
        # perm[0..k-1] chosen; fixed[0..k-1] reflect columns 0..k-1.
        if k == n:
            cur = fixed[: n]
            if cur < best:
                best[:] = cur
                best_perm[:] = perm
            elif cur == best:
                # Equal-valued leaves differ by an automorphism of D.
                g = [0] * n
                for a in range(n):
                    g[best_perm[a]] = perm[a]
                g = tuple(g)
                if g != identity and g not in gen_set and len(gens) < 128:
                    gen_set.add(g)
                    gens.append(g)
            return
        remaining = [v for v in range(n) if not assigned >> v & 1]
        # Order candidates by the row value they would create in slot k.
        scored = []
        for v in remaining:
            val = 0
            rv = rows[v]
            for b in range(k):
                if rv >> perm[b] & 1:
                    val |= 1 << (n - 1 - b)
            scored.append((val, outdeg[v], indeg[v], v))
        scored.sort()
        if k == 0:
            dmin = min(outdeg)
            scored = [t for t in scored if outdeg[t[3]] == dmin]
        # Automorphisms fixing the current prefix pointwise map sibling
        # subtrees onto each other; skip candidates whose orbit meets an
        # already-tried sibling.  The generator list grows as deeper leaves
        # tie the incumbent, so the stabilizer is refreshed when it changes.
        stab = []
        stab_src = -1
        tried = 0
        saved = fixed[: k]
        for _, _, _, v in scored:
            if len(gens) != stab_src:
                stab_src = len(gens)
                stab = [g for g in gens
                        if all(g[perm[a]] == perm[a] for a in range(k))]
            orbit = 1 << v
            if stab:
                frontier = [v]
                while frontier:
                    u = frontier.pop()
                    for g in stab:
                        w = g[u]
                        if not orbit >> w & 1:
                            orbit |= 1 << w
                            frontier.append(w)
            if orbit & tried:
                continue
            tried |= 1 << v
            # Place v in slot k: update column k of earlier rows, build row k.
            colbit = 1 << (n - 1 - k)
            for a in range(k):
                if rows[perm[a]] >> v & 1:
                    fixed[a] |= colbit
            rowval = 0
            rv = rows[v]
            for b in range(k):
                if rv >> perm[b] & 1:
                    rowval |= 1 << (n - 1 - b)
            fixed[k] = rowval
            perm[k] = v
            nass = assigned | (1 << v)
            # Optimistic bound: unassigned out-arcs packed into the lowest
            # remaining bit positions of each settled row.
            prune = False
            unmask = ~nass
            for a in range(k + 1):
                ones = (rows[perm[a]] & unmask).bit_count()
                opt = fixed[a] | ((1 << ones) - 1)
                if opt < best[a]:
                    break
                if opt > best[a]:
                    prune = True
                    break
            if not prune:
                rec(k + 1, nass)
            for a in range(k):
                fixed[a] = saved[a]

    rec(0, 0)

    # Decode best row values (bit n-1-b = column b) back into row masks.
    out_rows = []
    for val in best:
        row = 0
        for b in range(n):
            if val >> (n - 1 - b) & 1:
                row |= 1 << b
        out_rows.append(row)
    return DenseDigraph(n, out_rows)


def is_isomorphic(D1, D2):
    """True iff D1 and D2 are isomorphic (canonical forms are equal)."""
    if D1.n != D2.n:
        return False
    if D1.arc_count != D2.arc_count:
        return False
    return canonical_form(D1) == canonical_form(D2)


# =========================================================================
# Serialization: .adm text, JSON, DOT
# =========================================================================

def to_adm(D):
    """Serialize to .adm text: decimal n, then n rows of '0'/'1' characters."""
    lines = [str(D.n)]
    for row in D.rows:
        lines.append("".join("1" if row >> j & 1 else "0" for j in range(D.n)))
    return "\n".join(lines) + "\n"


def from_adm(text):
    """Parse .adm text produced by to_adm.

    Raises:
        ParseError: with a line/column diagnostic on malformed input.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("line 1: empty input, expected vertex count")
    head = lines[0]
    if not head.isdigit():
        raise ParseError(f"line 1: expected a decimal vertex count, got {head!r}")
    n = int(head)
    if not 1 <= n <= 64:
        raise ParseError(f"line 1: vertex count {n} outside 1..64")
    if len(lines) - 1 < n:
        raise ParseError(
            f"line {len(lines) + 1}: unexpected end of input, "
            f"expected {n} rows but found {len(lines) - 1}"
        )
    if len(lines) - 1 > n:
        raise ParseError(f"line {n + 2}: unexpected extra content after {n} rows")
    rows = []
    for i in range(n):
        lineno = i + 2
        line = lines[i + 1]
        if len(line) != n:
            raise ParseError(
                f"line {lineno}: row has {len(line)} characters, expected {n}"
            )
        row = 0
        for col, ch in enumerate(line):
            if ch == "1":
                row |= 1 << col
            elif ch != "0":
                raise ParseError(
                    f"line {lineno}, column {col + 1}: invalid character {ch!r}"
                )
        if row >> i & 1:
            raise ParseError(f"line {lineno}, column {i + 1}: self-loop on diagonal")
        rows.append(row)
    return DenseDigraph(n, rows)


def to_json_obj(D):
    """JSON-ready dict: {"n": n, "arcs": [[i, j], ...]} with sorted arcs."""
    return {"n": D.n, "arcs": [[i, j] for i, j in arcs(D)]}


def from_json_obj(obj):
    """Build a digraph from the JSON object form; duplicate arcs are fine."""
    if not isinstance(obj, dict):
        raise ParseError("JSON digraph must be an object with 'n' and 'arcs'")
    if "n" not in obj or "arcs" not in obj:
        raise ParseError("JSON digraph needs both 'n' and 'arcs' keys")
    n = obj["n"]
    if not isinstance(n, int) or not 1 <= n <= 64:
        raise ParseError(f"'n' must be an int in 1..64, got {n!r}")
    pairs = obj["arcs"]
    if not isinstance(pairs, list):
        raise ParseError("'arcs' must be a list of [i, j] pairs")
    arcs_list = []
    for k, pair in enumerate(pairs):
        if (not isinstance(pair, (list, tuple)) or len(pair) != 2
                or not all(isinstance(x, int) for x in pair)):
            raise ParseError(f"arcs[{k}] is not an [i, j] integer pair: {pair!r}")
        arcs_list.append((pair[0], pair[1]))
    try:
        return from_arc_list(n, arcs_list)
    except ValueError as e:
        raise ParseError(str(e)) from e


def to_json(D):
    """Serialize to compact JSON text."""
    return json.dumps(to_json_obj(D), separators=(", ", ": "))


def from_json(text):
    """Parse JSON text into a digraph with line/column diagnostics."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}, column {e.colno}: {e.msg}") from e
    return from_json_obj(obj)


def to_dot(D):
    """Serialize to Graphviz DOT (export only), vertices named v0..v(n-1)."""
    lines = ["digraph D {"]
    for v in range(D.n):
        lines.append(f"  v{v};")
    for i, j in arcs(D):
        lines.append(f"  v{i} -> v{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
