"""Compiled enumeration kernels.

Digraphs on n <= 8 vertices are packed into a single uint64 with row i
occupying bits [8i, 8i+8).  The digraph scan fixes row 0 (the shard) in
the caller, parallelizes over row-1 candidates (lanes), and runs an
iterative odometer DFS over the remaining rows, so results fold into
per-lane slots and every merge order is deterministic regardless of
thread count.  The undirected scan enumerates edge subsets of K_n the
same way (shard bits / lane bits / linear low bits).

Pass 1 records per-lane (best value, count at best, leaves, pruned);
pass 2 re-runs the identical walk and appends the encodings attaining a
known target value at precomputed per-lane offsets.
"""

import numpy as np
from numba import njit, prange

POP8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)

INF = 99
NO_VALUE = -(10 ** 9)


@njit(cache=True)
def _eval_leaf(n, rows8, full, strong_req, radout, rad2, diam, obj, pop8,
               ecc_out, cols):
    """Constraint-check one digraph; return objective value or NO_VALUE.

    obj: 0 = arc count (maximize), 1 = Wiener index (minimize),
    2 = count satisfying (value 1).
    """
    # cheap strongness screen: closure from 0 in both directions
    if strong_req == 1:
        seen = 1
        frontier = 1
        while frontier != 0:
            nxt = 0
            for j in range(n):
                if frontier >> j & 1:
                    nxt |= rows8[j]
            frontier = nxt & full & ~seen
            seen |= frontier
        if seen != full:
            return NO_VALUE
        seen = 1
        frontier = 1
        while frontier != 0:
            nxt = 0
            for j in range(n):
                if frontier >> j & 1:
                    for i in range(n):
                        if rows8[i] >> j & 1:
                            nxt |= 1 << i
            frontier = nxt & full & ~seen
            seen |= frontier
        if seen != full:
            return NO_VALUE

    minfin = INF
    maxecc = 0
    wiener = 0
    for src in range(n):
        seen = 1 << src
        frontier = seen
        ecc = 0
        dsum = 0
        while True:
            nxt = 0
            for j in range(n):
                if frontier >> j & 1:
                    nxt |= rows8[j]
            nxt &= full & ~seen
            if nxt == 0:
                break
            ecc += 1
            dsum += ecc * pop8[nxt]
            seen |= nxt
            frontier = nxt
        if seen == full:
            ecc_out[src] = ecc
            if ecc < minfin:
                minfin = ecc
            if ecc > maxecc:
                maxecc = ecc
            wiener += dsum
            if radout >= 0 and ecc < radout:
                return NO_VALUE
            if diam >= 0 and ecc > diam:
                return NO_VALUE
        else:
            ecc_out[src] = INF
            if strong_req == 1:
                return NO_VALUE

    if radout >= 0 and minfin != radout:
        return NO_VALUE
    if diam >= 0 and (minfin == INF or maxecc != diam):
        return NO_VALUE

    if rad2 >= 0:
        for j in range(n):
            cols[j] = 0
        for i in range(n):
            r = rows8[i]
            for j in range(n):
                if r >> j & 1:
                    cols[j] |= 1 << i
        min2 = 4 * INF
        for src in range(n):
            if ecc_out[src] == INF:
                continue
            seen = 1 << src
            frontier = seen
            ecc = 0
            while True:
                nxt = 0
                for j in range(n):
                    if frontier >> j & 1:
                        nxt |= cols[j]
                nxt &= full & ~seen
                if nxt == 0:
                    break
                ecc += 1
                seen |= nxt
                frontier = nxt
            if seen != full:
                continue
            s = ecc_out[src] + ecc
            if s < rad2:
                return NO_VALUE
            if s < min2:
                min2 = s
        if min2 != rad2:
            return NO_VALUE

    if obj == 0:
        arcs = 0
        for i in range(n):
            arcs += pop8[rows8[i]]
        return arcs
    if obj == 1:
        return wiener
    return 1


@njit(cache=True)
def _prefix_ok(depth, rows8, tdcaps, pop8):
    """Totaldeg propagation: rows 0..depth placed; caps are final."""
    for v in range(depth + 1):
        cap = tdcaps[v]
        if cap < 0:
            continue
        deg = pop8[rows8[v]]
        for i in range(depth + 1):
            if rows8[i] >> v & 1:
                deg += 1
        if deg > cap:
            return False
    return True


@njit(cache=True, parallel=True)
def scan_digraphs(n, cand_flat, cand_off, row0, prop, tdcaps,
                  strong_req, radout, rad2, diam, obj,
                  collect, target, lane_offs, out_enc,
                  lane_vals, lane_cnts, lane_leaves, lane_pruned):
    """One shard (fixed row 0) of the digraph scan, parallel over lanes.

    Pass 1 (collect = 0): fills lane_vals / lane_cnts / lane_leaves /
    lane_pruned.  Pass 2 (collect = 1): writes encodings whose objective
    value equals target into out_enc starting at lane_offs[lane].
    """
    full = (1 << n) - 1
    lanes = cand_off[2] - cand_off[1]
    pop8 = POP8
    for lane in prange(lanes):
        rows8 = np.zeros(8, dtype=np.int64)
        idx = np.zeros(8, dtype=np.int64)
        ecc_buf = np.zeros(8, dtype=np.int64)
        col_buf = np.zeros(8, dtype=np.int64)
        rows8[0] = row0
        rows8[1] = cand_flat[cand_off[1] + lane]
        best = NO_VALUE
        cnt = 0
        leaves = 0
        pruned = 0
        wpos = lane_offs[lane]

        lane_bad = False
        if prop == 1 and not _prefix_ok(1, rows8, tdcaps, pop8):
            lane_bad = True
            pruned += 1
        if not lane_bad:
            depth = 2
            idx[2] = 0
            while depth >= 2:
                count_d = cand_off[depth + 1] - cand_off[depth]
                if idx[depth] >= count_d:
                    depth -= 1
                    if depth >= 2:
                        idx[depth] += 1
                    continue
                rows8[depth] = cand_flat[cand_off[depth] + idx[depth]]
                if prop == 1 and not _prefix_ok(depth, rows8, tdcaps, pop8):
                    pruned += 1
                    idx[depth] += 1
                    continue
                if depth == n - 1:
                    leaves += 1
                    v = _eval_leaf(n, rows8, full, strong_req, radout,
                                   rad2, diam, obj, pop8, ecc_buf, col_buf)
                    if v != NO_VALUE:
                        if obj == 2:
                            cnt += 1
                            best = 1
                        else:
                            better = (v > best) if obj == 0 else \
                                (best == NO_VALUE or v < best)
                            if better:
                                best = v
                                cnt = 1
                            elif v == best:
                                cnt += 1
                            if collect == 1 and v == target:
                                enc = np.uint64(0)
                                for i in range(n):
                                    enc |= np.uint64(rows8[i]) << np.uint64(8 * i)
                                out_enc[wpos] = enc
                                wpos += 1
                    idx[depth] += 1
                else:
                    depth += 1
                    idx[depth] = 0
        lane_vals[lane] = best
        lane_cnts[lane] = cnt
        lane_leaves[lane] = leaves
        lane_pruned[lane] = pruned


@njit(cache=True)
def _eval_graph(n, m, pairs, subset, full, r, pop8, rows8):
    """Edge-subset leaf: return edge count if connected with radius r."""
    for i in range(8):
        rows8[i] = 0
    edges = 0
    for e in range(m):
        if subset >> e & 1:
            a = pairs[e, 0]
            b = pairs[e, 1]
            rows8[a] |= 1 << b
            rows8[b] |= 1 << a
            edges += 1
    minecc = INF
    for src in range(n):
        seen = 1 << src
        frontier = seen
        ecc = 0
        while True:
            nxt = 0
            for j in range(n):
                if frontier >> j & 1:
                    nxt |= rows8[j]
            nxt &= full & ~seen
            if nxt == 0:
                break
            ecc += 1
            seen |= nxt
            frontier = nxt
        if seen != full:
            return NO_VALUE
        if ecc < r:
            return NO_VALUE
        if ecc < minecc:
            minecc = ecc
    if minecc != r:
        return NO_VALUE
    return edges


@njit(cache=True, parallel=True)
def scan_graphs(n, pairs, shard, shard_bits, lane_bits, r,
                collect, target, lane_offs, out_enc,
                lane_vals, lane_cnts, lane_leaves):
    """One shard of the undirected edge-subset scan (radius-r graphs).

    Edge subsets of K_n are indexed by m = n(n-1)/2 bits split as
    [shard_bits | lane_bits | low bits]; maximizes the edge count.
    """
    m = pairs.shape[0]
    full = (1 << n) - 1
    low_bits = m - shard_bits - lane_bits
    lanes = 1 << lane_bits
    pop8 = POP8
    for lane in prange(lanes):
        base = (shard << (m - shard_bits)) | (lane << low_bits)
        best = NO_VALUE
        cnt = 0
        wpos = lane_offs[lane]
        row_buf = np.zeros(8, dtype=np.int64)
        for low in range(1 << low_bits):
            subset = base | low
            v = _eval_graph(n, m, pairs, subset, full, r, pop8, row_buf)
            if v == NO_VALUE:
                continue
            if v > best:
                best = v
                cnt = 1
            elif v == best:
                cnt += 1
            if collect == 1 and v == target:
                out_enc[wpos] = subset
                wpos += 1
        lane_vals[lane] = best
        lane_cnts[lane] = cnt
        lane_leaves[lane] = 1 << low_bits
