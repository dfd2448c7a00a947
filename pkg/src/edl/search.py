"""Exhaustive search over labeled digraphs with sound pruning.

A SearchTask fixes the order n, a set of constraints (strongness, a
fixed bipartition, exact out-radius, exact doubled radius, or exact
diameter), an objective, and an enumeration mode:

  * FULL scans every labeled digraph (n <= 5, 2^(n(n-1)) candidates).
  * ROW_CAPPED restricts each out-neighborhood row to the sizes a
    constraint provably allows before scanning (4 <= n <= 8).
  * BACKTRACKING adds total-degree propagation on placed row prefixes
    on top of the row caps (4 <= n <= 8).

Pruning is only ever driven by facts implied by the constraints, so
every mode returns the same extremal value, labeled count, and witness
set; results are deterministic and independent of the thread count.
Witnesses are classified up to isomorphism and wrapped in certificates
that can be re-verified from scratch.
"""

import hashlib
import json
import os
from dataclasses import dataclass
from enum import Enum

from .core import DenseDigraph, canonical_form, to_adm
from .metrics import metric_summary, summary_to_json_obj

# === task description ===


class Objective(Enum):
    MAX_SIZE = "max-size"
    MIN_WIENER = "min-wiener"
    COUNT_EXTREMAL = "count-extremal"


class SearchMode(Enum):
    FULL = "full"
    ROW_CAPPED = "row-capped"
    BACKTRACKING = "backtracking"


@dataclass(frozen=True)
class Constraints:
    """Properties every reported digraph must satisfy exactly.

    Attributes:
        strong: require strong connectivity.
        bipartite: None, or (c1, c2) fixing vertices 0..c1-1 as class 1
            and the rest as class 2; arcs may only join the classes.
        rad_out_eq: exact out-radius (min over finite out-eccentricities).
        rad2_eq: exact doubled radius min_v (ecc_out(v) + ecc_in(v)).
        diameter_eq: exact diameter; only meaningful with strong=True.
    """

    strong: bool = False
    bipartite: tuple = None
    rad_out_eq: int = None
    rad2_eq: int = None
    diameter_eq: int = None


@dataclass(frozen=True)
class SearchTask:
    """One enumeration job.

    Attributes:
        n: digraph order.
        constraints: Constraints instance.
        objective: Objective member.
        mode: SearchMode member.
        threads: worker threads for the compiled scan (>= 1).
        checkpoint_path: optional JSON checkpoint file; progress is
            saved per shard and a matching file resumes the run.
    """

    n: int
    constraints: Constraints
    objective: Objective
    mode: SearchMode
    threads: int = 1
    checkpoint_path: str = None

    def __post_init__(self):
        n = self.n
        cons = self.constraints
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"order must be a positive int, got {n!r}")
        if self.mode is SearchMode.FULL:
            if n > 5:
                raise ValueError(f"mode full supports n <= 5, got n={n}")
        else:
            if not 4 <= n <= 8:
                raise ValueError(
                    f"mode {self.mode.value} supports 4 <= n <= 8, got n={n}")
        if cons.rad_out_eq is not None and cons.rad2_eq is not None:
            raise ValueError("rad_out_eq and rad2_eq are mutually exclusive")
        if cons.rad_out_eq is not None and cons.rad_out_eq < 1:
            raise ValueError(f"rad_out_eq must be >= 1, got {cons.rad_out_eq}")
        if cons.rad2_eq is not None and cons.rad2_eq < 2:
            raise ValueError(f"rad2_eq must be >= 2, got {cons.rad2_eq}")
        if cons.diameter_eq is not None:
            if not cons.strong:
                raise ValueError("diameter_eq needs the strong constraint")
            if cons.diameter_eq < 1:
                raise ValueError(
                    f"diameter_eq must be >= 1, got {cons.diameter_eq}")
        if self.objective is Objective.MIN_WIENER and not cons.strong:
            raise ValueError("objective min-wiener needs the strong constraint")
        if cons.bipartite is not None:
            c1, c2 = cons.bipartite
            if c1 < 1 or c2 < 1 or c1 + c2 != n:
                raise ValueError(
                    f"bipartite classes must be positive and sum to n={n}, "
                    f"got {cons.bipartite}")
        if self.threads < 1:
            raise ValueError(f"threads must be >= 1, got {self.threads}")


def task_to_json_obj(task):
    """JSON-ready dict describing a task (threads and paths included)."""
    cons = task.constraints
    return {
        "n": task.n,
        "constraints": {
            "strong": cons.strong,
            "bipartite": list(cons.bipartite) if cons.bipartite else None,
            "rad_out_eq": cons.rad_out_eq,
            "rad2_eq": cons.rad2_eq,
            "diameter_eq": cons.diameter_eq,
        },
        "objective": task.objective.value,
        "mode": task.mode.value,
        "threads": task.threads,
    }


def task_fingerprint(task):
    """Hex digest of the semantic task fields (threads excluded).

    Two tasks share a fingerprint iff they enumerate the same space the
    same way, so checkpoints can resume under a different thread count.
    """
    obj = task_to_json_obj(task)
    del obj["threads"]
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("ascii")).hexdigest()


# === pruning plan (derived caps) ===


def _allowed_mask(task, v):
    """Bitmask of vertices row v may point at."""
    n = task.n
    full = (1 << n) - 1
    mask = full & ~(1 << v)
    bip = task.constraints.bipartite
    if bip is not None:
        c1 = bip[0]
        m1 = (1 << c1) - 1
        mask &= (full ^ m1) if v < c1 else m1
    return mask


def _row_cap(task, v):
    """Largest out-degree row v can have in any satisfying digraph."""
    n = task.n
    cap = n - 1
    if task.mode is SearchMode.FULL:
        return cap
    cons = task.constraints
    r = cons.rad_out_eq
    if r is not None and r >= 2:
        # outdeg(v) <= n - ecc_out(v) <= n - r when strong; a vertex of
        # out-degree n-1 has ecc_out 1 < r in any case.
        cap = min(cap, n - r if cons.strong else n - 2)
    return cap


def _totaldeg_caps(task):
    """Per-vertex total-degree caps for BACKTRACKING propagation.

    Returns a list of n ints, -1 meaning no cap.  Each cap follows from
    the constraints: with rad2 = R every vertex misses at least R - 2
    incident arcs, with out-radius r >= 2 it misses at least 2r - 3,
    and in a strong bipartite digraph of even out-radius r >= 4 the
    total degree is at most twice the opposite class minus r - 2.
    """
    n = task.n
    cons = task.constraints
    caps = [-1] * n
    if task.mode is not SearchMode.BACKTRACKING or not cons.strong:
        return caps
    if cons.rad2_eq is not None:
        caps = [2 * (n - 1) - (cons.rad2_eq - 2)] * n
    r = cons.rad_out_eq
    if r is not None and r >= 2:
        caps = [2 * (n - 1) - (2 * r - 3)] * n
        if cons.bipartite is not None and r >= 4 and r % 2 == 0:
            c1, c2 = cons.bipartite
            for v in range(n):
                opp = c2 if v < c1 else c1
                caps[v] = min(caps[v], 2 * opp - (r - 2))
    return caps


def _candidate_rows(task):
    """Per-vertex sorted lists of admissible out-neighborhood rows."""
    out = []
    for v in range(task.n):
        mask = _allowed_mask(task, v)
        cap = _row_cap(task, v)
        rows = [s for s in range(mask + 1)
                if s & ~mask == 0 and s.bit_count() <= cap]
        out.append(rows)
    return out


# === leaf evaluation (reference path) ===


def satisfies_constraints(D, cons):
    """True iff digraph D meets every constraint in cons exactly."""
    n = D.n
    if cons.bipartite is not None:
        c1 = cons.bipartite[0]
        if c1 + cons.bipartite[1] != n:
            return False
        m1 = (1 << c1) - 1
        for i in range(n):
            own = m1 if i < c1 else ((1 << n) - 1) ^ m1
            if D.rows[i] & own:
                return False
    ms = metric_summary(D)
    if cons.strong and not ms.strong:
        return False
    if cons.rad_out_eq is not None and ms.rad_out != cons.rad_out_eq:
        return False
    if cons.rad2_eq is not None and ms.rad2 != cons.rad2_eq:
        return False
    if cons.diameter_eq is not None and ms.diameter != cons.diameter_eq:
        return False
    return True


def _bipartition_sizes_feasible(D, sizes):
    """True iff some relabeling of D is bipartite with the given sizes.

    Witness certificates store canonical forms, which forget the fixed
    class labeling, so the recheck asks for any valid 2-coloring whose
    color counts match: color each component of the underlying graph,
    then solve a subset-sum over the per-component color splits.
    """
    n = D.n
    und = list(D.rows)
    for i in range(n):
        for j in range(n):
            if D.rows[i] >> j & 1:
                und[j] |= 1 << i
    color = [-1] * n
    splits = []
    for start in range(n):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = [start]
        counts = [1, 0]
        while queue:
            v = queue.pop()
            for w in range(n):
                if not und[v] >> w & 1:
                    continue
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    counts[color[w]] += 1
                    queue.append(w)
                elif color[w] == color[v]:
                    return False
        splits.append(counts)
    reachable = {0}
    for a, b in splits:
        reachable = {s + a for s in reachable} | {s + b for s in reachable}
    return sizes[0] in reachable


def _witness_satisfies(D, cons):
    """Constraint recheck for canonical witnesses (label-independent)."""
    if cons.bipartite is not None:
        if not _bipartition_sizes_feasible(D, cons.bipartite):
            return False
        cons = Constraints(strong=cons.strong, bipartite=None,
                           rad_out_eq=cons.rad_out_eq,
                           rad2_eq=cons.rad2_eq,
                           diameter_eq=cons.diameter_eq)
    return satisfies_constraints(D, cons)


def _objective_value(D, objective):
    if objective is Objective.MAX_SIZE:
        return D.arc_count
    if objective is Objective.MIN_WIENER:
        return metric_summary(D).wiener
    return 1


def _encode(rows):
    enc = 0
    for i, row in enumerate(rows):
        enc |= row << (8 * i)
    return enc


def _decode(enc, n):
    return DenseDigraph(n, [(enc >> (8 * i)) & 0xFF for i in range(n)])


def _scan_python(task, cands, tdcaps, collect=False, target=None):
    """Pure-Python mirror of the compiled scan; identical semantics.

    Returns (best, count, leaves, pruned, encodings) where best is None
    when nothing satisfies the constraints and encodings lists the
    collected digraphs in enumeration order.
    """
    n = task.n
    cons = task.constraints
    obj = task.objective
    prop = task.mode is SearchMode.BACKTRACKING
    rows = [0] * n
    best = None
    count = 0
    leaves = 0
    pruned = 0
    encs = []

    def prefix_ok(depth):
        for v in range(depth + 1):
            cap = tdcaps[v]
            if cap < 0:
                continue
            deg = rows[v].bit_count()
            deg += sum(rows[i] >> v & 1 for i in range(depth + 1))
            if deg > cap:
                return False
        return True

    def leaf():
        nonlocal best, count, leaves
        leaves += 1
        D = DenseDigraph(n, rows)
        if not satisfies_constraints(D, cons):
            return
        if obj is Objective.COUNT_EXTREMAL:
            count += 1
            return
        v = _objective_value(D, obj)
        better = (best is None or
                  (v > best if obj is Objective.MAX_SIZE else v < best))
        if better:
            best = v
            count = 1
        elif v == best:
            count += 1
        if collect and v == target:
            encs.append(_encode(rows))

    def rec(depth):
        nonlocal pruned
        for row in cands[depth]:
            rows[depth] = row
            if prop and depth >= 1 and not prefix_ok(depth):
                pruned += 1
                continue
            if depth == n - 1:
                leaf()
            else:
                rec(depth + 1)

    rec(0)
    return best, count, leaves, pruned, encs


# === compiled scan driver ===


def _objective_id(objective):
    return {Objective.MAX_SIZE: 0, Objective.MIN_WIENER: 1,
            Objective.COUNT_EXTREMAL: 2}[objective]


def _kernel_args(task, cands):
    import numpy as np

    flat = []
    off = [0]
    for rows in cands:
        flat.extend(rows)
        off.append(len(flat))
    cand_flat = np.array(flat, dtype=np.int64)
    cand_off = np.array(off, dtype=np.int64)
    tdcaps = np.array(_totaldeg_caps(task) + [-1] * (8 - task.n),
                      dtype=np.int64)
    return cand_flat, cand_off, tdcaps


def _run_shard(task, cands, shard_idx, collect=0, target=0, offs=None,
               total=0):
    """Run one shard in the compiled kernel; returns per-lane arrays."""
    import numpy as np
    from . import _kernels

    cons = task.constraints
    cand_flat, cand_off, tdcaps = _kernel_args(task, cands)
    lanes = len(cands[1])
    lane_vals = np.empty(lanes, dtype=np.int64)
    lane_cnts = np.empty(lanes, dtype=np.int64)
    lane_leaves = np.empty(lanes, dtype=np.int64)
    lane_pruned = np.empty(lanes, dtype=np.int64)
    if offs is None:
        offs = np.zeros(lanes, dtype=np.int64)
    out_enc = np.zeros(max(total, 1), dtype=np.uint64)
    _kernels.scan_digraphs(
        task.n, cand_flat, cand_off, cands[0][shard_idx],
        1 if task.mode is SearchMode.BACKTRACKING else 0, tdcaps,
        1 if cons.strong else 0,
        -1 if cons.rad_out_eq is None else cons.rad_out_eq,
        -1 if cons.rad2_eq is None else cons.rad2_eq,
        -1 if cons.diameter_eq is None else cons.diameter_eq,
        _objective_id(task.objective),
        collect, target, offs, out_enc,
        lane_vals, lane_cnts, lane_leaves, lane_pruned)
    return lane_vals, lane_cnts, lane_leaves, lane_pruned, out_enc


def _fold(objective, items):
    """Fold (value, count) pairs; value None or NO_VALUE means empty."""
    best = None
    count = 0
    for value, cnt in items:
        if value is None or value <= -(10 ** 8):
            continue
        if objective is Objective.COUNT_EXTREMAL:
            count += cnt
            best = 1
            continue
        better = (best is None or
                  (value > best if objective is Objective.MAX_SIZE
                   else value < best))
        if better:
            best = value
            count = cnt
        elif value == best:
            count += cnt
    return best, count


# === checkpointing ===


CHECKPOINT_VERSION = 1


class CheckpointError(RuntimeError):
    """Raised when a checkpoint file cannot be trusted."""


def _checkpoint_file(task):
    path = task.checkpoint_path
    if path is None:
        return None
    override = os.environ.get("EDL_CHECKPOINT_DIR")
    if override:
        path = os.path.join(override, os.path.basename(path))
    return path


def _checkpoint_load(task, shard_count):
    path = _checkpoint_file(task)
    if path is None or not os.path.exists(path):
        return []
    try:
        with open(path, "r", encoding="ascii") as fh:
            obj = json.load(fh)
    except (OSError, ValueError) as exc:
        raise CheckpointError(f"unreadable checkpoint {path}: {exc}")
    if obj.get("version") != CHECKPOINT_VERSION:
        raise CheckpointError(
            f"checkpoint version mismatch in {path}: {obj.get('version')!r}")
    if obj.get("fingerprint") != task_fingerprint(task):
        raise CheckpointError(
            f"checkpoint {path} belongs to a different task")
    partials = obj.get("partials")
    if not isinstance(partials, list) or len(partials) > shard_count:
        raise CheckpointError(f"checkpoint {path} has malformed progress")
    for p in partials:
        if not isinstance(p, dict) or \
                sorted(p) != ["count", "leaves", "pruned", "value"]:
            raise CheckpointError(f"checkpoint {path} has malformed partials")
    return partials


def _checkpoint_save(task, partials):
    path = _checkpoint_file(task)
    if path is None:
        return
    obj = {
        "version": CHECKPOINT_VERSION,
        "fingerprint": task_fingerprint(task),
        "phase": "scan",
        "partials": partials,
    }
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="ascii") as fh:
        json.dump(obj, fh)
    os.replace(tmp, path)


def _checkpoint_clear(task):
    path = _checkpoint_file(task)
    if path is not None and os.path.exists(path):
        os.remove(path)


# === certificates and reports ===


@dataclass(frozen=True)
class ExtremalCertificate:
    """Canonical witness plus everything needed to re-verify it.

    Attributes:
        digraph: canonical representative of one isomorphism class.
        summary: its MetricSummary.
        task: the search task it answers.
        hash: sha256 over the task fingerprint, adjacency matrix, and
            metric summary.
    """

    digraph: DenseDigraph
    summary: object
    task: SearchTask
    hash: str


@dataclass(frozen=True)
class SearchReport:
    """Outcome of one enumeration.

    extremal_value is None when no digraph satisfies the constraints
    (and always None for COUNT_EXTREMAL, where the count carries the
    answer).  certificates hold one entry per isomorphism class of
    witnesses, sorted by canonical adjacency matrix.
    """

    task: SearchTask
    candidates_examined: int
    extremal_value: object
    extremal_labeled_count: int
    certificates: tuple
    pruning: dict
    wall_time_ms: int = 0


def _certificate_hash(task, D, ms):
    blob = "\n".join([
        task_fingerprint(task),
        to_adm(D),
        json.dumps(summary_to_json_obj(ms), sort_keys=True,
                   separators=(",", ":")),
    ])
    return hashlib.sha256(blob.encode("ascii")).hexdigest()


def make_certificate(task, D):
    """Build the certificate for one witness (canonicalized first)."""
    C = canonical_form(D)
    ms = metric_summary(C)
    return ExtremalCertificate(C, ms, task, _certificate_hash(task, C, ms))


def witness_problems(cert):
    """Names of the certificate fields that fail re-verification."""
    problems = []
    task = cert.task
    if not _witness_satisfies(cert.digraph, task.constraints):
        problems.append("constraints")
    ms = metric_summary(cert.digraph)
    if ms != cert.summary:
        problems.append("summary")
    if _certificate_hash(task, cert.digraph, ms) != cert.hash:
        problems.append("hash")
    return tuple(problems)


def verify_witness(cert):
    """Recompute constraints, metrics, and hash of a certificate."""
    return witness_problems(cert) == ()


def classify_extremal(digraphs):
    """Deduplicate digraphs up to isomorphism.

    Args:
        digraphs: iterable of DenseDigraph (n <= 12 each).

    Returns:
        Canonical representatives sorted by adjacency matrix text, one
        per isomorphism class.
    """
    reps = {}
    for D in digraphs:
        C = canonical_form(D)
        reps[to_adm(C)] = C
    return [reps[key] for key in sorted(reps)]


def report_to_json_obj(report):
    """JSON-ready dict for a report (wall_time_ms pinned to 0)."""
    return {
        "task": task_to_json_obj(report.task),
        "candidates_examined": report.candidates_examined,
        "extremal_value": report.extremal_value,
        "extremal_labeled_count": report.extremal_labeled_count,
        "iso_classes": [
            {
                "adm": to_adm(cert.digraph),
                "metrics": summary_to_json_obj(cert.summary),
                "hash": cert.hash,
            }
            for cert in report.certificates
        ],
        "wall_time_ms": 0,
        "pruning": dict(report.pruning),
    }


# === the enumeration entry point ===


def _finish_report(task, best, labeled, leaves, pruned, shard_count, encs):
    certificates = ()
    if best is not None and task.objective is not Objective.COUNT_EXTREMAL:
        classes = classify_extremal(_decode(e, task.n) for e in encs)
        certs = []
        for C in classes:
            cert = make_certificate(task, C)
            if not verify_witness(cert):
                raise RuntimeError("witness failed post-hoc verification")
            if _objective_value(C, task.objective) != best:
                raise RuntimeError("witness does not attain the extremal value")
            certs.append(cert)
        certificates = tuple(certs)
    value = best if task.objective is not Objective.COUNT_EXTREMAL else None
    pruning = {
        "prefixes_pruned": pruned,
        "shards": shard_count,
    }
    return SearchReport(task, leaves, value, labeled, certificates, pruning)


def enumerate_task(task):
    """Run the search described by task and report the extremal answer.

    Returns:
        SearchReport; deterministic for a given task regardless of
        threads, and resumable through task.checkpoint_path.

    Raises:
        ValueError: on an infeasible task (caught at construction).
        CheckpointError: on an unusable checkpoint file.
    """
    cands = _candidate_rows(task)
    if task.n <= 3:
        tdcaps = _totaldeg_caps(task)
        best, labeled, leaves, pruned, _ = _scan_python(task, cands, tdcaps)
        encs = []
        if best is not None and \
                task.objective is not Objective.COUNT_EXTREMAL:
            encs = _scan_python(task, cands, tdcaps, collect=True,
                                target=best)[4]
        return _finish_report(task, best, labeled, leaves, pruned, 1, encs)

    import numpy as np

    _set_threads(task.threads)
    shard_count = len(cands[0])
    partials = _checkpoint_load(task, shard_count)
    for shard in range(len(partials), shard_count):
        lane_vals, lane_cnts, lane_leaves, lane_pruned, _ = \
            _run_shard(task, cands, shard)
        value, count = _fold(task.objective,
                             zip(lane_vals.tolist(), lane_cnts.tolist()))
        partials.append({
            "value": value,
            "count": count,
            "leaves": int(lane_leaves.sum()),
            "pruned": int(lane_pruned.sum()),
        })
        _checkpoint_save(task, partials)

    best, labeled = _fold(task.objective,
                          ((p["value"], p["count"]) for p in partials))
    leaves = sum(p["leaves"] for p in partials)
    pruned = sum(p["pruned"] for p in partials)

    encs = []
    if best is not None and task.objective is not Objective.COUNT_EXTREMAL:
        for shard, p in enumerate(partials):
            if p["value"] != best:
                continue
            lane_vals, lane_cnts = _run_shard(task, cands, shard)[:2]
            lanes = len(lane_cnts)
            offs = np.zeros(lanes, dtype=np.int64)
            total = 0
            for lane in range(lanes):
                offs[lane] = total
                if lane_vals[lane] == best:
                    total += int(lane_cnts[lane])
            out = _run_shard(task, cands, shard, collect=1, target=best,
                             offs=offs, total=total)[4]
            encs.extend(int(e) for e in out[:total])
    _checkpoint_clear(task)
    return _finish_report(task, best, labeled, leaves, pruned,
                          shard_count, encs)


def _set_threads(threads):
    import numba

    limit = numba.config.NUMBA_NUM_THREADS
    numba.set_num_threads(max(1, min(threads, limit)))
