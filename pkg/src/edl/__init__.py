"""edl: extremal digraphs given order and radius.

Dense small-order digraphs, distance invariants, the named extremal
families, closed-form size bounds, exhaustive constrained search, and
theorem verification at small orders.
"""

__version__ = "0.1.0"

from edl.core import (
    CANON_MAX_N,
    DenseDigraph,
    ParseError,
    VertexPartition,
    arcs,
    bidirected_clique,
    bidirected_cycle,
    blow_up,
    canonical_form,
    complement,
    directed_cycle,
    empty_digraph,
    from_adm,
    from_arc_list,
    from_json,
    from_json_obj,
    intersect,
    is_bipartite,
    is_isomorphic,
    is_symmetric,
    remove_vertex,
    reverse,
    to_adm,
    to_dot,
    to_json,
    to_json_obj,
)
from edl.families import (
    BoundName,
    FamilyKind,
    FamilySpec,
    bip_cycle_blowup,
    bip_cycle_blowup_is_extremal,
    bip_digraph_extremal,
    bip_digraph_extremal_is_extremal,
    bip_digraph_extremal_partition,
    closed_form,
    construct_family,
    d_2r_r_1,
    d_nrs,
    d_nrs_bipartite,
    d_nrs_bipartite_partition,
    g_nrs,
    gamma_bar,
    gamma_bar_blowup,
    gamma_star,
    gamma_star_blowup,
)
from edl.metrics import (
    MetricSummary,
    check_bipartite_degree_bound,
    check_outradius_degree_bound,
    clique_number,
    distance_matrix,
    is_strong,
    metric_summary,
    summary_to_json_obj,
)
from edl.search import (
    CheckpointError,
    Constraints,
    ExtremalCertificate,
    Objective,
    SearchMode,
    SearchReport,
    SearchTask,
    classify_extremal,
    enumerate_task,
    make_certificate,
    report_to_json_obj,
    satisfies_constraints,
    task_fingerprint,
    verify_witness,
    witness_problems,
)
from edl.structure import (
    LayerProfile,
    claim_optimal_profiles,
    extract_bidirected_biclique,
    is_distance_preserving_removal,
    maximize_chain,
)
from edl.verify import (
    CheckId,
    Depth,
    TheoremCheck,
    VerificationReport,
    Verdict,
    list_checks,
    verify_theorem,
    write_report,
)
