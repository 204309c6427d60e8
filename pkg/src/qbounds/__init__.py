"""qbounds: eigenvalue-sum bounds on graphs, checked to certificates.

The package computes Laplacian and signless-Laplacian spectra, quotient
matrices and interlacing reports for small graphs, and turns a collection
of degree-based eigenvalue-sum inequalities into executable checkers whose
results are uniform :class:`~qbounds.bounds.BoundCertificate` records.
Corpus sweeps (exhaustive small-graph enumeration or graph6 files) and a
command line front end live in :mod:`qbounds.search` and :mod:`qbounds.cli`.
"""

from .graphs import (
    Graph,
    Graph6Error,
    parse_graph6,
    to_graph6,
    read_graph6_lines,
    degree_sequence,
    is_connected,
    connected_components,
    is_bipartite,
    has_bipartite_component,
    induced_subgraph,
    boundary_counts,
)
from .linalg import (
    GUARD_BAND,
    SolverError,
    Spectrum,
    SymMatrix,
    RationalMatrix,
    RationalPoly,
    sym_eigenvalues,
    char_poly_exact,
    eval_poly,
    count_real_roots_above,
    count_real_roots_below,
)
from .spectra import (
    MatrixKind,
    PreconditionError,
    build_matrix,
    spectrum_of,
    oriented_incidence,
    edge_gram,
)
from .partitions import (
    DegenerateCaseError,
    VertexPartition,
    QuotientMatrix,
    quotient,
    quotient_spectrum,
    classify_partition,
    check_interlacing,
    check_vertex_removal_interlacing,
    check_edge_removal_interlacing,
    t1_quotient,
    t1_middle_term,
    edge_partition_quotient,
    augmented_edge_quotient,
)
from .families import (
    FamilyParams,
    UnsupportedRegimeError,
    make_family,
    make_named,
    extract_h,
    family_quotient,
    family_char_poly,
    family_spectrum_fillers,
)
from .bounds import (
    BoundCertificate,
    CSV_COLUMNS,
    HOLDS,
    HOLDS_WITH_EQUALITY,
    VIOLATED,
    INDETERMINATE,
    NOT_APPLICABLE,
    REGISTRY,
    classify_slack,
    resolve_checkers,
    default_checkers,
    schur_sum,
    grone_sum_L,
    q1_lower,
    q2_lower,
    main_q1q2,
    l_sum2,
    family_props,
    snplus_refutation,
    t1_sandwich,
    t1_equality_conditions,
    strict_sandwich,
    regular_corollary,
    independent_set_corollary,
    gm_qanalog,
)
