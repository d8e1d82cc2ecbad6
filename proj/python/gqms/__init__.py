"""Graph quantum magic squares: verification, pencils, separation certificates."""

from ._gqms import (
    BlockMatrix,
    ClassFlags,
    DilationProbeResult,
    DualCertificate,
    FeasibilityWitness,
    Graph,
    GraphCommuteResult,
    MagicReport,
    MembershipResult,
    MonicPencil,
    SdpOptions,
    SearchResult,
    SeparationOperator,
    ZeBasis,
    ZeVariant,
    arveson_dilation_probe,
    c4_automorphisms,
    classify,
    commutant_dimension,
    complete,
    counterexample_search,
    cycle,
    cycle_commutant_dim_formula,
    dual_certificate,
    evaluate_pencil,
    export_sdpa,
    from_permutation,
    graph_commutes,
    group_average,
    matrix_convex_combine,
    membership_test,
    monic_gqms_pencil,
    monic_qms_pencil,
    parse_graph_spec,
    primal_feasibility,
    random_qms,
    revalidate_certificate,
    separation_operator,
    verify_magic,
    z4_cycle_powers,
    ze_basis,
)

__all__ = [name for name in dir() if not name.startswith("_")]
