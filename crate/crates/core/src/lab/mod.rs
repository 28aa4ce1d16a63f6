//! Symmetry analysis of graphs under permutation group actions.

mod action;
mod automorphisms;
mod lemmas;
mod normal;
mod report;
mod witness;

pub use action::{
    arc_orbit_arcs, arc_pairing, certify_action, local_action, orbit_decomposition, pi,
    transitivity_profile, ArcPairing, CertifiedAction, LocalAction, LocalActionSummary,
    ObjectKind, OrbitDecomposition, Pairing, TransitivityProfile,
};
pub use automorphisms::{graph_automorphisms, AutomorphismResult, DEFAULT_AUT_VERTEX_CAP};
pub use lemmas::{verify_structure_lemmas, LemmaCheck, LemmaId, LemmaStatus};
pub use normal::{
    classify_normal_subgroup, recheck_paired_partition, CaseTag, NormalClassification,
    PairedPartition,
};
pub use witness::{find_arc_witness, recheck_arc_witness, ArcWitness};
pub use report::{
    analyze, AnalysisOptions, AnalysisReport, AutomorphismSummary, ClaimResult, DeltaLemmas,
    NamedGroup, NormalReport, OrbitSubgraph, PiSets, ShapeCount,
};
