//! Exact machine verification for finite combinatorial 2-complexes and
//! their coverings: complex validation, vertex links, cell merging,
//! cellular covering maps, permutation-voltage covers with bounded
//! common-cover search, group presentations with certificate-checked Tietze
//! transformations, Reidemeister-Schreier rewriting, and Smith normal form
//! abelianization — plus a catalog of fixed complexes and scripted
//! verification pipelines over them.

pub mod ball;
pub mod catalog;
pub mod complex;
pub mod covering;
pub mod error;
pub mod io;
pub mod iso;
pub mod presentation;
pub mod report;
pub mod rschreier;
pub mod snf;
pub mod tietze;
pub mod tree;
pub mod voltage;
pub mod witness;
pub mod word;

pub use ball::{bs_ball, covering_to_k, covering_to_l, BsBall, KRuleVariant};
pub use catalog::{complex_bs, complex_k, complex_l, presentation_bs, presentation_k};
pub use complex::{standard_complex, BoundaryWord, Cell, Edge, SignedEdge, TwoComplex};
pub use covering::{verify_covering, CellularMap};
pub use iso::{apply_isomorphism, complex_isomorphic, CellImage, CellIsomorphism};
pub use presentation::{abelian_invariants, pi1_from_complex, rename_isomorphic, Presentation};
pub use report::{Finding, Severity, VerificationReport};
pub use rschreier::{index_check, subgroup_presentation, CyclicHom};
pub use tietze::{
    auto_simplify, find_certificate, tietze_apply, verify_certificate, CertFactor, Certificate,
    SearchBounds, TietzeMove,
};
pub use tree::{labeled_tree_ball, Color, LabeledTree};
pub use voltage::{build_cover, enumerate_covers, search_common_cover, Perm, Voltage};
pub use witness::{
    bundled_tietze_scripts, commensurability_witness, h_pipeline, ht_pipeline, TietzeScript,
};
pub use word::{cyclic_reduce, free_reduce, substitute, Letter, Word};
