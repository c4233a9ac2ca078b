//! Support tau-tilting posets of bound quiver algebras, computed on the
//! two-term silting side.
//!
//! The pipeline: build a finite-dimensional algebra `kQ/I` with an exact
//! normal-form basis ([`algebra`]), enumerate its two-term silting complexes
//! by left mutation ([`mutation`]), and analyse the resulting poset
//! ([`poset`]). The [`typea`] interval model provides an independent
//! combinatorial oracle for linearly ordered quivers, and [`extension`]
//! cross-checks the split-by-nilpotent lift between an algebra and its
//! loop-free core. File formats and the command-line surface live in
//! [`parse`] and [`output`].

pub mod algebra;
pub mod complexes;
pub mod extension;
pub mod linalg;
pub mod mutation;
pub mod output;
pub mod parse;
pub mod poset;
pub mod quiver;
pub mod typea;
