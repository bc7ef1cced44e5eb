//! Exhaustive computation on orthomorphisms of small finite groups.
//!
//! A bijection `θ` of a finite group `G` is an *orthomorphism* when
//! `x ↦ x⁻¹θ(x)` is also a bijection; here all orthomorphisms are
//! normalised (`θ(e) = e`). Two orthomorphisms are *orthogonal* when
//! `x ↦ θ₁(x)⁻¹θ₂(x)` is a bijection, and the orthomorphism graph has
//! the orthomorphisms as vertices and orthogonality as adjacency.
//!
//! The crate provides Cayley-table groups ([`group::FiniteGroup`]),
//! orthomorphism enumeration and validation ([`ortho`]), the
//! orthogonality graph with clique and component analysis ([`graph`]),
//! the structure machinery special to ℤ₂×ℤ₄ ([`z2z4`]), a Latin-square
//! cross-check ([`latin`]) and a machine-checked statement catalog
//! ([`verify`]).

pub mod export;
pub mod graph;
pub mod group;
pub mod latin;
pub mod ortho;
pub mod verify;
pub mod z2z4;

pub use graph::{
    are_orthogonal, build_graph, clique_number, component_report, homology, lemma2_orthogonal,
    max_clique_size, ComponentReport, OrthGraph,
};
pub use group::{automorphisms, direct_product, FiniteGroup, GroupMap};
pub use latin::{latin_orthogonal, to_latin_square, LatinSquare};
pub use ortho::{
    check_lemma1, complete_mapping, enumerate_orthomorphisms, is_orthomorphism, order_partition,
    OrderPartition, Orthomorphism, DEFAULT_MAX_ORDER,
};
pub use z2z4::{
    alpha_of, classify_form, construct_form, four_cycle_of, intersection_adjacency,
    predicted_partners, CycleForm, Form,
};

/// Errors surfaced by constructors and bounded enumerations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("group order must be at least 1")]
    EmptyGroup,
    #[error("table is not a Latin square: {0}")]
    NotLatin(String),
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("index 0 is not a two-sided identity")]
    BadIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("order {order} exceeds the enumeration bound {bound}")]
    BoundExceeded { order: usize, bound: usize },
    #[error("not an orthomorphism: {0}")]
    NotOrthomorphism(String),
    #[error("not a group automorphism: {0}")]
    NotAutomorphism(String),
    #[error("cycle form constraint violated: {0}")]
    FormConstraint(String),
    #[error("element order {0} outside {{1, 2, 4}}; order partition undefined")]
    UnsupportedOrder(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
