//! One-round colour reduction on paths and cycles.
//!
//! A *colourful collection* over the palette `[c]` is a sequence of set
//! families in which every family is pairwise intersecting and every two
//! distinct families contain a disjoint cross pair. Such a collection of
//! size `k` is the same thing as a symmetric one-round algorithm `k ▷ c`:
//!
//! - [`collection`] builds and checks collections, including the explicit
//!   doubly-exponential construction `2^(s/2) + c ▷ c`.
//! - [`compiler`] turns a collection into an algorithm and back.
//! - [`simulator`] runs synchronous rounds on paths and cycles, plus the
//!   naive and Cole–Vishkin baselines.
//! - [`search`] brute-forces small palettes as an independent oracle.
//! - [`format`] holds the file formats.

pub mod collection;
pub mod compiler;
mod error;
pub mod format;
pub mod search;
pub mod simulator;

pub use collection::{
    base_collection_c3, check_p1, check_p2, construct, is_colourful, pair_split, verify_sampled,
    Collection, Colourfulness, ComplementPair, Family,
    Subset,
};
pub use compiler::{
    check_properness, check_symmetry, edge_label_pair, example_4to3, extract, new_colour,
    tabulate, AlgorithmTable, Counterexample, ImplicitAlgorithm, OneRound,
};
pub use error::{Error, Result};
pub use search::{exists_algorithm, max_colourful, Existence, SearchResult};
pub use simulator::{run_chain, step, ChainTrace, ColouredGraph, Topology};

/// Input colours are arbitrary-precision positive integers.
pub type Colour = num_bigint::BigUint;
