//! Lazy-transposition shuffles of the symmetric group: constructions, exact
//! verification, reduced-word machinery, and minimum-length search.
//!
//! A *lazy transposition* `(a, b, p)` swaps positions `a` and `b` with
//! probability `p`.  A sequence of independent lazy transpositions is a
//! *transposition shuffle* when its composition is exactly uniform on `S_n`.
//! This crate builds such shuffles from reduced words, sweeps, and a
//! divide-and-conquer scheme with Bernoulli-factorized bridge probabilities,
//! certifies candidates bit-exactly with rational arithmetic, and searches
//! general transposition networks for short shuffles.

pub mod constructions;
pub mod diagram;
pub mod dist;
pub mod document;
pub mod error;
pub mod perm;
pub mod prob;
pub mod search;
pub mod shuffle;
pub mod verify;
pub mod words;

pub use dist::ExactDistribution;
pub use error::{Error, Result};
pub use perm::Permutation;
pub use prob::{Mode, Prob};
pub use shuffle::{LazyTransposition, OutcomeVector, Shuffle};
pub use words::ReducedWord;
