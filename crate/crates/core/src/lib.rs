//! Finite-state automata for reduced words in affine Weyl groups, built from
//! the regions of extended Shi arrangements, and their use for describing
//! Kazhdan-Lusztig cells as regular languages on length-bounded balls.
//!
//! All computation is exact: roots and alcoves use integer data, points of
//! the ambient space use `i64` rationals.

pub mod alcove;
pub mod arrangement;
pub mod automaton;
pub mod cells;
pub mod error;
pub mod kl;
pub mod rootsys;

pub use alcove::{AffineWeylGroup, Ball, BruhatOrder, Element, GeneratorSet, Word};
pub use arrangement::ArrangementSpec;
pub use automaton::Automaton;
pub use error::{Error, Result};
pub use kl::{CellDecomposition, KlTable, Side, WGraph};
pub use rootsys::{Family, RootLength, RootSystem, SignedRoot};
