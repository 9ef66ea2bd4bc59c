//! Combinatorics of languages of minimal subshifts with eventually constant
//! complexity growth: exit words, block densities, Rauzy graph evolution and
//! abstract loop itineraries.

pub mod abstract_graph;
pub mod density;
pub mod digraph;
pub mod error;
pub mod exit_words;
pub mod generators;
pub mod language;
pub mod rauzy;
pub mod word;

pub use error::{Error, Result};
pub use language::{LanguageOracle, Side};
pub use word::{Alphabet, Letter, Word};
