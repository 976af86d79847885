//! Shared inputs for the benchmarks.

use garland_core::fgroup::conjugacy_class;
use garland_core::{CyclicWord, Word};

pub fn word(s: &str) -> Word {
    s.parse().expect("benchmark word")
}

pub fn loop_class(s: &str) -> CyclicWord {
    conjugacy_class(&word(s))
}
