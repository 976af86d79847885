//! Exact computations with free loops on surfaces with free fundamental
//! group: free-group words, ribbon-graph surfaces, garland classes and the
//! bracket and product on them.

pub mod checks;
pub mod error;
pub mod fgroup;
pub mod garlands;
pub mod graphcalc;
pub mod oracle;
pub mod sampling;
pub mod signcalc;
pub mod surface;

pub use error::{Error, Result};
pub use fgroup::{ConjugacyWitness, CyclicWord, Letter, Word};
pub use garlands::{GarlandElement, LabeledElement, Rational, TreeGarlandClass};
pub use graphcalc::{CircleRelabeling, GarlandGraph, Violation};
pub use oracle::SearchBounds;
pub use surface::{BandOrder, CrossingTerm, LoopSum, PairTerm, RibbonSurface};
