//! Degree-zero garland classes over the rationals and the operations on them.

mod class;
mod element;
mod ops;

pub use class::{class_equal, equivalent_up_to_relabeling, TreeGarlandClass};
pub use element::{GarlandElement, LabeledElement, Rational};
pub use ops::{
    a_op, alpha_merge, chord_diagram_class, epsilon_raw, lie_bracket, loop_class,
    min_intersection_number, pair_element, star, ChordDiagram, ElementRecord, MinIntersection,
    TermRecord,
};
