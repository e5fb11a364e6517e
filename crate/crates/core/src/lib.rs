pub mod cli;
pub mod curve;
pub mod divisor;
pub mod equivalence;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod gonality;
pub mod harmonic;
pub mod image_tree;
pub mod linear_system;
pub mod plfunc;
pub mod rational;
pub mod trop_linalg;
