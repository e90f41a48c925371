pub mod gradedlin;
pub mod forms;
pub mod homot;
pub mod intl;
pub mod linf;
pub mod simpset;
pub mod stringmod;
pub mod scalar;

pub use scalar::{Scalar, ScalarError, ScalarField};
