pub mod class;
pub mod classifier;
pub mod cli;
pub mod dpoint;
pub mod error;
pub mod gf2;
pub mod manifolds;
pub mod mo;
pub mod qmo;
pub mod sq;

pub use classifier::{classify, hurewicz_profile, ClassificationReport, Verdict};
pub use error::{Error, Result};
