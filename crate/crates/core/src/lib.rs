//! Weighted posets, calibrated edge functions and the chain representations they
//! carry: the operators `T_i`, `z_i`, `d_±` on spans of good chains.

pub mod chains;
pub mod edge;
pub mod error;
pub mod posets;
pub mod rep;

pub use chains::GoodChain;
pub use edge::EdgeFunction;
pub use error::{Assumption, Error, Result};
pub use posets::WeightedPoset;
pub use rep::{build_rep, Representation};
