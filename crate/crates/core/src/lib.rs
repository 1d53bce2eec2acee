//! Formation residuals, quotient membership and F-subnormality for finite
//! permutation groups.
//!
//! Formations are described by chief factor functions: a group belongs to
//! the formation when every chief factor evaluates to 1. Residuals are
//! computed by peeling semisimple layers off the group from the top
//! ([`series`]), evaluating the function on each layer's minimal normal
//! subgroups ([`formations`]).

mod chain;
pub mod error;
pub mod formations;
pub mod group;
pub mod groupfile;
pub mod module_fp;
pub mod oracle;
pub mod params;
pub mod perm;
pub mod series;
pub mod subnormal;

pub use error::{Error, Result};
pub use group::{NormalSection, PermGroup};
pub use params::Params;
pub use perm::Permutation;
