//! Exact combinatorics of Nakajima quiver varieties: root systems and the
//! symmetrized Tits form, weight multiplicities, explicit highest-weight and
//! Fock-space models, wall and chamber arrangements, and the predicted
//! counts of finite-dimensional irreducible representations of quantized
//! quiver varieties.
//!
//! All arithmetic is exact (arbitrary-precision rationals); nothing in this
//! crate touches floating point.

pub mod comb;
pub mod error;
pub mod fock;
pub mod hw;
pub mod linalg;
pub mod partition;
pub mod quiver;
pub mod rat;
pub mod subalgebra;
pub mod walls;
pub mod weights;

pub use error::{Error, Result};
pub use quiver::{Quiver, QuiverClass, QuiverType, Root, RootKind};
pub use rat::Rat;

/// Library version, echoed into every CLI report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
