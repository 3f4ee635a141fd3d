//! Exact verification toolkit for plane sextics with Hessian symmetry and
//! their Galois twists.
//!
//! The crate builds number-field towers with exact element arithmetic,
//! constructs the Huggins family of smooth plane sextics invariant under the
//! order-18 Hessian group, and machine-checks every claim that admits a
//! finite computation: smoothness (by good-reduction probing and by exact
//! elimination), the 18 automorphisms, validity and nontriviality of the
//! descent cocycle, norm obstructions, and the quaternion-embedding
//! criterion. Results aggregate into a deterministic JSON certificate.
//!
//! Heavy inner loops (invariance sweeps, cocycle pair checks, witness
//! searches) run on rayon when the default `parallel` feature is enabled and
//! fall back to plain iteration otherwise.

pub mod arith;
pub mod curves;
pub mod descent;
pub mod error;
pub mod exec;
pub mod field;
pub mod finite;
pub mod hessian;
pub mod serialize;
pub mod smooth;
pub mod ternary;
pub mod tower;

mod bipoly;
mod upoly;
mod zerodim;

pub use error::{Error, Result};
pub use tower::{TowerAutomorphism, TowerElement, TowerSpec};

/// Serialization format version stamped into every JSON artifact.
pub const FORMAT_VERSION: u32 = 1;
