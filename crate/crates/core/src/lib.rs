//! Rational (m,n)-parking combinatorics.
//!
//! The crate covers parking words and the piecewise-linear action of words on
//! sorted integer points, (m,n)-invariant filters of `Z x Z`, filter tuples with
//! the area-side map `A` and dinv-side map `B`, the zeta and sweep maps with
//! their inverses, and the Anderson and Pak-Stanley labelings of the Sommers
//! region of the affine symmetric group.
//!
//! Every computation uses exact integers.

pub mod action;
pub mod affine;
mod arith;
pub mod error;
pub mod filter;
pub mod serial;
pub mod sweep;
pub mod tuple;
pub mod verify;
pub mod word;

pub use action::{OrbitOutcome, OrbitReport, Point, SolverConfig};
pub use affine::AffinePermutation;
pub use arith::{binomial, gcd, rational_catalan};
pub use error::{Error, Result};
pub use filter::{Filter, FilterKind};
pub use sweep::LabeledPath;
pub use tuple::{FilterTuple, QtTable, StatDomain};
pub use word::{FixClassification, Word, WordKind};
