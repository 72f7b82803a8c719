//! Exact computations on normal affine surfaces with a C*-action, described
//! by pairs of Q-divisors on the affine line.
//!
//! Module map:
//! - [`exactmath`]: rationals, polynomials, rational functions;
//! - [`divisor`]: Q-divisors, pairs, normal forms and equivalences;
//! - [`dpdring`]: graded pieces, membership, cyclic-cover presentations;
//! - [`lnd`]: homogeneous locally nilpotent derivations;
//! - [`classify`]: invariants, singularities, model recognition;
//! - [`catalog`]: named surfaces with known facts;
//! - [`element`]: the textual syntax for graded elements.

pub mod catalog;
pub mod classify;
pub mod divisor;
pub mod dpdring;
pub mod element;
pub mod error;
pub mod exactmath;
pub mod lnd;

pub use divisor::{AffineMap, DivisorPair, Point, QDivisor};
pub use dpdring::{GradedElement, Presentation, SurfaceSpec};
pub use error::{Error, Result, Violation};
pub use exactmath::{Poly, Rat, RatFunc};
pub use lnd::{DegreeSet, Lnd};
