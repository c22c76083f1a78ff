//! Weighted composition operators `W f = ψ·(f∘φ)` with affine symbols
//! `φ(z) = a + λz` on the Fock spaces `F^p_α`.
//!
//! * [`complexfn`]: the multiplier and test-function forms, with growth data.
//! * [`fockspace`]: spaces, norms, kernels and membership.
//! * [`wcomp`]: the operator, `M_z`, the classifier, adjoints and squaring.
//! * [`iterates`]: closed-form powers `Wⁿ` and their rank-one limit.
//! * [`dynamics`]: evidence reports for non-supercyclicity.

pub mod complexfn;
pub mod dynamics;
pub mod error;
pub mod fockspace;
pub mod iterates;
pub mod json;
pub mod logspace;
pub mod quadrature;
pub mod wcomp;

pub use complexfn::{EntireFunction, ExpQuadratic, PolyTimesExpQuad, TailRule, TaylorSeries, C64};
pub use error::{FockError, Result};
pub use fockspace::{Exponent, Flavor, FockContext, NormResult};
pub use wcomp::{AffineSymbol, Classification, Verdict, WeightedCompOp};
