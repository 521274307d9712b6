//! Exact arithmetic for three q-deformed polynomial families and their
//! oscillator structure.
//!
//! The families are
//! - q-Gaussian polynomials `φ_n(x) = ∏_{k<n} (x − q^k)`,
//! - q-factorial polynomials `φ̂_n(x) = ∏_{k<n} [x − k]_q`, stored as polynomials in `u = q^x`,
//! - Hahn factorial polynomials `φ̇_n(x) = ∏_{k<n} (x − [k]_q ω)`.
//!
//! Every quantity is an exact rational once the deformation parameters are
//! rational. The only approximations in the crate are explicit truncations of
//! infinite products and sums, and those always report a rigorous tail bound.
//!
//! Module map:
//! - [`qkernel`]: q-integers, q-factorials, q-binomials, q-Pochhammer symbols, exact half-integer powers.
//! - [`qseries`]: truncated power series, deformed exponentials, generating-function series.
//! - [`poly`]: dense univariate polynomials over the rationals.
//! - [`polyfamilies`]: family constructions, basis conversions, position-operator coefficients.
//! - [`operators`]: difference operators and ladder triples for each family.
//! - [`matrixelements`]: closed-form matrix elements, `U` polynomials and a brute-force oracle.
//! - [`hahncalc`]: Hahn derivative, integral and exponential.
//! - [`verify`]: identity suites producing a [`verify::VerificationReport`].

pub mod error;
pub mod hahncalc;
pub mod matrixelements;
pub mod operators;
pub mod poly;
pub mod polyfamilies;
pub mod qkernel;
pub mod qseries;
pub mod verify;

pub use error::{Error, Result};
pub use poly::{Poly, Var};
pub use polyfamilies::{Basis, Construction, FamilyVector};
pub use qkernel::{HalfInt, QContext, Scalar};
pub use qseries::TruncSeries;
