//! Exact arithmetic for the degenerate Cauchy numbers and polynomials of the
//! second kind, `C_{n,λ}(x)`, defined by
//!
//! ```text
//! t / log(1 + L(t)) · (1 + L(t))^x = Σ C_{n,λ}(x) tⁿ/n!,   L(t) = log(1 + λt)/λ
//! ```
//!
//! together with the classical and degenerate sequences they are tied to,
//! and a registry of identities that is checked symbolically in ℚ[λ, x].
//!
//! ```
//! use dcl_core::{sequences, BiPoly};
//!
//! let c2 = sequences::degen_cauchy2(2);
//! assert_eq!(c2.to_string(), "x^2 - 1/6 - 1/6*l^2");
//! ```

pub mod error;
pub mod identities;
pub mod ring;
pub mod sequences;
pub mod series;

pub use error::{Error, Result};
pub use identities::{IdentityReport, IdentitySpec, VariantLabel, VariantSelection};
pub use ring::{BiPoly, Coeff, Rational};
pub use sequences::{GfId, SequenceId, SequenceValue};
pub use series::{build_e, build_l, Series};
