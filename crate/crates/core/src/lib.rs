//! Exact arithmetic for higher derivatives of `(f∘φ)·(g∘φ^(s))`.
//!
//! The crate computes the generalized Faà di Bruno coefficients
//! `C_{λ,r}^{(s)} = n!·e_r((λ^{>s})_s) / ∏ (i!)^{m_i} m_i!`, assembles the
//! resulting derivative expansions, and builds the modified Bell polynomials
//! and modified Stirling numbers of the second kind that come out of them.
//!
//! Every closed formula has an independent route next to it:
//!
//! - [`diffalg`] differentiates `F_0·G_0` symbolically, term by term;
//! - [`poly`] instantiates `f`, `g`, `φ` as exact rational polynomials;
//! - [`coefficients::RecurrenceMemo`] rebuilds each coefficient from the
//!   one-step recurrence instead of the closed form.
//!
//! [`verify`] runs all of these comparisons as one suite.

pub mod bell;
pub mod coefficients;
pub mod diffalg;
mod error;
pub mod exec;
pub mod exponents;
pub mod partition;
pub mod poly;
pub mod symmetric;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
pub use partition::{Cap, Multiset, Partition};
