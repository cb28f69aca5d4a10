//! Exact codimension sequences and complexity functions of varieties of
//! Lie and Poisson algebras.
//!
//! The crate has four layers:
//!
//! * [`series`] — truncated exponential generating functions over
//!   arbitrary-precision rationals: product, exp/log, integration,
//!   coefficientwise dominance, overflow-safe real evaluation.
//! * [`catalog`] — closed-form and recurrence-defined complexity functions
//!   for a catalog of named varieties (associative, commutative, Lie,
//!   Poisson, nilpotent, metabelian, centre-by-metabelian, the mixed-identity
//!   Poisson varieties W_s, and the two towers of iterated exponentials),
//!   plus the coefficientwise bound generators and the exact
//!   floor(e·(n−1)!) lower-bound check.
//! * [`words`] — brute-force combinatorial oracles on multilinear words:
//!   regular words, m-Lie (in)decomposability, the relaxed tilde-tower
//!   recursion, Kuzmin elements, and the free-Poisson multilinear basis
//!   count. Everything here is independent of the series engine, so the
//!   two sides can cross-validate each other.
//! * [`growth`] — log-space growth diagnostics: iterated logarithms, the
//!   subfactorial scale, the coefficient-side order/type diagnostic, and
//!   closed-form tower growth ratios.
//!
//! A comprehensive guide with worked examples lives in `book/`; every code
//! snippet there is compiled and run by the `codim-book` doc-test shim.
//!
//! ```
//! use codim::catalog::{complexity, VarietySpec};
//!
//! // The variety of Poisson algebras with {X1,X2}·{X3,X4} ≡ 0: the first
//! // coefficient to drop below 1 is a_4 = 7/8.
//! let w2 = complexity(&VarietySpec::MixedW(2), 5).unwrap();
//! assert_eq!(w2.coeff(4), &codim::rational::rat(7, 8));
//! ```

pub mod catalog;
pub mod growth;
pub mod rational;
pub mod series;
pub mod words;

pub use rational::Rational;
pub use series::{CodimSequence, EgfSeries};
