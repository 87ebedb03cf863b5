//! Exact arithmetic and derivative spectra for functions over small finite fields.
//!
//! The crate models functions `F : GF(p^n) -> GF(p^n)` as lookup tables and
//! provides:
//!
//! * [`field`] — arithmetic in `GF(p^n)` (order up to 2^20) with discrete-log
//!   multiplication tables and a deterministic default modulus,
//! * [`func`] — function construction (monomials, univariate polynomials, raw
//!   tables), algebraic degree, and preimage statistics,
//! * [`deriv`] — multiplicative c-derivatives `x -> F(x+a) - c*F(x)`, their
//!   higher-order extensions by two independent evaluation strategies, and
//!   checkers for the structural identities they satisfy,
//! * [`spectrum`] — exhaustive solution-count spectra and the t-order
//!   c-differential uniformity, with deterministic parallel search,
//! * [`cases`] — ready-made surveys: the multiplicative-inverse function in
//!   characteristic 2, Gold power maps `x^{p^k+1}`, and quadratic functions
//!   with coefficients structured over a subfield,
//! * [`report`] — stable JSON and CSV rendering of search results.
//!
//! All element values are canonical integer indices: the element with
//! polynomial coordinates `c_0 + c_1 x + ... + c_{n-1} x^{n-1}` over `GF(p)`
//! has index `sum c_i p^i`. Every report echoes the field, modulus, and this
//! encoding so emitted indices are unambiguous.

pub mod cases;
pub mod deriv;
pub mod field;
pub mod func;
pub mod report;
pub mod spectrum;

pub use cases::CaseError;
pub use deriv::{DerivError, DerivativeSpec};
pub use field::{FieldElement, FieldError, FieldSpec};
pub use func::{FieldFunction, FuncError, FunctionOrigin};
pub use spectrum::{SearchOptions, ShiftDomain, SpectrumError, SpectrumReport};
