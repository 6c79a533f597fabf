//! Exact arithmetic: Gaussian rationals, τ-Laurent polynomials, truncated
//! λ-series, rational functions of u, and nilpotent polynomial rings.

pub mod bernoulli;
pub mod lambda;
pub mod nilpotent;
pub mod qfun;
pub mod scalar;
pub mod tau;
pub mod upoly;

pub use bernoulli::bernoulli;
pub use lambda::{sin_expand, LambdaSeries};
pub use nilpotent::{NilpotentPoly, Ring};
pub use qfun::{qfun_to_lambda, QFunction};
pub use scalar::{fmt_q, parse_q, q, qf, ExactScalar, Q};
pub use tau::TauLaurent;
pub use upoly::UPoly;
