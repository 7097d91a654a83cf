//! Ferrers functions of large degree and order through uniform asymptotic
//! expansions in parabolic cylinder functions.
//!
//! The library evaluates `P_ν^{-μ}(x)` and `Q_ν^{-μ}(x)` on `(-1, 1)` for
//! `μ = sqrt(1 - a²)(ν + ½)`, a regime with two turning points at `x = ±a`
//! that coalesce as `a → 0`. Everything runs on MPFR-backed extended precision.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`numerics`] | precision context, complex arithmetic, quadrature, root finding, log-gamma |
//! | [`tpgeom`] | parameters, the Liouville–Green variable ξ and the comparison variable ζ |
//! | [`coeffs`] | exact rational coefficient polynomials and the `d` constants |
//! | [`pcf`] | parabolic cylinder functions `U`, `V` and their derivatives |
//! | [`legendre`] | the slowly varying coefficients 𝒜, ℬ and the Ferrers evaluations |
//! | [`oracle`] | independent reference implementations used for checking |
//!
//! # Example
//!
//! ```
//! use ferrers::numerics::Ctx;
//! use ferrers::tpgeom::Params;
//! use ferrers::legendre::eval_p;
//! use ferrers::oracle::ferrers_p_ref;
//!
//! let ctx = Ctx::new(40);
//! let p = Params::from_strs(ctx, "50", "0.5").unwrap();
//! let x = ctx.parse("0.2").unwrap();
//! let asym = eval_p(&p, &x, 4).unwrap();
//! let exact = ferrers_p_ref(&p, &x).unwrap();
//! let rel = ((asym - &exact) / exact).abs();
//! assert!(rel < 1e-14);
//! ```

pub mod coeffs;
mod error;
pub mod legendre;
pub mod numerics;
pub mod oracle;
pub mod pcf;
pub mod tpgeom;

pub use error::{Error, Result};
