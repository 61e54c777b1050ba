//! Modified Macdonald polynomials `H~_mu` and the operators diagonal in
//! their basis.

mod constants;
mod engine;
mod htilde;
mod starform;

pub use constants::{b_mu, mac_constants, pi_mu, qpoch, t_mu, MacConstants};
pub use engine::{Engine, EngineConfig, MacExpansion};
pub use htilde::{axiom_violations, compute_htilde, htilde_monomial, HtildeStore, FORMAT_VERSION};
