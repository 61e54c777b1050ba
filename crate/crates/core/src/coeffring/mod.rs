//! Exact coefficient arithmetic: `Z[q, t]`, its fraction field, a prime field
//! for evaluated checks, and auxiliary-variable polynomials.

mod auxpoly;
mod gcd;
mod modp;
mod poly;
mod rat;
mod scalar;
mod upoly;

pub use auxpoly::{q_pochhammer, y_vars, AuxPoly, AuxVar};
pub use gcd::{div_exact, gcd_poly, lcm_poly};
pub use modp::Fp;
pub use poly::{Mono, QtPoly};
pub use rat::QtRat;
pub use scalar::{ExactCtx, ModCtx, Mode, Scalar, ScalarCtx};
