//! Symmetric functions over a pluggable coefficient ring.
//!
//! Everything is stored in the power-sum basis, where products, the Hall
//! pairing, `omega`, `perp` and plethysm are diagonal or monomial. The other
//! classical bases are reached through per-degree transition matrices.

mod basis;
mod partition;
mod plethysm;
mod serial;
mod sym;

pub use basis::{invert, Basis, BasisCache, DegreeTables, RatMatrix};
pub use partition::{compositions, partitions, CellStats, Composition, Partition};
pub use plethysm::{
    eval_finite, m_const, plethysm, power_sum_plethysm, scale_alphabet, star, Alphabet, SymPoly,
};
pub use sym::SymFunc;

use crate::coeffring::{QtRat, ScalarCtx};

/// `omega-bar`: `F[X; q, t] -> F[-X; 1/q, 1/t]`.
pub fn omegabar(f: &SymFunc<QtRat>) -> SymFunc<QtRat> {
    f.negate_alphabet().map_coeffs(QtRat::invert_vars)
}

/// `omega-bar` of a function whose coefficients were computed in
/// `ctx.inverted()`; in exact mode this is [`omegabar`].
pub fn omegabar_from_inverted<K: ScalarCtx>(ctx: &K, f: &SymFunc<K::S>) -> SymFunc<K::S> {
    f.negate_alphabet().map_coeffs(|c| ctx.invert_value(c))
}
