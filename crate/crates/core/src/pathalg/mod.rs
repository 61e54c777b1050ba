//! The Dyck path algebra acting on `V_k = Lambda[y_1, ..., y_k]`.

mod algebra;
mod mstar;

pub use algebra::{GammaConvention, HeckeNormalization, PathAlgebra, USeries, VkElement, GAMMA, HECKE};
pub use mstar::MSTAR_FORMAT_VERSION;
