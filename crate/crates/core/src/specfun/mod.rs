//! Special-function kernel: Bessel `Jₗ` with derivatives, zeros of `Jₗ` and
//! `Jₗ′`, and the Gamma function. Everything here is a pure function.

mod bessel;
mod gamma;
mod roots;

pub use bessel::{bessel_j, bessel_j_deriv, bessel_j_orders, bessel_j_ratio, MAX_ARG, MAX_ORDER};
pub use gamma::gamma_fn;
pub use roots::{
    bessel_root, bessel_roots, internal_index, tabulated_index, BesselRoot, RootKind,
    MAX_ROOT_INDEX, MAX_ROOT_ORDER,
};

pub(crate) use bessel::{eval_d2j, eval_dj, eval_j};
pub(crate) use gamma::gamma_unchecked;
