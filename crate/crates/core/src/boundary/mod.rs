//! Boundary families `r(θ; λ)` expanded order by order about the
//! equal-area circle.

mod curve;
mod families;
mod fourier;
mod quadrature;
mod spec;

pub use curve::{Circle, EllipseSpec, StarCurve, SupercircleSpec, Symmetry, TrigCurve};
pub use families::{
    ellipse_boundary, fourier_order2_numeric, fourier_orders_numeric, numeric_boundary,
    supercircle_boundary, supercircle_c4_second_order, supercircle_first_order_coefficient,
    NumericExpansion, DEFAULT_N_MAX, SUPERCIRCLE_NODES, MAX_ELLIPSE_LAMBDA, MAX_SUPERCIRCLE_DEFORMATION,
};
pub use fourier::{
    validate_equal_area, EqualAreaReport, FourierBoundary, FourierOrder, Provenance,
    EQUAL_AREA_FLAG,
};
pub use quadrature::{equal_area_radius, periodic_mean, project, DEFAULT_NODES, MIN_AREA_NODES};
pub use spec::{BoundarySpec, Coefficients, ResolvedBoundary};
