//! Method of particular solutions: boundary/interior collocation of the
//! Fourier–Bessel trial space and the subspace-angle residual `σ(k)`.

use nalgebra::{DMatrix, RealField};

use super::classes::SymmetryClass;
use crate::boundary::StarCurve;
use crate::mode::{BoundaryCondition, Parity};
use crate::scalar::Real;
use crate::specfun::bessel_j_orders;

/// Collocation points of one symmetry class.
#[derive(Debug, Clone)]
pub(crate) struct Collocation<T> {
    /// `(r, θ, unit normal (n_r, n_θ))` on the boundary.
    pub boundary: Vec<(T, T, T, T)>,
    pub interior: Vec<(T, T)>,
}

/// Van der Corput radical inverse in `base`.
fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut inv = 1.0 / base as f64;
    let mut out = 0.0;
    while i > 0 {
        out += (i % base) as f64 * inv;
        i /= base;
        inv /= base as f64;
    }
    out
}

pub(crate) fn collocation<T: Real, C: StarCurve<T> + ?Sized>(
    curve: &C,
    class: &SymmetryClass,
    boundary_points: usize,
    interior_points: usize,
) -> Collocation<T> {
    let width = T::TAU() / T::from_int(class.sectors as i64);
    let m = T::from_int(boundary_points as i64);
    let boundary = (0..boundary_points)
        .map(|i| {
            let th = (T::from_int(i as i64) + T::lit(0.5)) * width / m;
            let r = curve.radius(th);
            let dr = curve.radius_derivative(th);
            // outward normal ∝ r e_r − r′ e_θ
            let norm = (r * r + dr * dr).sqrt();
            (r, th, r / norm, -dr / norm)
        })
        .collect();
    let interior = (1..=interior_points as u64)
        .map(|i| {
            let th = T::lit(radical_inverse(i, 2)) * width;
            let s = T::lit(0.9 * radical_inverse(i, 3).sqrt());
            (s * curve.radius(th), th)
        })
        .collect();
    Collocation { boundary, interior }
}

/// Collocation matrix: boundary rows (value or scaled normal derivative)
/// stacked over interior rows, one column per basis function.
pub(crate) fn assemble<T: Real>(
    pts: &Collocation<T>,
    bc: BoundaryCondition,
    basis: &[(u32, Parity)],
    k: T,
) -> DMatrix<T> {
    let max_p = basis.iter().map(|b| b.0).max().unwrap_or(0) as usize;
    let rows = pts.boundary.len() + pts.interior.len();
    let mut a = DMatrix::<T>::zeros(rows, basis.len());
    let half = T::lit(0.5);
    for (i, &(r, th, nr, nt)) in pts.boundary.iter().enumerate() {
        let j = bessel_j_orders(max_p + 1, k * r);
        for (col, &(p, parity)) in basis.iter().enumerate() {
            let pf = T::from_int(p as i64);
            let (s, c) = (pf * th).sin_cos();
            let (ang, dang) = match parity {
                Parity::Cos => (c, -pf * s),
                Parity::Sin => (s, pf * c),
            };
            let jp = j[p as usize];
            a[(i, col)] = match bc {
                BoundaryCondition::Dirichlet => jp * ang,
                BoundaryCondition::Neumann => {
                    let djp = if p == 0 { -j[1] } else { half * (j[p as usize - 1] - j[p as usize + 1]) };
                    // (n_r ∂_r + n_θ r⁻¹ ∂_θ) ψ / k
                    nr * djp * ang + nt * jp * dang / (k * r)
                }
            };
        }
    }
    let off = pts.boundary.len();
    for (i, &(r, th)) in pts.interior.iter().enumerate() {
        let j = bessel_j_orders(max_p, k * r);
        for (col, &(p, parity)) in basis.iter().enumerate() {
            let (s, c) = (T::from_int(p as i64) * th).sin_cos();
            let ang = match parity {
                Parity::Cos => c,
                Parity::Sin => s,
            };
            a[(off + i, col)] = j[p as usize] * ang;
        }
    }
    a
}

/// Smallest singular value of the boundary block of an orthonormal basis of
/// the column space, after dropping numerically dependent directions.
/// Returns `(σ, retained rank)`.
pub(crate) fn subspace_sigma<T: RealField + Copy>(mut a: DMatrix<T>, boundary_rows: usize) -> (T, usize) {
    let tiny = T::default_epsilon();
    for mut col in a.column_iter_mut() {
        let scale = col.amax();
        if scale > T::zero() {
            col /= scale;
        }
    }
    let svd = a.svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let smax = svd.singular_values.max();
    let cutoff = smax * tiny * nalgebra::convert::<f64, T>(100.0);
    let keep: Vec<usize> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s > cutoff)
        .map(|(i, _)| i)
        .collect();
    let rank = keep.len();
    if rank == 0 {
        return (T::one(), 0);
    }
    let qb = DMatrix::from_fn(boundary_rows, rank, |i, j| u[(i, keep[j])]);
    let s = qb.singular_values();
    (s.min(), rank)
}

/// `σ(k)` for one class.
pub(crate) fn sigma<T: Real + RealField>(
    pts: &Collocation<T>,
    bc: BoundaryCondition,
    basis: &[(u32, Parity)],
    k: T,
) -> (T, usize) {
    let a = assemble(pts, bc, basis, k);
    subspace_sigma(a, pts.boundary.len())
}
