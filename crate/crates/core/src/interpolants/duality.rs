use serde::Serialize;

use super::product::{InterpolantProduct, Kernel};
use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::lattice::{FrequencyDomain, Shape};
use crate::scalar::Exponent;

/// Largest admissible `|f_k(x_j) - δ_jk|`.
pub const LAGRANGE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct DualityBound {
    pub bound: f64,
    pub norms: Vec<f64>,
    pub max_residual: f64,
}

fn fits_inside(f: &InterpolantProduct, target: &FrequencyDomain<f64>) -> bool {
    // an ℓ^p ball of radius R sits inside the ℓ^q ball of radius R when p ≤ q
    let nested = match target.shape {
        Shape::Cube => true,
        Shape::Ball => matches!(f.p, Exponent::One | Exponent::Two)
            || matches!(f.p, Exponent::P(p) if p <= 2.0),
    };
    nested && f.bandwidth_certificate <= target.m * (1.0 + 1e-12)
}

/// `(1/√s) min_k 1/‖f_k‖` for a Lagrange family of `x` band-limited to the
/// target domain; `L²(T^d)` norms for the matrix, `L²(R^d)` for the operator.
pub fn duality_lower_bound(
    x: &PointSet<f64>,
    family: &[InterpolantProduct],
    target: &FrequencyDomain<f64>,
) -> Result<DualityBound> {
    let s = x.len();
    if family.len() != s {
        return Err(Error::DimensionMismatch { expected: s, got: family.len() });
    }
    if target.is_discrete() && target.rho() != 1 {
        return Err(Error::InvalidArgument("duality needs ρ = 1".into()));
    }
    let mut max_residual: f64 = 0.0;
    let mut norms = Vec::with_capacity(s);
    for (k, f) in family.iter().enumerate() {
        let ok_kind = if target.is_discrete() {
            f.is_polynomial()
        } else {
            matches!(f.kernel, Kernel::LowPass { .. })
        };
        if !ok_kind {
            return Err(Error::InvalidArgument(format!("member {k} is not in the target function space")));
        }
        if !fits_inside(f, target) {
            return Err(Error::Certificate(format!(
                "member {k} has bandwidth {} outside the target radius {}",
                f.bandwidth_certificate, target.m
            )));
        }
        for j in 0..s {
            let want = if j == k { 1.0 } else { 0.0 };
            let r = (f.evaluate(x.point(j))? - want).norm();
            max_residual = max_residual.max(r);
        }
        norms.push(f.l2_norm()?);
    }
    if max_residual > LAGRANGE_TOL {
        return Err(Error::Certificate(format!("Lagrange residual {max_residual:.3e}")));
    }
    let worst = norms.iter().cloned().fold(0.0, f64::max);
    Ok(DualityBound { bound: 1.0 / ((s as f64).sqrt() * worst), norms, max_residual })
}
