use num_complex::Complex;

use super::matrix::build_matrix;
use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::lattice::{FrequencyDomain, Mode, Shape};
use crate::linalg::CMatrix;
use crate::scalar::Real;
use crate::specfun::{ball_indicator_ft, dirichlet, sinc};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GramProvenance {
    DiscreteDirect,
    DiscreteClosedForm,
    ContinuousClosedForm,
}

/// `Φ*Φ` (discrete, `ρ^{-d}`-normalised) or `F*F` (continuous).
#[derive(Clone, Debug)]
pub struct GramMatrix<T: Real> {
    pub entries: CMatrix<T>,
    pub provenance: GramProvenance,
}

/// Closed-form Gram entry `Σ_ω e^{2πiω·t}` (or the integral) at `t = x_j - x_k`.
pub fn gram_entry<T: Real>(domain: &FrequencyDomain<T>, t: &[T]) -> Result<T> {
    let two = T::lit(2.0);
    match (domain.mode, domain.shape) {
        (Mode::Discrete { rho }, Shape::Cube) => {
            let rhof = T::from_usize_lossy(rho as usize);
            let big_m = (domain.m * rhof).floor().as_f64() as u64;
            Ok(t.iter().map(|&tl| dirichlet(big_m, tl / rhof) / rhof).fold(T::one(), |a, b| a * b))
        }
        (Mode::Continuous, Shape::Cube) => Ok(t
            .iter()
            .map(|&tl| two * domain.m * sinc(two * domain.m * tl))
            .fold(T::one(), |a, b| a * b)),
        (Mode::Continuous, Shape::Ball) => ball_indicator_ft(domain.m, t),
        (Mode::Discrete { .. }, Shape::Ball) => Err(Error::InvalidArgument(
            "discrete ball Gram has no closed form".into(),
        )),
    }
}

/// Gram matrix: closed forms for cubes and the continuous ball, direct
/// summation over the enumerated lattice for the discrete ball.
pub fn gram<T: Real>(domain: &FrequencyDomain<T>, x: &PointSet<T>) -> Result<GramMatrix<T>> {
    if domain.d != x.dim() {
        return Err(Error::DimensionMismatch { expected: domain.d, got: x.dim() });
    }
    if let (Mode::Discrete { .. }, Shape::Ball) = (domain.mode, domain.shape) {
        return gram_direct(domain, x);
    }
    let s = x.len();
    let mut g = CMatrix::zeros(s, s);
    for j in 0..s {
        for k in j..s {
            let t: Vec<T> = x.point(j).iter().zip(x.point(k)).map(|(&a, &b)| a - b).collect();
            let v = gram_entry(domain, &t)?;
            g[(j, k)] = Complex::new(v, T::zero());
            g[(k, j)] = Complex::new(v, T::zero());
        }
    }
    let provenance = if domain.is_discrete() {
        GramProvenance::DiscreteClosedForm
    } else {
        GramProvenance::ContinuousClosedForm
    };
    Ok(GramMatrix { entries: g, provenance })
}

/// `Φ*Φ` from the materialised matrix.
pub fn gram_direct<T: Real>(domain: &FrequencyDomain<T>, x: &PointSet<T>) -> Result<GramMatrix<T>> {
    let phi = build_matrix(domain, x)?;
    Ok(GramMatrix { entries: phi.matrix.gram(), provenance: GramProvenance::DiscreteDirect })
}
