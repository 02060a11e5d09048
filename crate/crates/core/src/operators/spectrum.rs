use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::gram::{gram, GramMatrix};
use super::matrix::{build_matrix, FourierMatrix};
use super::polynomial::TrigPolynomial;
use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::lattice::FrequencyDomain;
use crate::linalg::{hermitian_eigen, svd_jacobi, CMatrix};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumMethod {
    /// Eigenvalues of the Gram matrix; resolves `σ_min/σ_max` down to about `√ε`.
    Gram,
    /// One-sided Jacobi on `Φ`; resolves down to about `ε`.
    Svd,
}

impl SpectrumMethod {
    /// `σ_min/σ_max` below which `σ_min` is reported as under the numerical floor.
    pub fn floor_ratio<T: Real>(self) -> T {
        match self {
            SpectrumMethod::Gram => T::lit(8.0) * T::epsilon().sqrt(),
            SpectrumMethod::Svd => T::lit(8.0) * T::epsilon(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpectrumReport<T: Real> {
    pub sigma_min: T,
    pub sigma_max: T,
    /// Unit right singular vector for `sigma_min`.
    pub min_vector: Vec<Complex<T>>,
    pub iterations: usize,
    pub floor_hit: bool,
    pub method: SpectrumMethod,
}

#[derive(Serialize)]
struct SpectrumDoc {
    sigma_min: f64,
    sigma_max: f64,
    floor_hit: bool,
    iterations: usize,
}

impl<T: Real> Serialize for SpectrumReport<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpectrumDoc {
            sigma_min: self.sigma_min.as_f64(),
            sigma_max: self.sigma_max.as_f64(),
            floor_hit: self.floor_hit,
            iterations: self.iterations,
        }
        .serialize(s)
    }
}

/// Extreme singular values from the Gram eigenvalues (`λ_min` clamped at 0).
pub fn sigma_extremes<T: Real>(g: &GramMatrix<T>) -> Result<SpectrumReport<T>> {
    let eig = hermitian_eigen(&g.entries)?;
    let lmin = eig.values[0];
    let lmax = *eig.values.last().expect("non-empty");
    let trace: T = eig.values.iter().copied().sum();
    debug_assert!(lmin >= -T::lit(1e-10) * trace, "Gram matrix not PSD: {lmin:?}");
    let sigma_min = lmin.max(T::zero()).sqrt();
    let sigma_max = lmax.max(T::zero()).sqrt();
    let method = SpectrumMethod::Gram;
    Ok(SpectrumReport {
        sigma_min,
        sigma_max,
        min_vector: eig.vectors.col(0).to_vec(),
        iterations: eig.sweeps,
        floor_hit: sigma_min < method.floor_ratio::<T>() * sigma_max,
        method,
    })
}

/// Extreme singular values of a materialised matrix via one-sided Jacobi.
pub fn sigma_extremes_matrix<T: Real>(a: &CMatrix<T>) -> Result<SpectrumReport<T>> {
    let svd = svd_jacobi(a)?;
    let sigma_min = svd.sigma[0];
    let sigma_max = *svd.sigma.last().expect("non-empty");
    let method = SpectrumMethod::Svd;
    Ok(SpectrumReport {
        sigma_min,
        sigma_max,
        min_vector: svd.v.col(0).to_vec(),
        iterations: svd.sweeps,
        floor_hit: sigma_min < method.floor_ratio::<T>() * sigma_max,
        method,
    })
}

/// `σ_min`/`σ_max` of `Φ_{Ω,X}` (SVD of the matrix) or `F_{Ω,X}` (Gram route).
pub fn measure<T: Real>(domain: &FrequencyDomain<T>, x: &PointSet<T>) -> Result<SpectrumReport<T>> {
    if x.is_empty() {
        return Err(Error::InvalidPointSet("empty node set".into()));
    }
    if domain.is_discrete() {
        sigma_extremes_matrix(&build_matrix(domain, x)?.matrix)
    } else {
        sigma_extremes(&gram(domain, x)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sandwich {
    pub holds: bool,
    /// `σ_max - √|Ω|`.
    pub lower_margin: f64,
    /// `√(s|Ω|) - σ_max`.
    pub upper_margin: f64,
}

/// `√|Ω| ≤ σ_max ≤ √(s|Ω|)` with `|Ω|` the Gram diagonal, to `1e-9` relative slack.
pub fn sigma_sandwich_check<T: Real>(
    domain: &FrequencyDomain<T>,
    s: usize,
    report: &SpectrumReport<T>,
) -> Result<Sandwich> {
    let mu = domain.measure()?.as_f64();
    let smax = report.sigma_max.as_f64();
    let lo = mu.sqrt();
    let hi = (s as f64 * mu).sqrt();
    let slack = 1e-9 * hi;
    Ok(Sandwich {
        holds: smax >= lo - slack && smax <= hi + slack,
        lower_margin: smax - lo,
        upper_margin: hi - smax,
    })
}

/// Minimum-`ℓ²` coefficients `F = Φ(Φ*Φ)^{-1}w` of a trigonometric polynomial
/// with `f(x_k) = w_k`, over `Ω ∩ Z^d`.
pub fn min_norm_interpolant<T: Real>(
    domain: &FrequencyDomain<T>,
    x: &PointSet<T>,
    w: &[Complex<T>],
) -> Result<TrigPolynomial<T>> {
    if domain.rho() != 1 || !domain.is_discrete() {
        return Err(Error::InvalidArgument(
            "interpolation needs integer frequencies (discrete, ρ = 1)".into(),
        ));
    }
    if w.len() != x.len() {
        return Err(Error::DimensionMismatch { expected: x.len(), got: w.len() });
    }
    let phi: FourierMatrix<T> = build_matrix(domain, x)?;
    let svd = svd_jacobi(&phi.matrix)?;
    let smin = svd.sigma[0];
    let smax = *svd.sigma.last().expect("non-empty");
    if !(smin > T::lit(1e-12) * smax) {
        return Err(Error::RankDeficient { sigma_min: smin.as_f64(), sigma_max: smax.as_f64() });
    }
    // c = V Σ^{-2} V^H w
    let s = x.len();
    let mut c = vec![Complex::new(T::zero(), T::zero()); s];
    for i in 0..s {
        let vi = svd.v.col(i);
        let proj = crate::linalg::dotc(vi, w) / (svd.sigma[i] * svd.sigma[i]);
        for (ck, &v) in c.iter_mut().zip(vi) {
            *ck += v * proj;
        }
    }
    let f = phi.matrix.mul_vec(&c);
    TrigPolynomial::from_terms(x.dim(), phi.indices.into_iter().zip(f))
}
