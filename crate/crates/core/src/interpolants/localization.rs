use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{local_sparsity, separated_partition_of, PointSet};
use crate::lattice::{FrequencyDomain, Shape};
use crate::operators::{min_norm_interpolant, TrigPolynomial};

/// `g_k`: equal to 1 at `x_k`, vanishing on every node farther than `τ`.
#[derive(Clone, Debug, Serialize)]
pub struct LocalizationPolynomial {
    pub k: usize,
    pub parts: Vec<Vec<usize>>,
    /// Coefficients in the global variable.
    #[serde(skip)]
    pub g: TrigPolynomial<f64>,
    pub bandwidth_certificate: f64,
    pub bound: f64,
    pub sup_grid: f64,
    pub exceeds_bound: bool,
}

impl LocalizationPolynomial {
    /// The same polynomial in the variable `y = x - center`.
    pub fn local(&self, center: &[f64]) -> TrigPolynomial<f64> {
        let g = &self.g;
        TrigPolynomial::from_terms(
            g.dim(),
            g.terms().map(|(n, &c)| {
                let t: f64 = n.iter().zip(center).map(|(&a, b)| a as f64 * b).sum();
                (n.clone(), c * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t))
            }),
        )
        .expect("same dimension")
    }
}

fn grid_sizes(d: usize) -> (usize, usize) {
    match d {
        1 => (256, 4096),
        2 => (128, 512),
        3 => (32, 64),
        _ => (8, 16),
    }
}

/// Localization polynomials for every node, over `Ω^p_{C/τ}` factors.
///
/// `big_c` is the separation constant of the chosen well-separated bound
/// (`βd` for cubes, `α` for balls) and `small_c` the matching constant with
/// `σ_min ≥ c √|Ω|_*`; each `g_k` is checked against `c^{-ν}` on a grid.
pub fn localization_polynomials(
    x: &PointSet<f64>,
    tau: f64,
    m: f64,
    shape: Shape,
    big_c: f64,
    small_c: f64,
) -> Result<Vec<LocalizationPolynomial>> {
    let p = shape.exponent();
    let d = x.dim();
    let nu = local_sparsity(x, tau, p);
    if !(tau > 0.0) || big_c * nu as f64 / tau > m / 2.0 * (1.0 + 1e-12) {
        return Err(Error::InvalidArgument(format!(
            "density condition C·ν/τ = {} > m/2 = {}",
            big_c * nu as f64 / tau,
            m / 2.0
        )));
    }
    let domain = FrequencyDomain::<f64>::discrete(shape, big_c / tau, d)?;
    let bound = small_c.powi(-(nu as i32));
    let (g0, g_max) = grid_sizes(d);
    let mut out = Vec::with_capacity(x.len());
    for k in 0..x.len() {
        let far: Vec<usize> = (0..x.len()).filter(|&j| x.distance(j, k, p) > tau).collect();
        let parts = separated_partition_of(x, &far, tau, p);
        let mut g = TrigPolynomial::constant(d, Complex64::new(1.0, 0.0));
        for part in &parts {
            let mut idx = vec![k];
            idx.extend(part);
            let mut w = vec![Complex64::new(0.0, 0.0); idx.len()];
            w[0] = Complex64::new(1.0, 0.0);
            let factor = min_norm_interpolant(&domain, &x.subset(&idx), &w)?;
            g = g.mul_fft(&factor);
        }
        let sup_grid = g.sup_norm_refined(g0, g_max, 1e-3);
        out.push(LocalizationPolynomial {
            k,
            bandwidth_certificate: parts.len() as f64 * big_c / tau,
            parts,
            g,
            bound,
            exceeds_bound: sup_grid > bound + 1e-6,
            sup_grid,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exponent;

    const BETA: f64 = 1.0;

    fn cube_c() -> f64 {
        (2.0 - (1.0 / (2.0 * BETA)).exp()).sqrt()
    }

    #[test]
    fn single_node_is_one() {
        let x = PointSet::<f64>::torus(2, vec![vec![0.1, 0.2]]).unwrap();
        let g = localization_polynomials(&x, 0.1, 60.0, Shape::Cube, 2.0 * BETA, cube_c()).unwrap();
        assert!(g[0].parts.is_empty());
        assert_eq!(g[0].g.len(), 1);
    }

    #[test]
    fn two_clumps_vanish_across() {
        let x = PointSet::<f64>::torus(
            2,
            vec![vec![0.0, 0.0], vec![0.01, 0.0], vec![0.3, 0.3], vec![0.31, 0.3]],
        )
        .unwrap();
        let tau = 0.1;
        let big_c = 2.0 * BETA;
        let m = 2.0 * big_c * 2.0 / tau;
        let gs = localization_polynomials(&x, tau, m, Shape::Cube, big_c, cube_c()).unwrap();
        for g in &gs {
            assert!((g.g.evaluate(x.point(g.k)) - 1.0).norm() < 1e-9);
            for j in 0..x.len() {
                if x.distance(j, g.k, Exponent::Inf) > tau {
                    assert!(g.g.evaluate(x.point(j)).norm() < 1e-9);
                }
            }
            assert!(!g.exceeds_bound, "sup {} vs {}", g.sup_grid, g.bound);
            assert!(g.g.support_radius(Exponent::Inf, 1e-12) <= m / 2.0);
        }
        assert!(localization_polynomials(&x, tau, m / 2.0, Shape::Cube, big_c, cube_c()).is_err());
    }
}
