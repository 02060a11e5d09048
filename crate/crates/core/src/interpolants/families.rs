use num_complex::Complex64;

use super::localization::localization_polynomials;
use super::neighbor::{local_planes, neighbor_interpolant_continuous, neighbor_interpolant_discrete};
use super::product::{InterpolantProduct, Kernel};
use crate::error::{Error, Result};
use crate::geometry::{local_hyperplane_decomposition, local_sparsity, neighborhood, PointSet};
use crate::lattice::{FrequencyDomain, Shape};
use crate::operators::min_norm_interpolant;
use crate::specfun::{c_alpha, unit_ball_volume};

/// Constants of the well-separated bound used for localization: nodes with
/// `Δ_p ≥ τ` have `σ_min(Φ_{Ω^p_{C/τ}}) ≥ c √|Ω^p_{C/τ}|_*`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalizationConstants {
    pub shape: Shape,
    pub big_c: f64,
    pub small_c: f64,
}

impl LocalizationConstants {
    pub fn cube(beta: f64, d: usize) -> Result<Self> {
        let v = 2.0 - (1.0 / (2.0 * beta)).exp();
        if !(v > 0.0) {
            return Err(Error::InvalidArgument(format!("beta = {beta} gives no positive constant")));
        }
        Ok(LocalizationConstants { shape: Shape::Cube, big_c: beta * d as f64, small_c: v.sqrt() })
    }

    pub fn ball(alpha: f64, d: usize, tau: f64) -> Result<Self> {
        let c = c_alpha(alpha, d)?;
        let dom = FrequencyDomain::<f64>::discrete(Shape::Ball, alpha / tau, d)?;
        let ratio = dom.volume() / dom.lattice_count()? as f64;
        Ok(LocalizationConstants {
            shape: Shape::Ball,
            big_c: alpha,
            small_c: (c / unit_ball_volume::<f64>(d) * ratio).sqrt(),
        })
    }
}

fn chart_roots(x: &PointSet<f64>, k: usize, idx: &[usize]) -> Vec<Vec<f64>> {
    let mut u = vec![vec![0.0; x.dim()]];
    u.extend(idx.iter().filter(|&&j| j != k).map(|&j| x.chart_difference(j, k)));
    u
}

/// `f_k = h(· - x_k) b_k g_k` for the matrix over `Ω^p_m`: `h` the normalized
/// Dirichlet kernel of radius `m/(2ν)`, `b_k` the quantized neighbor
/// interpolant, `g_k` the localization polynomial.
pub fn sr_family(
    x: &PointSet<f64>,
    m: f64,
    tau: f64,
    consts: LocalizationConstants,
) -> Result<Vec<InterpolantProduct>> {
    let p = consts.shape.exponent();
    let nu = local_sparsity(x, tau, p);
    let gs = localization_polynomials(x, tau, m, consts.shape, consts.big_c, consts.small_c)?;
    let h = Kernel::Dirichlet { shape: consts.shape, radius: m / (2.0 * nu as f64) };
    let h_norm = 1.0 / (FrequencyDomain::<f64>::discrete(consts.shape, m / (2.0 * nu as f64), x.dim())?
        .lattice_count()? as f64)
        .sqrt();
    let mut out = Vec::with_capacity(x.len());
    for (k, g) in gs.iter().enumerate() {
        let u = chart_roots(x, k, &neighborhood(x, k, tau, p));
        let (b, _) = neighbor_interpolant_discrete(&u, m / 2.0, nu, p)?;
        let bound = h_norm * b.norm_bound * g.bound;
        let mut f = b
            .with_kernel(h)
            .with_extra(g.local(x.point(k)), g.bandwidth_certificate)
            .centered_at(x.point(k));
        f.norm_bound = bound;
        out.push(f);
    }
    Ok(out)
}

/// `f_k = b_k g_k` for the operator over `Ω^p_m`, with `b_k` the band-limited
/// hyperplane interpolant of the `τ`-neighborhood. Needs every neighborhood
/// to be free of wrap-around (chart and raw differences agree).
pub fn hyper_family(
    x: &PointSet<f64>,
    m: f64,
    tau: f64,
    consts: LocalizationConstants,
    r_max: usize,
) -> Result<Vec<InterpolantProduct>> {
    let p = consts.shape.exponent();
    let gs = localization_polynomials(x, tau, m, consts.shape, consts.big_c, consts.small_c)?;
    let mut out = Vec::with_capacity(x.len());
    for (k, g) in gs.iter().enumerate() {
        for j in neighborhood(x, k, tau, p) {
            let raw = x.point(j).iter().zip(x.point(k)).map(|(a, b)| a - b);
            if raw.zip(x.chart_difference(j, k)).any(|(a, b)| (a - b).abs() > 1e-12) {
                return Err(Error::InvalidArgument(format!(
                    "neighborhood of node {k} wraps around the torus"
                )));
            }
        }
        let dec = local_hyperplane_decomposition(x, k, tau, p, r_max)?;
        let planes = local_planes(&dec, x.point(k));
        let b = neighbor_interpolant_continuous(&planes, x.dim(), m / 2.0, p)?;
        let bound = b.norm_bound * g.bound;
        let mut f = b.with_extra(g.local(x.point(k)), g.bandwidth_certificate).centered_at(x.point(k));
        f.norm_bound = bound;
        out.push(f);
    }
    Ok(out)
}

/// The minimum-norm Lagrange family over a discrete domain.
pub fn min_norm_family(domain: &FrequencyDomain<f64>, x: &PointSet<f64>) -> Result<Vec<InterpolantProduct>> {
    let s = x.len();
    (0..s)
        .map(|k| {
            let w: Vec<Complex64> =
                (0..s).map(|j| Complex64::new(if j == k { 1.0 } else { 0.0 }, 0.0)).collect();
            let poly = min_norm_interpolant(domain, x, &w)?;
            Ok(InterpolantProduct::new(x.dim(), domain.shape.exponent(), vec![], Kernel::None)
                .with_extra(poly, domain.m))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interpolants::duality_lower_bound;
    use crate::operators::{gram, sigma_extremes};

    #[test]
    fn singleton_dirichlet_is_exact() {
        let x = PointSet::<f64>::torus(2, vec![vec![0.2, -0.3]]).unwrap();
        let dom = FrequencyDomain::<f64>::discrete(Shape::Cube, 5.0, 2).unwrap();
        let f = InterpolantProduct::new(2, dom.shape.exponent(), vec![], Kernel::Dirichlet { shape: Shape::Cube, radius: 5.0 })
            .centered_at(x.point(0));
        let b = duality_lower_bound(&x, &[f], &dom).unwrap();
        assert!((b.bound - 11.0).abs() < 1e-12);
    }

    #[test]
    fn families_certify_sigma_min() {
        let x = PointSet::<f64>::torus(
            2,
            vec![vec![0.0, 0.0], vec![0.004, 0.002], vec![0.25, -0.2], vec![-0.3, 0.31]],
        )
        .unwrap();
        let tau = 0.1;
        let consts = LocalizationConstants::cube(1.0, 2).unwrap();
        let m = 2.0 * consts.big_c * 2.0 / tau;
        let dom = FrequencyDomain::<f64>::discrete(Shape::Cube, m, 2).unwrap();
        let smin = sigma_extremes(&gram(&dom, &x).unwrap()).unwrap().sigma_min;
        let fam = sr_family(&x, m, tau, consts).unwrap();
        let b = duality_lower_bound(&x, &fam, &dom).unwrap();
        assert!(b.bound <= smin + 1e-9, "{} vs {smin}", b.bound);
        for (f, n) in fam.iter().zip(&b.norms) {
            assert!(*n <= f.norm_bound + 1e-9);
        }
        let exact = duality_lower_bound(&x, &min_norm_family(&dom, &x).unwrap(), &dom).unwrap();
        assert!(exact.bound <= smin + 1e-9 && exact.bound >= b.bound - 1e-9);

        let cdom = FrequencyDomain::<f64>::continuous(Shape::Cube, m, 2).unwrap();
        let csmin = sigma_extremes(&gram(&cdom, &x).unwrap()).unwrap().sigma_min;
        let hf = hyper_family(&x, m, tau, consts, 4).unwrap();
        let hb = duality_lower_bound(&x, &hf, &cdom).unwrap();
        assert!(hb.bound <= csmin + 1e-9, "{} vs {csmin}", hb.bound);
    }
}
