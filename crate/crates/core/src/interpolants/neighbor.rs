use serde::Serialize;

use super::product::{InterpolantProduct, Kernel, PlaneWaveFactor};
use super::quantize::quantize_direction;
use crate::error::{Error, Result};
use crate::geometry::LocalHyperplaneDecomposition;
use crate::lattice::{FrequencyDomain, Shape};
use crate::scalar::Exponent;

const SLACK: f64 = 1e-12;

/// Which half of the near/far split a root fell into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RootClass {
    Near,
    Far,
}

fn nonzero_roots(u: &[Vec<f64>], d: usize) -> Result<Vec<Vec<f64>>> {
    if u.iter().any(|v| v.len() != d) {
        return Err(Error::InvalidArgument("root dimension mismatch".into()));
    }
    let zeros = u.iter().filter(|v| v.iter().all(|&c| c == 0.0)).count();
    if zeros != 1 {
        return Err(Error::InvalidArgument("the root set must contain the origin exactly once".into()));
    }
    Ok(u.iter().filter(|v| v.iter().any(|&c| c != 0.0)).cloned().collect())
}

fn shape_of(p: Exponent) -> Result<Shape> {
    match p {
        Exponent::Two => Ok(Shape::Ball),
        Exponent::Inf => Ok(Shape::Cube),
        _ => Err(Error::InvalidArgument(format!(
            "kernels are implemented for balls and cubes only (p = {p})"
        ))),
    }
}

/// Trigonometric polynomial equal to 1 at 0 and vanishing on `U \ {0}`, built
/// from quantized plane waves. `norm_bound` is the sup-norm bound
/// `√(2^{|U|-1}) Π_{near} r/(2n|u|_{p'})`.
pub fn neighbor_interpolant_discrete(
    u: &[Vec<f64>],
    n: f64,
    r: usize,
    p: Exponent,
) -> Result<(InterpolantProduct, Vec<RootClass>)> {
    let d = u.first().map(|v| v.len()).ok_or_else(|| Error::InvalidArgument("empty root set".into()))?;
    let roots = nonzero_roots(u, d)?;
    let pc = p.conjugate();
    let df = p.dim_factor(d);
    if u.len() > r {
        return Err(Error::InvalidArgument(format!("|U| = {} exceeds r = {r}", u.len())));
    }
    if n < 2.0 * df * r as f64 * (1.0 - SLACK) {
        return Err(Error::InvalidArgument(format!("n = {n} below 2 d^(1/p) r = {}", 2.0 * df * r as f64)));
    }
    let cap = 1.0 / (4.0 * df);
    let near_cut = r as f64 / (2.0 * n);
    let mut factors = Vec::with_capacity(roots.len());
    let mut classes = Vec::with_capacity(roots.len());
    let mut bound = 2f64.powf((u.len() as f64 - 1.0) / 2.0);
    for v in &roots {
        let nv = pc.norm(v);
        if nv > cap * (1.0 + SLACK) {
            return Err(Error::InvalidArgument(format!("root with |u|_p' = {nv} above {cap}")));
        }
        let (alpha, class) = if nv <= near_cut { (near_cut, RootClass::Near) } else { (nv, RootClass::Far) };
        if class == RootClass::Near {
            bound *= near_cut / nv;
        }
        let q = quantize_direction(v, alpha, p)?;
        factors.push(PlaneWaveFactor::new(q.q.iter().map(|&c| c as f64).collect(), v.clone())?);
        classes.push(class);
    }
    let mut f = InterpolantProduct::new(d, p, factors, Kernel::None);
    let limit = n * (r as f64 - 1.0) / r as f64;
    if f.bandwidth_certificate > limit * (1.0 + SLACK) + SLACK {
        return Err(Error::Certificate(format!(
            "bandwidth {} exceeds n(r-1)/r = {limit}",
            f.bandwidth_certificate
        )));
    }
    f.norm_bound = bound;
    Ok((f, classes))
}

/// `(θ_k, η_k)` for each plane of a decomposition, in coordinates centred at
/// the reference node: the plane is `{y : θ_k·y = η_k}`.
pub fn local_planes(
    decomposition: &LocalHyperplaneDecomposition<f64>,
    reference: &[f64],
) -> Vec<(Vec<f64>, f64)> {
    decomposition
        .planes
        .iter()
        .map(|(h, _)| {
            let s = -h.signed_distance(reference);
            (h.normal.clone(), s)
        })
        .collect()
}

/// Band-limited `f ∈ L²(R^d)` with `f(0) = 1` vanishing on every plane of the
/// decomposition; low-pass kernel of radius `n/(r+1)`. `norm_bound` is the
/// `L²` bound `√(2^r/|Ω^p_{n/(r+1)}|) Π_k (r+1)/(4nη_k)`.
pub fn neighbor_interpolant_continuous(
    planes: &[(Vec<f64>, f64)],
    d: usize,
    n: f64,
    p: Exponent,
) -> Result<InterpolantProduct> {
    let shape = shape_of(p)?;
    let r = planes.len();
    let rp1 = (r + 1) as f64;
    let mut factors = Vec::with_capacity(r);
    let mut prod = 1.0;
    for (theta, eta) in planes {
        if theta.len() != d || (theta.iter().map(|t| t * t).sum::<f64>().sqrt() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument("plane normals must be unit d-vectors".into()));
        }
        if !(*eta > 0.0) || *eta > rp1 / (4.0 * n) * (1.0 + SLACK) {
            return Err(Error::InvalidArgument(format!(
                "plane distance {eta} outside (0, (r+1)/(4n) = {}]",
                rp1 / (4.0 * n)
            )));
        }
        let freq: Vec<f64> = theta.iter().map(|t| n * t / rp1).collect();
        let root: Vec<f64> = theta.iter().map(|t| eta * t).collect();
        factors.push(PlaneWaveFactor::new(freq, root)?);
        prod *= rp1 / (4.0 * n * eta);
    }
    let radius = n / rp1;
    let vol = FrequencyDomain::<f64>::continuous(shape, radius, d)?.volume();
    // real frequencies: the ℓ^p length of nθ/(r+1) is at most its ℓ² length for p ≥ 2
    let mut f = InterpolantProduct::new(d, p, factors, Kernel::LowPass { shape, radius });
    f.norm_bound = (2f64.powi(r as i32) / vol).sqrt() * prod;
    Ok(f)
}

/// Trigonometric-polynomial analogue with integer normals `q_k`: the factor
/// `(e^{2πi q_k·y} - e^{2πi q_k·u_k})/(1 - e^{2πi q_k·u_k})`, `u_k = η_k q_k/|q_k|_2`,
/// times the normalized Dirichlet kernel of `Ω^p_{n/(r+1)}`. `norm_bound` is
/// the `L²(T^d)` bound `√(2^r/|Ω^p_{n/(r+1)}|_*) Π_k 1/(4|q_k|_2 η_k)`.
pub fn neighbor_interpolant_integer_hyperplanes(
    u: &[Vec<f64>],
    planes: &[(Vec<i64>, f64)],
    n: f64,
    p: Exponent,
) -> Result<InterpolantProduct> {
    let d = u.first().map(|v| v.len()).ok_or_else(|| Error::InvalidArgument("empty root set".into()))?;
    let roots = nonzero_roots(u, d)?;
    let shape = shape_of(p)?;
    let r = planes.len();
    let rp1 = (r + 1) as f64;
    let mut factors = Vec::with_capacity(r);
    let mut prod = 1.0;
    let mut units = Vec::with_capacity(r);
    for (q, eta) in planes {
        if q.len() != d || q.iter().all(|&c| c == 0) {
            return Err(Error::InvalidArgument("plane normals must be nonzero integer d-vectors".into()));
        }
        let qf: Vec<f64> = q.iter().map(|&c| c as f64).collect();
        let ql = qf.iter().map(|c| c * c).sum::<f64>().sqrt();
        if ql > n / rp1 * (1.0 + SLACK) {
            return Err(Error::InvalidArgument(format!("|q|_2 = {ql} exceeds n/(r+1) = {}", n / rp1)));
        }
        if !(*eta > 0.0) || *eta > rp1 / (4.0 * n) * (1.0 + SLACK) {
            return Err(Error::InvalidArgument(format!("plane distance {eta} outside (0, (r+1)/(4n)]")));
        }
        let theta: Vec<f64> = qf.iter().map(|c| c / ql).collect();
        let root: Vec<f64> = theta.iter().map(|t| eta * t).collect();
        factors.push(PlaneWaveFactor::new(qf, root)?);
        prod /= 4.0 * ql * eta;
        units.push((theta, *eta));
    }
    for v in &roots {
        let on_plane = units.iter().any(|(t, e)| {
            (t.iter().zip(v).map(|(a, b)| a * b).sum::<f64>() - e).abs() <= 1e-10
        });
        if !on_plane {
            return Err(Error::InvalidArgument(format!("root {v:?} lies on none of the planes")));
        }
    }
    let radius = n / rp1;
    let count = FrequencyDomain::<f64>::discrete(shape, radius, d)?.lattice_count()? as f64;
    let mut f = InterpolantProduct::new(d, Exponent::Two, factors, Kernel::Dirichlet { shape, radius });
    // certificate in ℓ²: the normals are measured in ℓ², the kernel in ℓ^p ⊆ ℓ² ball only for p = 2
    if shape == Shape::Cube {
        f.p = Exponent::Inf;
        f.bandwidth_certificate =
            radius + f.factors.iter().map(|fa| Exponent::Inf.norm(&fa.frequency)).sum::<f64>();
    }
    f.norm_bound = (2f64.powi(r as i32) / count).sqrt() * prod;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{local_hyperplane_decomposition, PointSet};

    #[test]
    fn singleton_is_constant() {
        let (f, _) = neighbor_interpolant_discrete(&[vec![0.0, 0.0]], 8.0, 1, Exponent::Inf).unwrap();
        assert!(f.factors.is_empty());
        assert_eq!(f.norm_bound, 1.0);
        assert!((f.evaluate(&[0.3, 0.1]).unwrap() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn one_near_root() {
        let (n, r, delta) = (20.0, 2, 0.02);
        let u = vec![vec![0.0, 0.0], vec![delta, 0.0]];
        let (f, cls) = neighbor_interpolant_discrete(&u, n, r, Exponent::Inf).unwrap();
        assert_eq!(cls, vec![RootClass::Near]);
        let want = 2f64.sqrt() * r as f64 / (2.0 * n * delta);
        assert!((f.norm_bound - want).abs() < 1e-12);
        assert!(f.evaluate(&[delta, 0.0]).unwrap().norm() < 1e-12);
        assert!(f.sup_norm_grid().unwrap() <= want + 1e-6);
        assert!(f.bandwidth_certificate <= n * (r as f64 - 1.0) / r as f64);
    }

    #[test]
    fn triangle_planes() {
        let delta = 0.01;
        let x = PointSet::<f64>::torus(2, vec![vec![0.0, 0.0], vec![delta, 0.0], vec![0.0, delta]]).unwrap();
        let dec = local_hyperplane_decomposition(&x, 0, 0.1, Exponent::Two, 4).unwrap();
        let planes = local_planes(&dec, x.point(0));
        assert_eq!(planes.len(), 1);
        assert!((planes[0].1 - delta / 2f64.sqrt()).abs() < 1e-14);
        let n = 20.0;
        let f = neighbor_interpolant_continuous(&planes, 2, n, Exponent::Two).unwrap();
        assert!((f.evaluate(&[0.0, 0.0]).unwrap() - 1.0).norm() < 1e-12);
        for y in [[delta, 0.0], [0.0, delta], [0.3, delta - 0.3]] {
            assert!(f.evaluate(&y).unwrap().norm() < 1e-12);
        }
        assert!(f.l2_norm().unwrap() <= f.norm_bound + 1e-6);

        let g = neighbor_interpolant_integer_hyperplanes(
            &[vec![0.0, 0.0], vec![delta, 0.0], vec![0.0, delta]],
            &[(vec![1, 1], delta / 2f64.sqrt())],
            n,
            Exponent::Two,
        )
        .unwrap();
        assert!(g.evaluate(&[delta, 0.0]).unwrap().norm() < 1e-12);
        assert!(g.evaluate(&[0.0, delta]).unwrap().norm() < 1e-12);
        assert!(g.l2_norm().unwrap() <= g.norm_bound + 1e-6);
        // reference (δ,0): the other two nodes sit on x = -δ relative to it
        let h = neighbor_interpolant_integer_hyperplanes(
            &[vec![0.0, 0.0], vec![-delta, 0.0], vec![-delta, delta]],
            &[(vec![-1, 0], delta)],
            n,
            Exponent::Inf,
        )
        .unwrap();
        assert!(h.evaluate(&[-delta, delta]).unwrap().norm() < 1e-12);
        assert!(neighbor_interpolant_integer_hyperplanes(
            &[vec![0.0, 0.0], vec![delta, 0.0]],
            &[(vec![30, 0], delta)],
            n,
            Exponent::Two,
        )
        .is_err());
    }

    #[test]
    fn rejects_small_p() {
        assert!(neighbor_interpolant_continuous(&[(vec![1.0, 0.0], 0.01)], 2, 10.0, Exponent::One).is_err());
    }
}
