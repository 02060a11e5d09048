use serde::{Deserialize, Serialize};

use super::pointset::PointSet;
use super::sets::neighborhood;
use crate::error::{Error, Result};
use crate::scalar::{Exponent, Real};

/// `{x : normal·x = offset}` with a unit normal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hyperplane<T: Real> {
    pub normal: Vec<T>,
    pub offset: T,
}

impl<T: Real> Hyperplane<T> {
    pub fn new(normal: Vec<T>, offset: T) -> Result<Self> {
        let n = Exponent::Two.norm(&normal);
        if !(n > T::zero()) {
            return Err(Error::InvalidArgument("hyperplane normal is zero".into()));
        }
        let normal: Vec<T> = normal.into_iter().map(|v| v / n).collect();
        Ok(Hyperplane { normal, offset: offset / n })
    }

    /// Plane through `points` (affinely at most `d-1` dimensional) chosen to be
    /// as far as possible from `reference`; `None` if the span passes through it.
    pub fn through_avoiding(points: &[Vec<T>], reference: &[T]) -> Option<(Self, T)> {
        let span = AffineSpan::new(points)?;
        let (normal, dist) = span.escape_direction(reference)?;
        let offset = dot(&normal, &points[0]);
        Some((Hyperplane { normal, offset }, dist))
    }

    pub fn signed_distance(&self, x: &[T]) -> T {
        dot(&self.normal, x) - self.offset
    }
}

pub fn point_hyperplane_distance<T: Real>(x: &[T], h: &Hyperplane<T>) -> T {
    h.signed_distance(x).abs()
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// Affine span of a few points with an orthonormal direction basis.
struct AffineSpan<T: Real> {
    origin: Vec<T>,
    basis: Vec<Vec<T>>,
}

impl<T: Real> AffineSpan<T> {
    /// `None` when the span is all of `R^d`.
    fn new(points: &[Vec<T>]) -> Option<Self> {
        let d = points[0].len();
        let origin = points[0].clone();
        let mut basis: Vec<Vec<T>> = Vec::new();
        for p in &points[1..] {
            let mut v: Vec<T> = p.iter().zip(&origin).map(|(&a, &b)| a - b).collect();
            let scale = Exponent::Two.norm(&v);
            // two Gram-Schmidt passes keep the basis orthogonal at small scales
            for _ in 0..2 {
                for b in &basis {
                    let c = dot(&v, b);
                    v.iter_mut().zip(b).for_each(|(x, &y)| *x -= c * y);
                }
            }
            let n = Exponent::Two.norm(&v);
            if n > T::lit(1e-9) * scale && n > T::zero() {
                basis.push(v.into_iter().map(|x| x / n).collect());
                if basis.len() == d {
                    return None;
                }
            }
        }
        Some(AffineSpan { origin, basis })
    }

    /// Unit vector from the span towards `x`, orthogonal to the span, and the distance.
    fn escape_direction(&self, x: &[T]) -> Option<(Vec<T>, T)> {
        let mut r: Vec<T> = x.iter().zip(&self.origin).map(|(&a, &b)| a - b).collect();
        for _ in 0..2 {
            for b in &self.basis {
                let c = dot(&r, b);
                r.iter_mut().zip(b).for_each(|(x, &y)| *x -= c * y);
            }
        }
        let dist = Exponent::Two.norm(&r);
        if dist <= T::lit(RESIDUAL_TOL) {
            return None;
        }
        // orient from the reference towards the span so the reference sits at -dist
        Some((r.into_iter().map(|v| -v / dist).collect(), dist))
    }
}

/// Reference residual below which a plane counts as passing through the reference.
pub const RESIDUAL_TOL: f64 = 1e-10;

/// Largest neighborhood (excluding the reference) the exhaustive search accepts.
pub const SEARCH_BUDGET: usize = 12;

/// Cover of a node's neighborhood by hyperplanes that avoid the node.
///
/// Planes are expressed in the chart centred at the reference node: on the
/// torus a neighbor `x_j` is represented by `x_k + wrap(x_j - x_k)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalHyperplaneDecomposition<T: Real> {
    pub reference_index: usize,
    pub planes: Vec<(Hyperplane<T>, Vec<usize>)>,
    pub eta: T,
}

impl<T: Real> LocalHyperplaneDecomposition<T> {
    pub fn r(&self) -> usize {
        self.planes.len()
    }
}

struct Search<'a, T: Real> {
    pts: &'a [Vec<T>],
    reference: Vec<T>,
    best_r: usize,
    best_eta: T,
    best: Option<Vec<Vec<usize>>>,
}

impl<T: Real> Search<'_, T> {
    fn group_eta(&self, group: &[usize]) -> Option<T> {
        let pts: Vec<Vec<T>> = group.iter().map(|&i| self.pts[i].clone()).collect();
        Hyperplane::through_avoiding(&pts, &self.reference).map(|(_, dist)| dist)
    }

    fn run(&mut self, next: usize, groups: &mut Vec<Vec<usize>>, etas: &mut Vec<T>) {
        let eta = etas.iter().fold(T::infinity(), |a, &b| a.min(b));
        if groups.len() > self.best_r || (groups.len() == self.best_r && eta <= self.best_eta) {
            return;
        }
        if next == self.pts.len() {
            self.best_r = groups.len();
            self.best_eta = eta;
            self.best = Some(groups.clone());
            return;
        }
        for g in 0..groups.len() {
            groups[g].push(next);
            if let Some(e) = self.group_eta(&groups[g]) {
                let old = std::mem::replace(&mut etas[g], e);
                self.run(next + 1, groups, etas);
                etas[g] = old;
            }
            groups[g].pop();
        }
        if let Some(e) = self.group_eta(&[next]) {
            groups.push(vec![next]);
            etas.push(e);
            self.run(next + 1, groups, etas);
            etas.pop();
            groups.pop();
        }
    }
}

/// Minimum-`r` hyperplane cover of `N_p(x_k, tau) \ {x_k}`; ties broken by
/// the largest `η`. Exhaustive over set partitions of the neighbors.
pub fn local_hyperplane_decomposition<T: Real>(
    x: &PointSet<T>,
    k: usize,
    tau: T,
    p: Exponent,
    r_max: usize,
) -> Result<LocalHyperplaneDecomposition<T>> {
    if k >= x.len() {
        return Err(Error::InvalidArgument(format!("node index {k} out of range")));
    }
    if r_max == 0 {
        return Err(Error::InvalidArgument("r_max must be positive".into()));
    }
    let neighbors: Vec<usize> =
        neighborhood(x, k, tau, p).into_iter().filter(|&j| j != k).collect();
    if neighbors.len() > SEARCH_BUDGET {
        return Err(Error::Budget {
            required: neighbors.len() as u128,
            budget: SEARCH_BUDGET as u128,
        });
    }
    let reference = x.point(k).to_vec();
    let pts: Vec<Vec<T>> = neighbors
        .iter()
        .map(|&j| {
            x.chart_difference(j, k)
                .into_iter()
                .zip(&reference)
                .map(|(u, &c)| u + c)
                .collect()
        })
        .collect();
    if pts.is_empty() {
        return Ok(LocalHyperplaneDecomposition {
            reference_index: k,
            planes: vec![],
            eta: T::infinity(),
        });
    }
    let mut search = Search {
        pts: &pts,
        reference: reference.clone(),
        best_r: r_max,
        best_eta: T::neg_infinity(),
        best: None,
    };
    search.run(0, &mut Vec::new(), &mut Vec::new());
    let groups = search.best.ok_or(Error::NoDecomposition { r_max })?;
    let mut planes = Vec::with_capacity(groups.len());
    let mut eta = T::infinity();
    for g in groups {
        let gp: Vec<Vec<T>> = g.iter().map(|&i| pts[i].clone()).collect();
        let (plane, dist) =
            Hyperplane::through_avoiding(&gp, &reference).expect("validated during search");
        eta = eta.min(dist);
        planes.push((plane, g.iter().map(|&i| neighbors[i]).collect()));
    }
    Ok(LocalHyperplaneDecomposition { reference_index: k, planes, eta })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_distances() {
        let d = 0.01_f64;
        let h = Hyperplane::through_avoiding(&[vec![d, 0.0], vec![0.0, d]], &[0.0, 0.0])
            .unwrap()
            .0;
        assert!((point_hyperplane_distance(&[0.0, 0.0], &h) - d / 2f64.sqrt()).abs() < 1e-15);
        assert!(point_hyperplane_distance(&[d, 0.0], &h) < 1e-15);
        let flat = Hyperplane::new(vec![0.0, 2.0], 2.0 * d * d).unwrap();
        assert!((point_hyperplane_distance(&[0.0, 0.0], &flat) - d * d).abs() < 1e-18);
        assert!(Hyperplane::<f64>::new(vec![0.0, 0.0], 1.0).is_err());
    }

    #[test]
    fn triangle_uses_one_line() {
        let d = 0.01;
        let x = PointSet::torus(2, vec![vec![0.0, 0.0], vec![d, 0.0], vec![0.0, d]]).unwrap();
        let dec = local_hyperplane_decomposition(&x, 0, 0.1, Exponent::Two, 3).unwrap();
        assert_eq!(dec.r(), 1);
        assert!((dec.eta - d / 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn collinear_endpoint_needs_lambda_minus_one() {
        for lambda in 2..=5 {
            let x = PointSet::torus(
                2,
                (0..lambda).map(|i| vec![0.01 * i as f64, 0.0]).collect(),
            )
            .unwrap();
            let dec = local_hyperplane_decomposition(&x, 0, 0.1, Exponent::Two, 8).unwrap();
            assert_eq!(dec.r(), lambda - 1);
            assert!(local_hyperplane_decomposition(&x, 0, 0.1, Exponent::Two, lambda - 2).is_err()
                || lambda == 2);
        }
    }

    #[test]
    fn wraps_across_the_seam() {
        let x = PointSet::torus(2, vec![vec![-0.5, 0.0], vec![0.49, 0.0]]).unwrap();
        let dec = local_hyperplane_decomposition(&x, 0, 0.05, Exponent::Two, 2).unwrap();
        assert_eq!(dec.r(), 1);
        assert!((dec.eta - 0.01_f64).abs() < 1e-12);
        let h = &dec.planes[0].0;
        assert!(point_hyperplane_distance(&[-0.51, 0.3], h) < 1e-12);
    }

    #[test]
    fn budget_is_enforced() {
        let x = PointSet::torus(1, (0..14).map(|i| vec![0.001 * i as f64]).collect()).unwrap();
        assert!(matches!(
            local_hyperplane_decomposition(&x, 0, 0.1, Exponent::Two, 20),
            Err(Error::Budget { .. })
        ));
    }
}
