use num_complex::Complex;

use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::lattice::FrequencyDomain;
use crate::linalg::CMatrix;
use crate::scalar::Real;

/// `Φ` with entries `ρ^{-d/2} e^{-2πi ω·x_k}`; rows follow the lattice order.
#[derive(Clone, Debug)]
pub struct FourierMatrix<T: Real> {
    /// Integer multi-indices `n`, with `ω = n/ρ`.
    pub indices: Vec<Vec<i64>>,
    pub rho: u32,
    pub matrix: CMatrix<T>,
}

impl<T: Real> FourierMatrix<T> {
    pub fn frequencies(&self) -> Vec<Vec<T>> {
        let rho = T::from_usize_lossy(self.rho as usize);
        self.indices
            .iter()
            .map(|n| n.iter().map(|&v| T::from_i64_lossy(v) / rho).collect())
            .collect()
    }

    /// CSV with one line per row: `re,im` pairs for each column.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in 0..self.matrix.rows() {
            let line: Vec<String> = (0..self.matrix.cols())
                .map(|c| {
                    let z = self.matrix[(r, c)];
                    format!("{:e},{:e}", z.re.as_f64(), z.im.as_f64())
                })
                .collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

/// `Φ` for explicit integer frequency indices (`ω = n/ρ`).
///
/// Entries are products of per-axis phases, which are tabulated once per node.
pub fn matrix_from_indices<T: Real>(
    indices: Vec<Vec<i64>>,
    rho: u32,
    x: &PointSet<T>,
) -> Result<FourierMatrix<T>> {
    let d = x.dim();
    if let Some(bad) = indices.iter().find(|n| n.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, got: bad.len() });
    }
    let rhof = T::from_usize_lossy(rho as usize);
    let scale = rhof.powf(-T::from_usize_lossy(d) / T::lit(2.0));
    let lo = indices.iter().flatten().copied().min().unwrap_or(0);
    let hi = indices.iter().flatten().copied().max().unwrap_or(0);
    let two_pi = T::lit(2.0) * T::PI();
    let mut matrix = CMatrix::zeros(indices.len(), x.len());
    for k in 0..x.len() {
        let p = x.point(k);
        // phases[l][n - lo] = e^{-2πi (n/ρ) x_l}
        let phases: Vec<Vec<Complex<T>>> = p
            .iter()
            .map(|&xl| {
                (lo..=hi)
                    .map(|n| Complex::from_polar(T::one(), -two_pi * T::from_i64_lossy(n) / rhof * xl))
                    .collect()
            })
            .collect();
        let col = matrix.col_mut(k);
        for (entry, n) in col.iter_mut().zip(&indices) {
            let mut z = Complex::new(scale, T::zero());
            for (l, &nl) in n.iter().enumerate() {
                z = z * phases[l][(nl - lo) as usize];
            }
            *entry = z;
        }
    }
    Ok(FourierMatrix { indices, rho, matrix })
}

/// `Φ_{Ω,X}` (or the oversampled `Φ_{Ω,X,ρ}`) for a discrete domain.
pub fn build_matrix<T: Real>(domain: &FrequencyDomain<T>, x: &PointSet<T>) -> Result<FourierMatrix<T>> {
    if !domain.is_discrete() {
        return Err(Error::InvalidArgument(
            "continuous operators have no finite matrix; use the Gram matrix".into(),
        ));
    }
    if domain.d != x.dim() {
        return Err(Error::DimensionMismatch { expected: domain.d, got: x.dim() });
    }
    matrix_from_indices(domain.enumerate_indices()?, domain.rho(), x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{Mode, Shape};
    use crate::linalg::norm2;

    #[test]
    fn shapes_and_moduli() {
        let dom = FrequencyDomain::<f64>::discrete(Shape::Cube, 1.0, 2).unwrap();
        let x = PointSet::<f64>::torus(2, vec![vec![0.123, -0.3]]).unwrap();
        let phi = build_matrix(&dom, &x).unwrap();
        assert_eq!((phi.matrix.rows(), phi.matrix.cols()), (9, 1));
        assert!((norm2(phi.matrix.col(0)) - 3.0).abs() < 1e-14);
        let zero = PointSet::<f64>::torus(2, vec![vec![0.0, 0.0]]).unwrap();
        let phi0 = build_matrix(&dom, &zero).unwrap();
        assert!(phi0.matrix.col(0).iter().all(|z| (z - Complex::new(1.0, 0.0)).norm() < 1e-15));
    }

    #[test]
    fn oversampled_rows() {
        let dom = FrequencyDomain::<f64>::new(Shape::Cube, 1.0, Mode::Discrete { rho: 2 }, 1).unwrap();
        let x = PointSet::<f64>::torus(1, vec![vec![0.2]]).unwrap();
        let phi = build_matrix(&dom, &x).unwrap();
        assert_eq!(phi.frequencies(), vec![vec![-1.0], vec![-0.5], vec![0.0], vec![0.5], vec![1.0]]);
        for r in 0..5 {
            let z = phi.matrix[(r, 0)];
            assert!((z.norm() - 0.5f64.sqrt()).abs() < 1e-12);
            let w = phi.frequencies()[r][0];
            let want = Complex::from_polar(0.5f64.sqrt(), -2.0 * std::f64::consts::PI * w * 0.2);
            assert!((z - want).norm() < 1e-14);
        }
        assert!(build_matrix(&FrequencyDomain::<f64>::continuous(Shape::Cube, 1.0, 1).unwrap(), &x).is_err());
    }

    #[test]
    fn csv_export() {
        let dom = FrequencyDomain::<f64>::discrete(Shape::Cube, 1.0, 1).unwrap();
        let x = PointSet::<f64>::torus(1, vec![vec![0.0], vec![0.25]]).unwrap();
        let csv = build_matrix(&dom, &x).unwrap().to_csv();
        assert_eq!(csv.lines().count(), 3);
        assert_eq!(csv.lines().next().unwrap().split(',').count(), 4);
    }
}
