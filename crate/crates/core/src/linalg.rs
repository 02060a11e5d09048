//! Small dense complex linear algebra: a column-major matrix, the cyclic
//! Jacobi eigensolver for Hermitian matrices, Householder QR and the one-sided
//! (Hestenes) Jacobi SVD.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense column-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<T: Real> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![Complex::new(T::zero(), T::zero()); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for c in 0..cols {
            for r in 0..rows {
                data.push(f(r, c));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn col(&self, c: usize) -> &[Complex<T>] {
        &self.data[c * self.rows..(c + 1) * self.rows]
    }

    pub fn col_mut(&mut self, c: usize) -> &mut [Complex<T>] {
        &mut self.data[c * self.rows..(c + 1) * self.rows]
    }

    fn two_cols_mut(&mut self, p: usize, q: usize) -> (&mut [Complex<T>], &mut [Complex<T>]) {
        debug_assert!(p < q);
        let (a, b) = self.data.split_at_mut(q * self.rows);
        (&mut a[p * self.rows..(p + 1) * self.rows], &mut b[..self.rows])
    }

    /// `A^H A`.
    pub fn gram(&self) -> CMatrix<T> {
        let n = self.cols;
        let mut g = CMatrix::zeros(n, n);
        for j in 0..n {
            for k in j..n {
                let v = dotc(self.col(j), self.col(k));
                g[(j, k)] = v;
                g[(k, j)] = v.conj();
            }
        }
        g
    }

    pub fn frobenius(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.rows];
        for (c, &vc) in v.iter().enumerate() {
            for (o, &a) in out.iter_mut().zip(self.col(c)) {
                *o += a * vc;
            }
        }
        out
    }

    /// `A^H v`.
    pub fn adjoint_mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        (0..self.cols).map(|c| dotc(self.col(c), v)).collect()
    }
}

impl<T: Real> std::ops::Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (r, c): (usize, usize)) -> &Complex<T> {
        &self.data[c * self.rows + r]
    }
}

impl<T: Real> std::ops::IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[c * self.rows + r]
    }
}

/// `Σ conj(a_i) b_i`.
pub fn dotc<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    let mut re = T::zero();
    let mut im = T::zero();
    for (x, y) in a.iter().zip(b) {
        re += x.re * y.re + x.im * y.im;
        im += x.re * y.im - x.im * y.re;
    }
    Complex::new(re, im)
}

pub fn norm2<T: Real>(a: &[Complex<T>]) -> T {
    a.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

/// Rotation `J = [[c, s], [-s ē, c ē]]` annihilating the `(p, q)` entry of the
/// Hermitian 2×2 block `[[a, r e], [r ē, b]]`; returns `(c, s, e, t)`.
fn jacobi_rotation<T: Real>(a: T, b: T, apq: Complex<T>) -> (T, T, Complex<T>, T) {
    let r = apq.norm();
    let e = apq / r;
    let tau = (b - a) / (T::lit(2.0) * r);
    let t = if tau >= T::zero() {
        T::one() / (tau + (T::one() + tau * tau).sqrt())
    } else {
        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    (c, t * c, e, t)
}

/// Post-multiply columns `p < q` by the rotation.
fn rotate_cols<T: Real>(m: &mut CMatrix<T>, p: usize, q: usize, c: T, s: T, e: Complex<T>) {
    let se = e.conj() * s;
    let ce = e.conj() * c;
    let (cp, cq) = m.two_cols_mut(p, q);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let (xp, xq) = (*x, *y);
        *x = xp * c - xq * se;
        *y = xp * s + xq * ce;
    }
}

#[derive(Clone, Debug)]
pub struct Eigen<T: Real> {
    /// Ascending.
    pub values: Vec<T>,
    /// Column `i` is the eigenvector of `values[i]`.
    pub vectors: CMatrix<T>,
    pub sweeps: usize,
}

pub const MAX_SWEEPS: usize = 64;

fn off_diagonal<T: Real>(a: &CMatrix<T>) -> T {
    let n = a.cols;
    let mut s = T::zero();
    for c in 0..n {
        for r in 0..n {
            if r != c {
                s += a[(r, c)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix; stops once the
/// off-diagonal Frobenius norm is below `1e-14 ‖A‖_F`.
pub fn hermitian_eigen<T: Real>(a: &CMatrix<T>) -> Result<Eigen<T>> {
    let n = a.rows;
    if a.cols != n {
        return Err(Error::DimensionMismatch { expected: n, got: a.cols });
    }
    let mut a = a.clone();
    for i in 0..n {
        a[(i, i)].im = T::zero();
    }
    let mut v = CMatrix::identity(n);
    let tol = T::lit(1e-14) * a.frobenius();
    let mut sweeps = 0;
    let mut off = off_diagonal(&a);
    while off > tol {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, residual: off.as_f64() });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.norm() == T::zero() {
                    continue;
                }
                let (aa, bb) = (a[(p, p)].re, a[(q, q)].re);
                let (c, s, e, t) = jacobi_rotation(aa, bb, apq);
                let r = apq.norm();
                rotate_cols(&mut a, p, q, c, s, e);
                // rows: A ← J^H A
                for k in 0..n {
                    let (xp, xq) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = xp * c - xq * (e * s);
                    a[(q, k)] = xp * s + xq * (e * c);
                }
                a[(p, p)] = Complex::new(aa - t * r, T::zero());
                a[(q, q)] = Complex::new(bb + t * r, T::zero());
                a[(p, q)] = Complex::new(T::zero(), T::zero());
                a[(q, p)] = Complex::new(T::zero(), T::zero());
                rotate_cols(&mut v, p, q, c, s, e);
            }
        }
        off = off_diagonal(&a);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(Eigen { values, vectors, sweeps })
}

/// Upper-triangular `R` (`cols × cols`) of a Householder QR of a tall matrix.
/// Singular values and right singular vectors of `R` equal those of `A`.
pub fn householder_r<T: Real>(a: &CMatrix<T>) -> CMatrix<T> {
    let (m, n) = (a.rows, a.cols);
    let mut w = a.clone();
    for k in 0..n.min(m) {
        let x = &w.col(k)[k..];
        let alpha_norm = norm2(x);
        if alpha_norm == T::zero() {
            continue;
        }
        let x0 = x[0];
        let phase = if x0.norm() == T::zero() {
            Complex::new(T::one(), T::zero())
        } else {
            x0 / x0.norm()
        };
        // v = x + phase‖x‖ e_1, H = I - 2vv^H/(v^H v)
        let mut v: Vec<Complex<T>> = x.to_vec();
        v[0] += phase * alpha_norm;
        let vnorm2 = v.iter().map(|z| z.norm_sqr()).sum::<T>();
        if vnorm2 == T::zero() {
            continue;
        }
        for j in k..n {
            let col = &mut w.col_mut(j)[k..];
            let f = dotc(&v, col) * T::lit(2.0) / vnorm2;
            for (c, &vi) in col.iter_mut().zip(&v) {
                *c -= vi * f;
            }
        }
    }
    let r = n.min(m);
    CMatrix::from_fn(r, n, |i, j| if i <= j { w[(i, j)] } else { Complex::new(T::zero(), T::zero()) })
}

#[derive(Clone, Debug)]
pub struct Svd<T: Real> {
    /// Ascending singular values.
    pub sigma: Vec<T>,
    /// Right singular vectors, column `i` for `sigma[i]`.
    pub v: CMatrix<T>,
    pub sweeps: usize,
}

/// Singular values of a (tall) matrix via QR followed by one-sided Jacobi on `R`.
/// Small singular values are accurate to roughly `ε σ_max` in absolute terms,
/// instead of the `√ε σ_max` floor of eigenvalues of `A^H A`.
pub fn svd_jacobi<T: Real>(a: &CMatrix<T>) -> Result<Svd<T>> {
    let n = a.cols;
    let mut w = if a.rows > n { householder_r(a) } else { a.clone() };
    let mut v = CMatrix::identity(n);
    let tol = T::epsilon() * T::from_usize_lossy(w.rows.max(1));
    let mut sweeps = 0;
    loop {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = norm2(w.col(p)).powi(2);
                let beta = norm2(w.col(q)).powi(2);
                let g = dotc(w.col(p), w.col(q));
                if alpha == T::zero() || beta == T::zero() || g.norm() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let (c, s, e, _) = jacobi_rotation(alpha, beta, g);
                rotate_cols(&mut w, p, q, c, s, e);
                rotate_cols(&mut v, p, q, c, s, e);
            }
        }
        if !rotated {
            break;
        }
        sweeps += 1;
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, residual: f64::NAN });
        }
    }
    let norms: Vec<T> = (0..n).map(|c| norm2(w.col(c))).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[i].partial_cmp(&norms[j]).expect("finite norms"));
    Ok(Svd {
        sigma: order.iter().map(|&i| norms[i]).collect(),
        v: CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]),
        sweeps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn random(rows: usize, cols: usize, seed: u64) -> CMatrix<f64> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        CMatrix::from_fn(rows, cols, |_, _| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    #[test]
    fn eigen_reconstructs() {
        for seed in 0..5 {
            let a = random(9, 6, seed).gram();
            let e = hermitian_eigen(&a).unwrap();
            let trace: f64 = (0..6).map(|i| a[(i, i)].re).sum();
            let sum: f64 = e.values.iter().sum();
            assert!(((trace - sum) / trace).abs() < 1e-10);
            for i in 0..6 {
                let av = a.mul_vec(e.vectors.col(i));
                for (x, y) in av.iter().zip(e.vectors.col(i)) {
                    assert!((x - y * e.values[i]).norm() < 1e-10);
                }
                for j in 0..6 {
                    let ip = dotc(e.vectors.col(i), e.vectors.col(j));
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((ip - want).norm() < 1e-10);
                }
            }
            assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn two_by_two_closed_form() {
        let a = CMatrix::from_fn(2, 2, |r, c| match (r, c) {
            (0, 0) => Complex::new(2.0, 0.0),
            (1, 1) => Complex::new(5.0, 0.0),
            (0, 1) => Complex::new(1.0, 1.0),
            _ => Complex::new(1.0, -1.0),
        });
        let e = hermitian_eigen(&a).unwrap();
        let disc = ((2.0f64 - 5.0).powi(2) / 4.0 + 2.0).sqrt();
        assert!((e.values[0] - (3.5 - disc)).abs() < 1e-14);
        assert!((e.values[1] - (3.5 + disc)).abs() < 1e-14);
    }

    #[test]
    fn svd_matches_eigen_when_well_conditioned() {
        let a = random(40, 5, 7);
        let s = svd_jacobi(&a).unwrap();
        let e = hermitian_eigen(&a.gram()).unwrap();
        for (sv, ev) in s.sigma.iter().zip(&e.values) {
            assert!((sv * sv - ev).abs() < 1e-10 * ev.abs().max(1.0));
        }
        let av = a.mul_vec(s.v.col(0));
        assert!((norm2(&av) - s.sigma[0]).abs() < 1e-12);
    }

    #[test]
    fn svd_resolves_tiny_singular_values() {
        // columns 1, 1+ε: σ_min ≈ ε·‖·‖/√2, far below the √ε Gram floor
        let n = 50;
        let eps = 1e-11;
        let a = CMatrix::from_fn(n, 2, |r, c| {
            let t = r as f64 / n as f64;
            Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * t * (1.0 + c as f64 * eps))
        });
        let s = svd_jacobi(&a).unwrap();
        // |a^H b| = |sin(nθ/2)/sin(θ/2)|, θ = 2πε/n, so σ_min² ≈ n(n²-1)θ²/24
        let theta = 2.0 * std::f64::consts::PI * eps / n as f64;
        let nf = n as f64;
        let want = theta * (nf * (nf * nf - 1.0) / 24.0).sqrt();
        assert!(((s.sigma[0] - want) / want).abs() < 1e-3, "{} vs {want}", s.sigma[0]);
    }

    #[test]
    fn qr_preserves_gram() {
        let a = random(30, 4, 3);
        let r = householder_r(&a);
        let (g1, g2) = (a.gram(), r.gram());
        for i in 0..4 {
            for j in 0..4 {
                assert!((g1[(i, j)] - g2[(i, j)]).norm() < 1e-12);
            }
        }
    }
}
