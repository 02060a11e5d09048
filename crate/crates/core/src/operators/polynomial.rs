use std::collections::BTreeMap;

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::scalar::{Exponent, Real};

/// `f(x) = Σ_n F(n) e^{2πi n·x}` with finitely many integer frequencies.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigPolynomial<T: Real> {
    d: usize,
    coeffs: BTreeMap<Vec<i64>, Complex<T>>,
}

impl<T: Real> TrigPolynomial<T> {
    pub fn zero(d: usize) -> Self {
        TrigPolynomial { d, coeffs: BTreeMap::new() }
    }

    pub fn constant(d: usize, c: Complex<T>) -> Self {
        let mut p = Self::zero(d);
        p.coeffs.insert(vec![0; d], c);
        p
    }

    /// `e^{2πi q·x}`.
    pub fn plane_wave(q: &[i64]) -> Self {
        let mut p = Self::zero(q.len());
        p.coeffs.insert(q.to_vec(), Complex::new(T::one(), T::zero()));
        p
    }

    pub fn from_terms(d: usize, terms: impl IntoIterator<Item = (Vec<i64>, Complex<T>)>) -> Result<Self> {
        let mut p = Self::zero(d);
        for (n, c) in terms {
            if n.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: n.len() });
            }
            *p.coeffs.entry(n).or_insert(Complex::new(T::zero(), T::zero())) += c;
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Complex<T>)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn evaluate(&self, x: &[T]) -> Complex<T> {
        let two_pi = T::lit(2.0) * T::PI();
        self.coeffs
            .iter()
            .map(|(n, &c)| {
                let ph: T = n.iter().zip(x).map(|(&a, &b)| T::from_i64_lossy(a) * b).sum();
                c * Complex::from_polar(T::one(), two_pi * ph)
            })
            .fold(Complex::new(T::zero(), T::zero()), |a, b| a + b)
    }

    /// `‖f‖_{L²(T^d)}` by Parseval.
    pub fn l2_norm(&self) -> T {
        self.coeffs.values().map(|c| c.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.d);
        for (a, &ca) in &self.coeffs {
            for (b, &cb) in &other.coeffs {
                let n: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                *out.coeffs.entry(n).or_insert(Complex::new(T::zero(), T::zero())) += ca * cb;
            }
        }
        out
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        TrigPolynomial { d: self.d, coeffs: self.coeffs.iter().map(|(n, &v)| (n.clone(), v * c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (n, &c) in &other.coeffs {
            *out.coeffs.entry(n.clone()).or_insert(Complex::new(T::zero(), T::zero())) += c;
        }
        out
    }

    /// Largest `|n|_p` over coefficients with modulus above `tol`.
    pub fn support_radius(&self, p: Exponent, tol: T) -> T {
        self.coeffs
            .iter()
            .filter(|(_, c)| c.norm() > tol)
            .map(|(n, _)| p.norm(&n.iter().map(|&v| T::from_i64_lossy(v)).collect::<Vec<_>>()))
            .fold(T::zero(), |a, b| a.max(b))
    }
}

/// Smallest `2^a 3^b 5^c ≥ n`; FFTs of such lengths avoid the prime-size paths.
fn smooth_size(n: usize) -> usize {
    (n.max(1)..)
        .find(|&k| {
            let mut r = k;
            for p in [2, 3, 5] {
                while r % p == 0 {
                    r /= p;
                }
            }
            r == 1
        })
        .expect("smooth numbers are unbounded")
}

/// In-place FFT along every axis of a row-major array with extents `dims`.
fn fft_axes(buf: &mut [Complex<f64>], dims: &[usize], inverse: bool) {
    let total: usize = dims.iter().product();
    let mut planner = FftPlanner::new();
    for axis in 0..dims.len() {
        let g = dims[axis];
        if g == 1 {
            continue;
        }
        let fft = if inverse { planner.plan_fft_inverse(g) } else { planner.plan_fft_forward(g) };
        let stride: usize = dims[axis + 1..].iter().product();
        let mut line = vec![Complex::new(0.0, 0.0); g];
        for start in 0..total {
            if (start / stride) % g != 0 {
                continue;
            }
            for (i, v) in line.iter_mut().enumerate() {
                *v = buf[start + i * stride];
            }
            fft.process(&mut line);
            for (i, v) in line.iter().enumerate() {
                buf[start + i * stride] = *v;
            }
        }
    }
}

impl TrigPolynomial<f64> {
    /// Frequency bounding box `(lo, extent)` per axis.
    fn bounding_box(&self) -> (Vec<i64>, Vec<usize>) {
        let mut lo = vec![i64::MAX; self.d];
        let mut hi = vec![i64::MIN; self.d];
        for n in self.coeffs.keys() {
            for l in 0..self.d {
                lo[l] = lo[l].min(n[l]);
                hi[l] = hi[l].max(n[l]);
            }
        }
        let ext = lo.iter().zip(&hi).map(|(a, b)| (b - a + 1) as usize).collect();
        (lo, ext)
    }

    fn to_dense(&self, lo: &[i64], dims: &[usize]) -> Vec<Complex<f64>> {
        let mut buf = vec![Complex::new(0.0, 0.0); dims.iter().product()];
        for (n, &c) in &self.coeffs {
            let mut idx = 0usize;
            for l in 0..self.d {
                idx = idx * dims[l] + (n[l] - lo[l]) as usize;
            }
            buf[idx] += c;
        }
        buf
    }

    /// Zero-padded FFT convolution on the joint bounding box: the lower
    /// corner, the extents and the row-major coefficients.
    fn convolve_dense(&self, other: &Self) -> (Vec<i64>, Vec<usize>, Vec<Complex<f64>>) {
        let (la, ea) = self.bounding_box();
        let (lb, eb) = other.bounding_box();
        let dims: Vec<usize> = ea.iter().zip(&eb).map(|(a, b)| smooth_size(a + b - 1)).collect();
        let lo: Vec<i64> = la.iter().zip(&lb).map(|(a, b)| a + b).collect();
        let mut fa = self.to_dense(&la, &dims);
        let mut fb = other.to_dense(&lb, &dims);
        fft_axes(&mut fa, &dims, false);
        fft_axes(&mut fb, &dims, false);
        let scale = 1.0 / fa.len() as f64;
        for (a, b) in fa.iter_mut().zip(&fb) {
            *a *= b * scale;
        }
        fft_axes(&mut fa, &dims, true);
        (lo, dims, fa)
    }

    /// Product by zero-padded FFT convolution. Coefficients below `1e-15`
    /// times the largest one are dropped as round-off.
    pub fn mul_fft(&self, other: &Self) -> Self {
        if self.is_empty() || other.is_empty() {
            return Self::zero(self.d);
        }
        if self.len().saturating_mul(other.len()) <= 4096 {
            return self.mul(other);
        }
        let (lo, dims, buf) = self.convolve_dense(other);
        let big = buf.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut n = vec![0i64; self.d];
        // row-major order is lexicographic in the multi-index, so the map is bulk-built
        let coeffs: BTreeMap<Vec<i64>, Complex<f64>> = buf
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > 1e-15 * big)
            .map(|(idx, &c)| {
                let mut rem = idx;
                for l in (0..self.d).rev() {
                    n[l] = lo[l] + (rem % dims[l]) as i64;
                    rem /= dims[l];
                }
                (n.clone(), c)
            })
            .collect();
        TrigPolynomial { d: self.d, coeffs }
    }

    fn reflected(&self) -> Self {
        TrigPolynomial {
            d: self.d,
            coeffs: self.coeffs.iter().map(|(n, c)| (n.iter().map(|v| -v).collect(), c.conj())).collect(),
        }
    }

    /// `R(δ) = Σ_n F(n) conj(F(n-δ))`, the coefficients of `|f|²`.
    pub fn autocorrelation(&self) -> Self {
        self.mul_fft(&self.reflected())
    }

    /// [`autocorrelation`](Self::autocorrelation) as flat shifts (`d`
    /// coordinates per term) and coefficients, keeping `|R(δ)|` above
    /// `1e-15 max |R|`.
    pub fn autocorrelation_terms(&self) -> (Vec<f64>, Vec<Complex<f64>>) {
        let mut shifts = Vec::new();
        let mut coeffs = Vec::new();
        if self.len() <= 64 {
            for (n, &c) in self.autocorrelation().terms() {
                shifts.extend(n.iter().map(|&v| v as f64));
                coeffs.push(c);
            }
            return (shifts, coeffs);
        }
        let (lo, dims, buf) = self.convolve_dense(&self.reflected());
        let big = buf.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut n = vec![0.0; self.d];
        for (idx, &c) in buf.iter().enumerate() {
            if c.norm() <= 1e-15 * big {
                continue;
            }
            let mut rem = idx;
            for l in (0..self.d).rev() {
                n[l] = (lo[l] + (rem % dims[l]) as i64) as f64;
                rem /= dims[l];
            }
            shifts.extend_from_slice(&n);
            coeffs.push(c);
        }
        (shifts, coeffs)
    }

    /// Values on the grid `{j/G : j ∈ {0..G-1}^d}` in row-major order.
    ///
    /// Exact for every `G`: frequencies are folded modulo `G` before an
    /// inverse FFT along each axis.
    pub fn grid_values(&self, g: usize) -> Vec<Complex<f64>> {
        let d = self.d;
        let total = g.pow(d as u32);
        let mut buf = vec![Complex::new(0.0, 0.0); total];
        for (n, &c) in &self.coeffs {
            let mut idx = 0usize;
            for &v in n {
                idx = idx * g + v.rem_euclid(g as i64) as usize;
            }
            buf[idx] += c;
        }
        fft_axes(&mut buf, &vec![g; d], true);
        buf
    }

    /// `max |f|` over the uniform grid with `g` points per axis.
    pub fn sup_norm_grid(&self, g: usize) -> f64 {
        self.grid_values(g).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Grid sup norm refined by doubling until it changes by less than `rtol`
    /// relatively (or `g_max` is reached).
    pub fn sup_norm_refined(&self, g0: usize, g_max: usize, rtol: f64) -> f64 {
        let mut g = g0;
        let mut est = self.sup_norm_grid(g);
        while g * 2 <= g_max {
            g *= 2;
            let next = self.sup_norm_grid(g);
            let done = (next - est).abs() <= rtol * next.abs();
            est = est.max(next);
            if done {
                break;
            }
        }
        est
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::dirichlet;

    fn normalised_dirichlet(m: i64, d: usize) -> TrigPolynomial<f64> {
        let side = (2 * m + 1) as f64;
        let c = Complex::new(1.0 / side.powi(d as i32), 0.0);
        let terms = (-m..=m).flat_map(|a| (-m..=m).map(move |b| (vec![a, b], c)));
        TrigPolynomial::from_terms(d, terms).unwrap()
    }

    #[test]
    fn dirichlet_values() {
        let m = 3;
        let f = normalised_dirichlet(m, 2);
        assert!((f.evaluate(&[0.0, 0.0]) - Complex::new(1.0, 0.0)).norm() < 1e-14);
        assert!(f.evaluate(&[1.0 / 7.0, 0.0]).norm() < 1e-14);
        let x = [0.13, -0.31];
        let want = dirichlet(3, x[0]) * dirichlet(3, x[1]) / 49.0;
        assert!((f.evaluate(&x).re - want).abs() < 1e-14);
    }

    #[test]
    fn grid_matches_direct_and_parseval() {
        let f = normalised_dirichlet(3, 2).mul(&TrigPolynomial::plane_wave(&[5, -9]));
        let g = 16; // smaller than the frequency span: exercises aliasing
        let vals = f.grid_values(g);
        for (i, j) in [(0usize, 0usize), (3, 7), (15, 1)] {
            let x = [i as f64 / g as f64, j as f64 / g as f64];
            assert!((vals[i * g + j] - f.evaluate(&x)).norm() < 1e-12);
        }
        let g = 64;
        let quad: f64 = f.grid_values(g).iter().map(|z| z.norm_sqr()).sum::<f64>() / (g * g) as f64;
        assert!((quad - f.l2_norm().powi(2)).abs() < 1e-6 * quad);
        assert!((f.sup_norm_grid(g) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fft_product_matches_direct() {
        let a = normalised_dirichlet(7, 2).add(&TrigPolynomial::plane_wave(&[9, -3]));
        let b = normalised_dirichlet(5, 2).scale(Complex::new(0.3, -1.2));
        let direct = a.mul(&b);
        let fast = a.mul_fft(&b);
        for (n, c) in direct.terms() {
            let f = fast.coeffs.get(n).copied().unwrap_or_default();
            assert!((f - c).norm() < 1e-14, "{n:?}");
        }
        let r = a.autocorrelation();
        let z = [0.17, -0.31];
        assert!((r.evaluate(&z) - a.evaluate(&z).norm_sqr()).norm() < 1e-12);
    }

    #[test]
    fn product_and_support() {
        let a = TrigPolynomial::<f64>::plane_wave(&[1, 0]).add(&TrigPolynomial::constant(2, Complex::new(1.0, 0.0)));
        let b = a.mul(&a);
        assert_eq!(b.len(), 3);
        assert_eq!(b.support_radius(Exponent::One, 1e-12), 2.0);
        let x = [0.3, 0.1];
        assert!((b.evaluate(&x) - a.evaluate(&x).powi(2)).norm() < 1e-13);
    }
}
