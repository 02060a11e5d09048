use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{FrequencyDomain, Shape};
use crate::operators::TrigPolynomial;
use crate::scalar::Exponent;
use crate::specfun::{ball_indicator_ft, dirichlet, sinc, unit_ball_volume};

const TAU: f64 = 2.0 * std::f64::consts::PI;

fn cis(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * t)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `(e^{2πi a·y} - e^{2πi a·u}) / (1 - e^{2πi a·u})`: 1 at `y = 0`, 0 at `y = u`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlaneWaveFactor {
    pub frequency: Vec<f64>,
    pub root: Vec<f64>,
    pub denominator: Complex64,
}

impl PlaneWaveFactor {
    pub fn new(frequency: Vec<f64>, root: Vec<f64>) -> Result<Self> {
        if frequency.len() != root.len() {
            return Err(Error::DimensionMismatch { expected: frequency.len(), got: root.len() });
        }
        let denominator = Complex64::new(1.0, 0.0) - cis(dot(&frequency, &root));
        if !(denominator.norm() > 1e-14) {
            return Err(Error::InvalidArgument("plane-wave factor with vanishing denominator".into()));
        }
        Ok(PlaneWaveFactor { frequency, root, denominator })
    }

    pub fn evaluate(&self, y: &[f64]) -> Complex64 {
        // e^{iA} - e^{iB} = 2i sin((A-B)/2) e^{i(A+B)/2}, with A - B taken from y - u
        // keeps the value on the plane accurate when the denominator is small
        let diff: f64 = self.frequency.iter().zip(y).zip(&self.root).map(|((a, b), c)| a * (b - c)).sum();
        let mid = dot(&self.frequency, &self.root) + 0.5 * diff;
        let s = (std::f64::consts::PI * diff).sin();
        Complex64::new(0.0, 2.0 * s) * cis(mid) / self.denominator
    }

    /// The two plane waves `(frequency, coefficient)` the factor expands into.
    pub fn expand(&self) -> [(Vec<f64>, Complex64); 2] {
        let e = cis(dot(&self.frequency, &self.root));
        [
            (self.frequency.clone(), 1.0 / self.denominator),
            (vec![0.0; self.frequency.len()], -e / self.denominator),
        ]
    }
}

/// Kernel multiplying a plane-wave product; both kinds equal 1 at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Kernel {
    None,
    /// `|Ω ∩ Z^d|^{-1} Σ_{n ∈ Ω ∩ Z^d} e^{2πi n·y}` with `Ω = Ω^p_radius`.
    Dirichlet { shape: Shape, radius: f64 },
    /// Inverse transform of `1_Ω/|Ω|`.
    LowPass { shape: Shape, radius: f64 },
}

impl Kernel {
    pub fn radius(&self) -> f64 {
        match *self {
            Kernel::None => 0.0,
            Kernel::Dirichlet { radius, .. } | Kernel::LowPass { radius, .. } => radius,
        }
    }

    fn evaluate(&self, y: &[f64]) -> Result<f64> {
        let d = y.len();
        Ok(match *self {
            Kernel::None => 1.0,
            Kernel::Dirichlet { shape: Shape::Cube, radius } => {
                let m = radius.floor() as u64;
                let n = (2 * m + 1) as f64;
                y.iter().map(|&t| dirichlet(m, t) / n).product()
            }
            Kernel::Dirichlet { shape: Shape::Ball, .. } => {
                let k = self.dirichlet_polynomial(d)?;
                k.evaluate(y).re
            }
            Kernel::LowPass { shape: Shape::Cube, radius } => {
                y.iter().map(|&t| sinc(2.0 * radius * t)).product()
            }
            Kernel::LowPass { shape: Shape::Ball, radius } => {
                ball_indicator_ft(radius, y)? / (unit_ball_volume::<f64>(d) * radius.powi(d as i32))
            }
        })
    }

    fn dirichlet_polynomial(&self, d: usize) -> Result<TrigPolynomial<f64>> {
        let Kernel::Dirichlet { shape, radius } = *self else {
            return Err(Error::InvalidArgument("not a Dirichlet kernel".into()));
        };
        let idx = FrequencyDomain::<f64>::discrete(shape, radius, d)?.enumerate_indices()?;
        let w = Complex64::new(1.0 / idx.len() as f64, 0.0);
        TrigPolynomial::from_terms(d, idx.into_iter().map(|n| (n, w)))
    }

    /// `|Ω ∩ (Ω + ζ)|` for the low-pass kernel's frequency set.
    fn overlap(shape: Shape, radius: f64, zeta: &[f64]) -> f64 {
        match shape {
            Shape::Cube => zeta.iter().map(|&z| (2.0 * radius - z.abs()).max(0.0)).product(),
            Shape::Ball => ball_overlap(radius, zeta.iter().map(|z| z * z).sum::<f64>().sqrt(), zeta.len()),
        }
    }
}

/// `∫_0^φ sin^n`, by the reduction formula.
fn sin_power_integral(n: usize, phi: f64) -> f64 {
    let (s, c) = phi.sin_cos();
    let mut lo = phi; // n = 0
    let mut hi = 1.0 - c; // n = 1
    if n == 0 {
        return lo;
    }
    for k in 2..=n {
        let next = -s.powi(k as i32 - 1) * c / k as f64 + (k - 1) as f64 / k as f64 * lo;
        lo = hi;
        hi = next;
    }
    hi
}

/// Volume of the intersection of two radius-`r` balls whose centres are `dist` apart.
pub fn ball_overlap(r: f64, dist: f64, d: usize) -> f64 {
    if dist >= 2.0 * r {
        return 0.0;
    }
    let phi0 = (dist / (2.0 * r)).acos();
    2.0 * unit_ball_volume::<f64>(d - 1) * r.powi(d as i32) * sin_power_integral(d, phi0)
}

/// `y ↦ K(y) · Π_k factor_k(y) · extra(y)` with `y = x - center`.
#[derive(Clone, Debug, Serialize)]
pub struct InterpolantProduct {
    pub d: usize,
    pub center: Vec<f64>,
    pub p: Exponent,
    pub factors: Vec<PlaneWaveFactor>,
    pub kernel: Kernel,
    /// Trigonometric polynomial multiplier in the local variable `y`.
    #[serde(skip)]
    pub extra: Option<TrigPolynomial<f64>>,
    /// `ℓ^p` radius certified to contain the frequency support.
    pub bandwidth_certificate: f64,
    /// Analytic bound on the norm the construction controls (sup or `L²`).
    pub norm_bound: f64,
}

impl InterpolantProduct {
    pub fn new(d: usize, p: Exponent, mut factors: Vec<PlaneWaveFactor>, kernel: Kernel) -> Self {
        factors.sort_by(|a, b| a.root.partial_cmp(&b.root).expect("finite roots"));
        let bandwidth_certificate =
            kernel.radius() + factors.iter().map(|f| p.norm(&f.frequency)).sum::<f64>();
        InterpolantProduct {
            d,
            center: vec![0.0; d],
            p,
            factors,
            kernel,
            extra: None,
            bandwidth_certificate,
            norm_bound: f64::INFINITY,
        }
    }

    /// Replaces the kernel, keeping the certificate in step.
    pub fn with_kernel(mut self, kernel: Kernel) -> Self {
        self.bandwidth_certificate += kernel.radius() - self.kernel.radius();
        self.kernel = kernel;
        self
    }

    pub fn centered_at(mut self, center: &[f64]) -> Self {
        self.center = center.to_vec();
        self
    }

    /// Multiplies by a trigonometric polynomial in the local variable whose
    /// frequency support has `ℓ^p` radius at most `radius`.
    pub fn with_extra(mut self, extra: TrigPolynomial<f64>, radius: f64) -> Self {
        let merged = match self.extra.take() {
            Some(e) => e.mul(&extra),
            None => extra,
        };
        self.extra = Some(merged);
        self.bandwidth_certificate += radius;
        self
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<Complex64> {
        if x.len() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, got: x.len() });
        }
        let y: Vec<f64> = x.iter().zip(&self.center).map(|(a, c)| a - c).collect();
        let mut v = Complex64::new(self.kernel.evaluate(&y)?, 0.0);
        for f in &self.factors {
            v *= f.evaluate(&y);
        }
        if let Some(e) = &self.extra {
            v *= e.evaluate(&y);
        }
        Ok(v)
    }

    /// `Π_k factor_k` expanded into plane waves, equal frequencies merged.
    pub fn factor_waves(&self) -> Vec<(Vec<f64>, Complex64)> {
        let key = |v: &[f64]| v.iter().map(|x| (x + 0.0).to_bits()).collect::<Vec<u64>>();
        let zero = vec![0.0; self.d];
        let mut acc: BTreeMap<Vec<u64>, (Vec<f64>, Complex64)> = BTreeMap::new();
        acc.insert(key(&zero), (zero, Complex64::new(1.0, 0.0)));
        for f in &self.factors {
            let mut out: BTreeMap<Vec<u64>, (Vec<f64>, Complex64)> = BTreeMap::new();
            for (xi, c) in acc.values() {
                for (eta, e) in f.expand() {
                    let s: Vec<f64> = xi.iter().zip(&eta).map(|(a, b)| a + b).collect();
                    out.entry(key(&s)).or_insert((s, Complex64::new(0.0, 0.0))).1 += c * e;
                }
            }
            acc = out;
        }
        acc.into_values().collect()
    }

    fn extra_or_one(&self) -> TrigPolynomial<f64> {
        self.extra.clone().unwrap_or_else(|| TrigPolynomial::constant(self.d, Complex64::new(1.0, 0.0)))
    }

    /// Coefficients in the local variable; needs integer frequencies and no
    /// low-pass kernel.
    pub fn to_trig_polynomial(&self) -> Result<TrigPolynomial<f64>> {
        let mut terms = Vec::new();
        for (xi, c) in self.factor_waves() {
            let n: Vec<i64> = xi.iter().map(|v| v.round() as i64).collect();
            if xi.iter().zip(&n).any(|(v, &r)| (v - r as f64).abs() > 1e-9) {
                return Err(Error::InvalidArgument("non-integer frequency in a polynomial product".into()));
            }
            terms.push((n, c));
        }
        let mut poly = TrigPolynomial::from_terms(self.d, terms)?;
        if let Some(e) = &self.extra {
            poly = poly.mul_fft(e);
        }
        match self.kernel {
            Kernel::None => Ok(poly),
            Kernel::Dirichlet { .. } => Ok(self.kernel.dirichlet_polynomial(self.d)?.mul_fft(&poly)),
            Kernel::LowPass { .. } => {
                Err(Error::InvalidArgument("low-pass products are not trigonometric polynomials".into()))
            }
        }
    }

    /// Coefficients in the global variable `x` (phases absorb the centre).
    pub fn to_global_polynomial(&self) -> Result<TrigPolynomial<f64>> {
        let local = self.to_trig_polynomial()?;
        let center = self.center.clone();
        TrigPolynomial::from_terms(
            self.d,
            local.terms().map(|(n, &c)| {
                let t: f64 = n.iter().zip(&center).map(|(&a, b)| a as f64 * b).sum();
                (n.clone(), c * cis(-t))
            }),
        )
    }

    pub fn is_polynomial(&self) -> bool {
        !matches!(self.kernel, Kernel::LowPass { .. })
    }

    /// `L²(T^d)` norm for polynomial products (Parseval), `L²(R^d)` norm for
    /// low-pass products (exact overlaps of shifted kernel spectra).
    pub fn l2_norm(&self) -> Result<f64> {
        match self.kernel {
            Kernel::LowPass { shape, radius } => {
                // ‖f‖² = Σ_{i,j} c_i c̄_j Σ_δ R(δ) |Ω ∩ (Ω + ξ_i - ξ_j + δ)| / |Ω|²
                // with R the autocorrelation of the polynomial multiplier; wave
                // pairs are merged by their frequency difference first
                let waves = self.factor_waves();
                let mut pairs: Vec<(Vec<f64>, Complex64)> = Vec::new();
                for (xi, a) in &waves {
                    for (eta, b) in &waves {
                        let diff: Vec<f64> = xi.iter().zip(eta).map(|(u, v)| u - v).collect();
                        match pairs.iter_mut().find(|(k, _)| k == &diff) {
                            Some(entry) => entry.1 += a * b.conj(),
                            None => pairs.push((diff, a * b.conj())),
                        }
                    }
                }
                let (shifts, corr) = self.extra_or_one().autocorrelation_terms();
                let vol = FrequencyDomain::<f64>::continuous(shape, radius, self.d)?.volume();
                let ball_scale = 2.0 * unit_ball_volume::<f64>(self.d - 1) * radius.powi(self.d as i32);
                let reach_sq = 4.0 * radius * radius;
                let mut sum = Complex64::new(0.0, 0.0);
                let mut zeta = vec![0.0; self.d];
                for (diff, ab) in &pairs {
                    let mut inner = Complex64::new(0.0, 0.0);
                    for (delta, r) in shifts.chunks_exact(self.d).zip(&corr) {
                        for l in 0..self.d {
                            zeta[l] = diff[l] + delta[l];
                        }
                        let o = match shape {
                            Shape::Cube => Kernel::overlap(shape, radius, &zeta),
                            Shape::Ball => {
                                let dsq: f64 = zeta.iter().map(|z| z * z).sum();
                                if dsq >= reach_sq {
                                    0.0
                                } else {
                                    let phi0 = (dsq.sqrt() / (2.0 * radius)).acos();
                                    ball_scale * sin_power_integral(self.d, phi0)
                                }
                            }
                        };
                        if o != 0.0 {
                            inner += r * o;
                        }
                    }
                    sum += ab * inner;
                }
                Ok(sum.re.max(0.0).sqrt() / vol)
            }
            _ => Ok(self.to_trig_polynomial()?.l2_norm()),
        }
    }

    /// Grid estimate of `sup |f|` for polynomial products.
    pub fn sup_norm_grid(&self) -> Result<f64> {
        let poly = self.to_trig_polynomial()?;
        let span = poly.support_radius(Exponent::Inf, 0.0);
        let (g0, g_max) = match self.d {
            1 => (512, 8192),
            2 => (256, 1024),
            3 => (32, 128),
            _ => (8, 32),
        };
        let g0 = g0.max(((4.0 * span + 2.0) as usize).next_power_of_two()).min(g_max);
        Ok(poly.sup_norm_refined(g0, g_max, 1e-3))
    }

    /// Frequency-support radius measured from coefficients above `tol`.
    pub fn numerical_support(&self, tol: f64) -> Result<f64> {
        match self.kernel {
            Kernel::LowPass { radius, .. } => {
                let extra = self.extra_or_one();
                let mut best: f64 = 0.0;
                for (xi, c) in self.factor_waves() {
                    for (n, e) in extra.terms() {
                        if (c * e).norm() > tol {
                            let f: Vec<f64> = xi.iter().zip(n).map(|(a, &b)| a + b as f64).collect();
                            best = best.max(self.p.norm(&f));
                        }
                    }
                }
                Ok(radius + best)
            }
            _ => Ok(self.to_trig_polynomial()?.support_radius(self.p, tol)),
        }
    }
}
