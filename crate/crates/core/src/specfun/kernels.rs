use super::bessel::bessel_j_scaled;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// `D_m(t) = Σ_{|n|≤m} e^{2πint}`.
pub fn dirichlet<T: Real>(m: u64, t: T) -> T {
    let n = T::lit((2 * m + 1) as f64);
    let s = (T::PI() * t).sin();
    if s.abs() < T::lit(1e-12) {
        return n;
    }
    (n * T::PI() * t).sin() / s
}

/// `sin(πt)/(πt)` with `sinc(0) = 1`.
pub fn sinc<T: Real>(t: T) -> T {
    let x = T::PI() * t;
    if x.abs() < T::lit(1e-8) {
        T::one() - x * x / T::lit(6.0)
    } else {
        x.sin() / x
    }
}

/// `∫_{|ω|_2 ≤ m} e^{2πiω·x} dω = (m/|x|)^{d/2} J_{d/2}(2πm|x|)`, `|B_m|` at `x = 0`.
pub fn ball_indicator_ft<T: Real>(m: T, x: &[T]) -> Result<T> {
    let d = x.len();
    if d == 0 {
        return Err(Error::InvalidArgument("empty vector".into()));
    }
    let r = x.iter().map(|&v| v * v).sum::<T>().sqrt();
    let z = T::lit(2.0) * T::PI() * m * r;
    let nu = T::from_usize_lossy(d) / T::lit(2.0);
    // (m/r)^ν J_ν(2πmr) = π^ν m^{2ν} · J_ν(z)/(z/2)^ν
    let scaled = bessel_j_scaled(nu, z)?;
    Ok(T::PI().powf(nu) * m.powi(d as i32) * scaled)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dirichlet_values() {
        assert_eq!(dirichlet(3, 0.0), 7.0);
        assert!(dirichlet(1, 1.0 / 3.0_f64).abs() < 1e-14);
        assert!((dirichlet(2, 0.1_f64) - 3.236_067_977_499_789_522_7).abs() < 1e-13);
        // matches the direct sum everywhere, including near integers
        for &t in &[1.0_f64, -1.0, 2.0, 0.5, 1.0 + 1e-14, 0.37] {
            for m in 0..4u64 {
                let direct: f64 = (-(m as i64)..=m as i64)
                    .map(|n| (2.0 * std::f64::consts::PI * n as f64 * t).cos())
                    .sum();
                assert!((dirichlet(m, t) - direct).abs() < 1e-9, "m={m} t={t}");
            }
        }
    }

    #[test]
    fn dirichlet_l2_norm() {
        let m = 4u64;
        let n = 4000;
        let q: f64 = (0..n)
            .map(|i| dirichlet(m, i as f64 / n as f64).powi(2))
            .sum::<f64>()
            / n as f64;
        assert!((q - 9.0).abs() / 9.0 < 1e-6);
    }

    #[test]
    fn sinc_values() {
        assert_eq!(sinc(0.0_f64), 1.0);
        assert!((sinc(0.25_f64) - 2.0 * 2f64.sqrt() / std::f64::consts::PI).abs() < 1e-15);
        assert!(sinc(1.0_f64).abs() < 1e-15);
    }

    #[test]
    fn ball_ft() {
        let v = ball_indicator_ft(1.0, &[0.5_f64, 0.0]).unwrap();
        assert!((v - 0.569_230_686_359_505_514_69).abs() < 1e-13);
        let w = ball_indicator_ft(1.0, &[0.3_f64, 0.4]).unwrap();
        let w2 = ball_indicator_ft(1.0, &[0.0_f64, 0.5]).unwrap();
        assert!((w - v).abs() < 1e-14 && (w2 - v).abs() < 1e-14);
        let z = ball_indicator_ft(2.0, &[0.0_f64, 0.0, 0.0]).unwrap();
        assert!((z - 32.0 * std::f64::consts::PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn ball_ft_against_polar_quadrature() {
        // ∫_0^m ∫_0^{2π} e^{2πi ρ |x| cos θ} ρ dθ dρ with Gauss-Legendre in ρ and a
        // periodic trapezoid in θ
        let (m, r) = (1.3_f64, 0.37);
        let nodes = gauss_legendre(40);
        let nt = 256;
        let mut acc = 0.0;
        for &(xi, wi) in &nodes {
            let rho = 0.5 * m * (xi + 1.0);
            let inner: f64 = (0..nt)
                .map(|j| {
                    let th = 2.0 * std::f64::consts::PI * j as f64 / nt as f64;
                    (2.0 * std::f64::consts::PI * rho * r * th.cos()).cos()
                })
                .sum::<f64>()
                * 2.0
                * std::f64::consts::PI
                / nt as f64;
            acc += 0.5 * m * wi * rho * inner;
        }
        let v = ball_indicator_ft(m, &[r, 0.0]).unwrap();
        assert!((v - acc).abs() < 1e-8, "{v} vs {acc}");
    }

    fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
        (1..=n)
            .map(|i| {
                let mut x = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
                let mut dp = 0.0;
                for _ in 0..100 {
                    let (mut p0, mut p1) = (1.0, x);
                    for k in 2..=n {
                        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                        p0 = p1;
                        p1 = p2;
                    }
                    dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                    let dx = p1 / dp;
                    x -= dx;
                    if dx.abs() < 1e-16 {
                        break;
                    }
                }
                (x, 2.0 / ((1.0 - x * x) * dp * dp))
            })
            .collect()
    }
}
