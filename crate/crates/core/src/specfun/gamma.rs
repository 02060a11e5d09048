use crate::scalar::Real;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for real `x` via the Lanczos approximation (reflection below 1/2).
pub fn gamma<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        let pi = T::PI();
        return pi / ((pi * x).sin() * gamma(T::one() - x));
    }
    let x = x - T::one();
    let mut a = T::lit(LANCZOS[0]);
    let t = x + T::lit(LANCZOS_G) + half;
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += T::lit(c) / (x + T::from_usize_lossy(i));
    }
    T::lit(2.0 * std::f64::consts::PI).sqrt() * t.powf(x + half) * (-t).exp() * a
}

/// Surface area `|S^{d-1}| = 2π^{d/2}/Γ(d/2)` of the unit sphere in `R^d`.
pub fn sphere_area<T: Real>(d: usize) -> T {
    let h = T::from_usize_lossy(d) / T::lit(2.0);
    T::lit(2.0) * T::PI().powf(h) / gamma(h)
}

/// Volume `|B_1| = π^{d/2}/Γ(d/2+1)` of the Euclidean unit ball in `R^d`.
pub fn unit_ball_volume<T: Real>(d: usize) -> T {
    let h = T::from_usize_lossy(d) / T::lit(2.0);
    T::PI().powf(h) / gamma(h + T::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn half_integers_and_integers() {
        assert!(rel(gamma(0.5), 1.772_453_850_905_516_027_3) < 1e-14);
        assert!(rel(gamma(3.5), 3.323_350_970_447_842_551_2) < 1e-14);
        assert!(rel(gamma(5.5), 52.342_777_784_553_520_181) < 1e-14);
        let mut f = 1.0;
        for n in 1..15 {
            assert!(rel(gamma(n as f64), f) < 1e-13, "n = {n}");
            f *= n as f64;
        }
    }

    #[test]
    fn ball_and_sphere() {
        assert!(rel(unit_ball_volume::<f64>(2), std::f64::consts::PI) < 1e-14);
        assert!(rel(unit_ball_volume::<f64>(3), 4.0 * std::f64::consts::PI / 3.0) < 1e-14);
        assert!(rel(sphere_area::<f64>(3), 4.0 * std::f64::consts::PI) < 1e-14);
        assert!(rel(sphere_area::<f64>(2), 2.0 * std::f64::consts::PI) < 1e-14);
    }
}
