use super::bessel::{bessel_first_zero, bessel_j};
use super::gamma::sphere_area;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Distance from the right endpoint `j_{d/2,1}/π` inside which the
/// closed-interval constant is used instead of the ratio form.
const POLE_GUARD: f64 = 1e-9;

fn half<T: Real>(d: usize) -> T {
    T::from_usize_lossy(d) / T::lit(2.0)
}

fn check_dim(d: usize) -> Result<()> {
    if !(2..=12).contains(&d) {
        return Err(Error::OutOfRange { what: "dimension", value: d as f64, lo: 2.0, hi: 12.0 });
    }
    Ok(())
}

/// `(j_{d/2-1,1}/π, j_{d/2,1}/π)`: the interval on which the ratio form applies.
pub fn c_alpha_interval<T: Real>(d: usize) -> Result<(T, T)> {
    check_dim(d)?;
    let lo = bessel_first_zero(half::<T>(d) - T::one())? / T::PI();
    let hi = bessel_first_zero(half::<T>(d))? / T::PI();
    Ok((lo, hi))
}

/// Constant for `α ≥ j_{d/2,1}/π`: `(1/|S^{d-1}|)(2π/j_{d/2,1})^d`.
pub fn c_alpha_extended<T: Real>(d: usize) -> Result<T> {
    check_dim(d)?;
    let j = bessel_first_zero(half::<T>(d))?;
    Ok((T::lit(2.0) * T::PI() / j).powi(d as i32) / sphere_area::<T>(d))
}

/// Left limit of the ratio form at `j_{d/2,1}/π`; equals `d · c_alpha_extended(d)`.
pub fn c_alpha_left_limit<T: Real>(d: usize) -> Result<T> {
    Ok(T::from_usize_lossy(d) * c_alpha_extended::<T>(d)?)
}

/// The ratio form `(1/|S^{d-1}|)(2/α)^d γ/(1+γ/d)`, `γ = -παJ_{d/2-1}(πα)/J_{d/2}(πα)`,
/// evaluated as `N/(J_{d/2} + N/d)` with `N = -παJ_{d/2-1}(πα)` so the pole of γ cancels.
pub fn c_alpha_ratio<T: Real>(alpha: T, d: usize) -> Result<T> {
    check_dim(d)?;
    let x = T::PI() * alpha;
    let n = -x * bessel_j(half::<T>(d) - T::one(), x)?;
    let j = bessel_j(half::<T>(d), x)?;
    let df = T::from_usize_lossy(d);
    let ratio = n / (j + n / df);
    Ok((T::lit(2.0) / alpha).powi(d as i32) * ratio / sphere_area::<T>(d))
}

/// The well-separated ball constant `c(α)`.
pub fn c_alpha<T: Real>(alpha: T, d: usize) -> Result<T> {
    let (lo, hi) = c_alpha_interval::<T>(d)?;
    if !(alpha > lo) {
        return Err(Error::NoMinorant { alpha: alpha.as_f64(), threshold: lo.as_f64() });
    }
    if alpha >= hi - T::lit(POLE_GUARD) {
        return c_alpha_extended(d);
    }
    Ok(c_alpha_ratio(alpha, d)?.max(T::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::unit_ball_volume;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol * b.abs().max(1e-300), "{a} vs {b}");
    }

    #[test]
    fn golden_interior_values() {
        close(c_alpha(1.0, 2).unwrap(), 0.797_993_600_597_455_421_07, 1e-12);
        close(c_alpha(1.1, 2).unwrap(), 0.847_563_875_654_427_810_17, 1e-12);
        close(c_alpha(1.2, 3).unwrap(), 0.586_583_290_878_631_090_07, 1e-12);
        close(c_alpha(1.5, 4).unwrap(), 0.444_462_095_803_826_381_01, 1e-12);
    }

    #[test]
    fn extended_branch() {
        let want = [
            0.427_952_450_003_718,
            0.217_571_374_694_208,
            0.113_505_636_339_995,
            0.058_507_932_246_453_2,
            0.029_419_778_447_293_1,
            0.014_366_138_376_968_7,
            0.006_804_329_628_730_51,
            0.003_126_476_470_426_51,
            0.001_394_761_343_169_65,
        ];
        for (i, &w) in want.iter().enumerate() {
            let d = i + 2;
            close(c_alpha_extended(d).unwrap(), w, 1e-12);
            let (_, hi) = c_alpha_interval::<f64>(d).unwrap();
            close(c_alpha(hi + 0.5, d).unwrap(), w, 1e-12);
        }
    }

    #[test]
    fn left_limit_normalised() {
        let want = [
            0.521_960_718_2,
            0.394_745_511_6,
            0.303_321_946_8,
            0.235_745_352_8,
            0.184_818_797_5,
            0.145_891_131_2,
            0.115_809_327_9,
            0.092_361_293_55,
            0.073_954_719_18,
        ];
        for (i, &w) in want.iter().enumerate() {
            let d = i + 2;
            let lim: f64 = c_alpha_left_limit(d).unwrap();
            close((lim / unit_ball_volume::<f64>(d)).sqrt(), w, 1e-9);
            let (_, hi) = c_alpha_interval::<f64>(d).unwrap();
            close(c_alpha_ratio(hi - 1e-6, d).unwrap(), lim, 1e-5);
        }
    }

    #[test]
    fn left_endpoint() {
        let (lo, _) = c_alpha_interval::<f64>(2).unwrap();
        assert!(matches!(c_alpha(lo, 2), Err(Error::NoMinorant { .. })));
        assert!(matches!(c_alpha(0.5, 3), Err(Error::NoMinorant { .. })));
        let near: f64 = c_alpha(lo + 1e-9, 2).unwrap();
        assert!(near >= 0.0 && near < 1e-7);
    }
}
