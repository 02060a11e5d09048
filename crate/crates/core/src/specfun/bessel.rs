use super::gamma::gamma;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest argument accepted by [`bessel_j`].
pub const BESSEL_X_MAX: f64 = 1.0e4;

/// Below this argument the power series is summed directly; above, Miller's
/// backward recurrence is used (the series cancels catastrophically for large x).
const SERIES_X_MAX: f64 = 10.0;

fn check_args<T: Real>(nu: T, x: T) -> Result<()> {
    if !(nu >= T::zero()) {
        return Err(Error::OutOfRange {
            what: "Bessel order",
            value: nu.as_f64(),
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    if !(x >= T::zero() && x <= T::lit(BESSEL_X_MAX)) {
        return Err(Error::OutOfRange {
            what: "Bessel argument",
            value: x.as_f64(),
            lo: 0.0,
            hi: BESSEL_X_MAX,
        });
    }
    Ok(())
}

/// `Σ_k (-1)^k (x/2)^{2k} / (k! Γ(ν+k+1))`, i.e. `J_ν(x)/(x/2)^ν`.
fn scaled_series<T: Real>(nu: T, x: T) -> T {
    let q = x * x / T::lit(4.0);
    let mut term = T::one() / gamma(nu + T::one());
    let mut sum = term;
    let mut comp = T::zero();
    let mut k = T::zero();
    loop {
        k += T::one();
        term = -term * q / (k * (nu + k));
        // Kahan summation keeps the alternating tail honest
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term.abs() <= T::epsilon() * T::lit(1e-3) * sum.abs().max(T::min_positive_value()) {
            break;
        }
    }
    sum
}

/// Miller backward recurrence normalised by
/// `(x/2)^ν/Γ(ν+1) = Σ_k (ν+2k) Γ(ν+k)/(k!Γ(ν+1)) J_{ν+2k}(x)`.
fn miller<T: Real>(nu: T, x: T) -> T {
    let xf = x.as_f64();
    let mut n = (xf + 20.0 * xf.cbrt() + 30.0).ceil() as usize;
    n += n % 2;
    let two = T::lit(2.0);
    let big = T::lit(1e250);
    let mut f_next = T::zero();
    let mut f = T::lit(1e-30);
    let mut norm = T::zero();
    // r_1 = 1, r_{k+1} = r_k (ν+k)/(k+1); weight_k = (ν+2k) r_k, weight_0 = 1
    let mut weights = vec![T::one(); n / 2 + 1];
    let mut r = T::one();
    for k in 1..=n / 2 {
        let kf = T::from_usize_lossy(k);
        weights[k] = (nu + two * kf) * r;
        r = r * (nu + kf) / (kf + T::one());
    }
    let weight = |k: usize| weights[k];
    let mut j = n;
    if j % 2 == 0 {
        norm += weight(j / 2) * f;
    }
    while j > 0 {
        let order = nu + T::from_usize_lossy(j);
        let f_prev = two * order / x * f - f_next;
        f_next = f;
        f = f_prev;
        j -= 1;
        if j % 2 == 0 {
            norm += weight(j / 2) * f;
        }
        if f.abs() > big {
            f = f / big;
            f_next = f_next / big;
            norm = norm / big;
        }
    }
    let target = (x / two).powf(nu) / gamma(nu + T::one());
    f * target / norm
}

/// Bessel function of the first kind `J_ν(x)` for `ν ≥ 0`, `0 ≤ x ≤ 10^4`.
pub fn bessel_j<T: Real>(nu: T, x: T) -> Result<T> {
    check_args(nu, x)?;
    if x == T::zero() {
        return Ok(if nu == T::zero() { T::one() } else { T::zero() });
    }
    if x <= T::lit(SERIES_X_MAX) {
        Ok((x / T::lit(2.0)).powf(nu) * scaled_series(nu, x))
    } else {
        Ok(miller(nu, x))
    }
}

/// `J_ν(x)/(x/2)^ν`, finite at `x = 0` where it equals `1/Γ(ν+1)`.
pub fn bessel_j_scaled<T: Real>(nu: T, x: T) -> Result<T> {
    check_args(nu, x)?;
    if x <= T::lit(SERIES_X_MAX) {
        Ok(scaled_series(nu, x))
    } else {
        Ok(miller(nu, x) / (x / T::lit(2.0)).powf(nu))
    }
}

/// First positive zero `j_{ν,1}` for `0 ≤ ν ≤ 6`.
pub fn bessel_first_zero<T: Real>(nu: T) -> Result<T> {
    if !(nu >= T::zero() && nu <= T::lit(6.0)) {
        return Err(Error::OutOfRange { what: "Bessel order", value: nu.as_f64(), lo: 0.0, hi: 6.0 });
    }
    let step = T::lit(0.05);
    let mut a = nu + T::one();
    let mut fa = bessel_j(nu, a)?;
    let end = nu + T::lit(10.0);
    while a < end {
        let b = a + step;
        let fb = bessel_j(nu, b)?;
        if fa == T::zero() {
            return Ok(a);
        }
        if fa * fb <= T::zero() {
            return refine(nu, a, b, fa);
        }
        a = b;
        fa = fb;
    }
    Err(Error::NoBracket { nu: nu.as_f64() })
}

fn refine<T: Real>(nu: T, mut a: T, mut b: T, fa: T) -> Result<T> {
    let sa = fa.signum();
    for _ in 0..200 {
        let mid = (a + b) / T::lit(2.0);
        if mid <= a || mid >= b {
            break;
        }
        let fm = bessel_j(nu, mid)?;
        if fm == T::zero() {
            return Ok(mid);
        }
        if fm.signum() == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok((a + b) / T::lit(2.0))
}
