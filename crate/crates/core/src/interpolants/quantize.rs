use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Exponent;

/// Relative slack used when checking the quantizer's inequalities.
const SLACK: f64 = 1e-12;

/// The unit ℓ^p dual `v` of `u`: `|v|_p = 1` and `v·u = |u|_{p'}`.
pub fn dual_vector(u: &[f64], p: Exponent) -> Result<Vec<f64>> {
    let pc = p.conjugate();
    let nu = pc.norm(u);
    if !(nu > 0.0) {
        return Err(Error::InvalidArgument("dual vector of the zero vector".into()));
    }
    let sign = |x: f64| if x > 0.0 { 1.0 } else if x < 0.0 { -1.0 } else { 0.0 };
    Ok(match p {
        Exponent::Inf => u.iter().map(|&x| sign(x)).collect(),
        Exponent::Two => u.iter().map(|&x| x / nu).collect(),
        Exponent::One => {
            let i = (0..u.len())
                .max_by(|&a, &b| u[a].abs().partial_cmp(&u[b].abs()).expect("finite").then(b.cmp(&a)))
                .expect("non-empty");
            (0..u.len()).map(|j| if j == i { sign(u[i]) } else { 0.0 }).collect()
        }
        Exponent::P(_) => {
            let e = pc.value() - 1.0;
            u.iter().map(|&x| x.abs().powf(e) * sign(x) / nu.powf(e)).collect()
        }
    })
}

/// Integer direction `q` for a root `u`, with the checked inequalities
/// `|q|_p ≤ 1/(2α)`, `|u|_{p'}/(4α) ≤ |q·u| ≤ 1/2`, `|1-e^{2πi q·u}| ≥ √2|u|_{p'}/α`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Quantized {
    pub q: Vec<i64>,
    pub q_norm: f64,
    pub q_dot_u: f64,
    pub gap: f64,
    pub alpha: f64,
    pub u_dual_norm: f64,
}

/// Round toward zero, except that values within `1e-12` of an integer are
/// snapped to it (so that e.g. `1/(2·0.1)` quantizes to 5 and not 4).
fn round_toward_zero(a: f64) -> f64 {
    let r = a.round();
    if (a - r).abs() <= 1e-12 * a.abs().max(1.0) {
        r
    } else {
        a.trunc()
    }
}

pub fn quantize_direction(u: &[f64], alpha: f64, p: Exponent) -> Result<Quantized> {
    let d = u.len();
    let nu = p.conjugate().norm(u);
    let cap = 1.0 / (4.0 * p.dim_factor(d));
    if !(nu > 0.0) || nu > alpha * (1.0 + SLACK) || alpha > cap * (1.0 + SLACK) {
        return Err(Error::InvalidArgument(format!(
            "quantizer needs 0 < |u|_p' = {nu} ≤ alpha = {alpha} ≤ {cap}"
        )));
    }
    let v = dual_vector(u, p)?;
    let q: Vec<i64> = v.iter().map(|&vi| round_toward_zero(vi / (2.0 * alpha)) as i64).collect();
    let qf: Vec<f64> = q.iter().map(|&x| x as f64).collect();
    let q_norm = p.norm(&qf);
    let q_dot_u: f64 = qf.iter().zip(u).map(|(a, b)| a * b).sum();
    let t = q_dot_u.abs();
    let gap = 2.0 * (std::f64::consts::PI * t).sin().abs();
    let out = Quantized { q, q_norm, q_dot_u, gap, alpha, u_dual_norm: nu };
    let ok = q_norm <= (1.0 + SLACK) / (2.0 * alpha)
        && t >= (1.0 - SLACK) * nu / (4.0 * alpha)
        && t <= 0.5 * (1.0 + SLACK)
        && gap >= (1.0 - SLACK) * 2f64.sqrt() * nu / alpha;
    if !ok {
        return Err(Error::Certificate(format!("quantizer inequality failed: {out:?}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duals() {
        assert_eq!(dual_vector(&[0.1, 0.0], Exponent::Inf).unwrap(), vec![1.0, 0.0]);
        let v = dual_vector(&[0.1, -0.2], Exponent::Inf).unwrap();
        assert_eq!(v, vec![1.0, -1.0]);
        assert!((v[0] * 0.1 + v[1] * -0.2 - 0.3).abs() < 1e-15);
        let w = dual_vector(&[0.3, 0.4], Exponent::Two).unwrap();
        assert!((w[0] - 0.6).abs() < 1e-15 && (w[1] - 0.8).abs() < 1e-15);
        let z = dual_vector(&[0.3, -0.4], Exponent::One).unwrap();
        assert_eq!(z, vec![0.0, -1.0]);
        let u = [0.1, -0.25, 0.05];
        let p = Exponent::P(3.0);
        let v = dual_vector(&u, p).unwrap();
        assert!((p.norm(&v) - 1.0).abs() < 1e-12);
        let dot: f64 = v.iter().zip(&u).map(|(a, b)| a * b).sum();
        assert!((dot - p.conjugate().norm(&u)).abs() < 1e-12);
        assert!(dual_vector(&[0.0, 0.0], Exponent::Two).is_err());
    }

    #[test]
    fn quantizer_examples() {
        let q = quantize_direction(&[0.1, 0.0], 0.1, Exponent::Inf).unwrap();
        assert_eq!(q.q, vec![5, 0]);
        assert!((q.q_dot_u - 0.5).abs() < 1e-15);
        let alpha = 0.07;
        let q = quantize_direction(&[0.05, 0.0], alpha, Exponent::Two).unwrap();
        assert_eq!(q.q, vec![(1.0 / (2.0 * alpha)).floor() as i64, 0]);
        assert!(quantize_direction(&[0.1, 0.0], 0.05, Exponent::Inf).is_err());
        assert!(quantize_direction(&[0.1, 0.0], 0.3, Exponent::Inf).is_err());
    }
}
