//! Scalar abstraction shared by the numerical kernels.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating-point type the geometry, lattice, special-function and
/// operator layers are generic over (`f32` and `f64`).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from `f64`; every literal in the crate goes through here.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    fn from_i64_lossy(n: i64) -> Self {
        Self::from_i64(n).expect("i64 representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// An ℓ^p exponent in `[1, ∞]`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum Exponent {
    One,
    Two,
    Inf,
    /// Any finite exponent `p > 1` other than 2.
    P(f64),
}

impl Exponent {
    pub fn from_f64(p: f64) -> Option<Self> {
        if p.is_infinite() && p > 0.0 {
            Some(Exponent::Inf)
        } else if p == 1.0 {
            Some(Exponent::One)
        } else if p == 2.0 {
            Some(Exponent::Two)
        } else if p > 1.0 && p.is_finite() {
            Some(Exponent::P(p))
        } else {
            None
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Exponent::One => 1.0,
            Exponent::Two => 2.0,
            Exponent::Inf => f64::INFINITY,
            Exponent::P(p) => p,
        }
    }

    /// Hölder conjugate `p'` with `1/p + 1/p' = 1`.
    pub fn conjugate(self) -> Self {
        match self {
            Exponent::One => Exponent::Inf,
            Exponent::Inf => Exponent::One,
            Exponent::Two => Exponent::Two,
            Exponent::P(p) => Exponent::P(p / (p - 1.0)),
        }
    }

    /// `d^{1/p}`, the constant in `|x|_1 ≤ d^{1/p} |x|_{p'}`.
    pub fn dim_factor(self, d: usize) -> f64 {
        match self {
            Exponent::Inf => 1.0,
            p => (d as f64).powf(1.0 / p.value()),
        }
    }

    pub fn norm<T: Real>(self, v: &[T]) -> T {
        match self {
            Exponent::One => v.iter().map(|x| x.abs()).sum(),
            Exponent::Two => v.iter().map(|&x| x * x).sum::<T>().sqrt(),
            Exponent::Inf => v.iter().fold(T::zero(), |m, x| m.max(x.abs())),
            Exponent::P(p) => {
                let p = T::lit(p);
                v.iter()
                    .map(|x| x.abs().powf(p))
                    .sum::<T>()
                    .powf(T::one() / p)
            }
        }
    }
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exponent::Inf => write!(f, "inf"),
            p => write!(f, "{}", p.value()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms_and_conjugates() {
        let v = [3.0_f64, -4.0];
        assert_eq!(Exponent::One.norm(&v), 7.0);
        assert_eq!(Exponent::Two.norm(&v), 5.0);
        assert_eq!(Exponent::Inf.norm(&v), 4.0);
        assert!((Exponent::P(3.0).norm(&v) - 91f64.powf(1.0 / 3.0)).abs() < 1e-12);
        assert_eq!(Exponent::Inf.conjugate(), Exponent::One);
        assert_eq!(Exponent::Two.conjugate(), Exponent::Two);
        match Exponent::P(3.0).conjugate() {
            Exponent::P(q) => assert!((q - 1.5).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        assert_eq!(Exponent::from_f64(0.5), None);
        assert_eq!(Exponent::from_f64(f64::INFINITY), Some(Exponent::Inf));
    }

    #[test]
    fn f32_instantiation() {
        let v = [3.0_f32, -4.0];
        assert_eq!(Exponent::Two.norm(&v), 5.0_f32);
    }
}
