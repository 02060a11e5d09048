//! Frequency domains `Ω^p_m` (ℓ² balls and ℓ^∞ cubes), lattice enumeration
//! and volumes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Exponent, Real};
use crate::specfun::unit_ball_volume;

/// Default cap on the size of the bounding box scanned during enumeration.
pub const ENUMERATION_BUDGET: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Ball,
    Cube,
}

impl Shape {
    pub fn exponent(self) -> Exponent {
        match self {
            Shape::Ball => Exponent::Two,
            Shape::Cube => Exponent::Inf,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Samples on `(ρ^{-1} Z)^d`.
    Discrete { rho: u32 },
    Continuous,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrequencyDomain<T: Real> {
    pub shape: Shape,
    pub m: T,
    pub mode: Mode,
    pub d: usize,
}

impl<T: Real> FrequencyDomain<T> {
    pub fn new(shape: Shape, m: T, mode: Mode, d: usize) -> Result<Self> {
        if !(m > T::zero()) || !m.is_finite() {
            return Err(Error::InvalidArgument("radius must be positive".into()));
        }
        if d == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        if let Mode::Discrete { rho: 0 } = mode {
            return Err(Error::InvalidArgument("oversampling factor must be ≥ 1".into()));
        }
        Ok(FrequencyDomain { shape, m, mode, d })
    }

    pub fn discrete(shape: Shape, m: T, d: usize) -> Result<Self> {
        Self::new(shape, m, Mode::Discrete { rho: 1 }, d)
    }

    pub fn continuous(shape: Shape, m: T, d: usize) -> Result<Self> {
        Self::new(shape, m, Mode::Continuous, d)
    }

    pub fn is_discrete(&self) -> bool {
        matches!(self.mode, Mode::Discrete { .. })
    }

    pub fn rho(&self) -> u32 {
        match self.mode {
            Mode::Discrete { rho } => rho,
            Mode::Continuous => 1,
        }
    }

    /// Same shape and mode, radius `m`.
    pub fn with_radius(&self, m: T) -> Result<Self> {
        Self::new(self.shape, m, self.mode, self.d)
    }

    /// Largest integer index `n` with `n/ρ ≤ m` along an axis.
    fn index_radius(&self) -> i64 {
        (self.m * T::from_usize_lossy(self.rho() as usize)).floor().as_f64() as i64
    }

    fn box_size(&self) -> u128 {
        let side = (2 * self.index_radius() + 1) as u128;
        side.checked_pow(self.d as u32).unwrap_or(u128::MAX)
    }

    fn check_budget(&self, budget: u128) -> Result<()> {
        if !self.is_discrete() {
            return Err(Error::InvalidArgument("continuous domain has no lattice".into()));
        }
        let need = self.box_size();
        if need > budget {
            return Err(Error::Budget { required: need, budget });
        }
        Ok(())
    }

    /// Fails with [`Error::Budget`] when enumerating a discrete domain would
    /// scan more than [`ENUMERATION_BUDGET`] indices.
    pub fn ensure_enumerable(&self) -> Result<()> {
        if self.is_discrete() {
            self.check_budget(ENUMERATION_BUDGET)
        } else {
            Ok(())
        }
    }

    fn contains_index(&self, n: &[i64], m_rho_sq: f64) -> bool {
        match self.shape {
            Shape::Cube => true,
            Shape::Ball => (n.iter().map(|&v| (v * v) as f64).sum::<f64>()) <= m_rho_sq,
        }
    }

    fn scan(&self, mut visit: impl FnMut(&[i64])) {
        let r = self.index_radius();
        let m_rho = self.m.as_f64() * self.rho() as f64;
        let m_rho_sq = m_rho * m_rho;
        let mut n = vec![-r; self.d];
        loop {
            if self.contains_index(&n, m_rho_sq) {
                visit(&n);
            }
            // odometer with the last coordinate fastest: lexicographic order
            let mut i = self.d;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                if n[i] < r {
                    n[i] += 1;
                    break;
                }
                n[i] = -r;
            }
        }
    }

    /// Integer multi-indices `n` with `|n/ρ|_p ≤ m`, lexicographically ordered.
    pub fn enumerate_indices_with_budget(&self, budget: u128) -> Result<Vec<Vec<i64>>> {
        self.check_budget(budget)?;
        let mut out = Vec::new();
        self.scan(|n| out.push(n.to_vec()));
        Ok(out)
    }

    pub fn enumerate_indices(&self) -> Result<Vec<Vec<i64>>> {
        self.enumerate_indices_with_budget(ENUMERATION_BUDGET)
    }

    /// Frequencies `ω ∈ (ρ^{-1}Z)^d ∩ Ω`, lexicographically ordered.
    pub fn enumerate_lattice(&self) -> Result<Vec<Vec<T>>> {
        let rho = T::from_usize_lossy(self.rho() as usize);
        Ok(self
            .enumerate_indices()?
            .into_iter()
            .map(|n| n.into_iter().map(|v| T::from_i64_lossy(v) / rho).collect())
            .collect())
    }

    /// `|Ω ∩ (ρ^{-1}Z)^d|`; closed form for cubes.
    pub fn lattice_count(&self) -> Result<u128> {
        if !self.is_discrete() {
            return Err(Error::InvalidArgument("continuous domain has no lattice".into()));
        }
        match self.shape {
            Shape::Cube => Ok(self.box_size()),
            Shape::Ball => {
                self.check_budget(ENUMERATION_BUDGET)?;
                let mut c = 0u128;
                self.scan(|_| c += 1);
                Ok(c)
            }
        }
    }

    /// Lebesgue measure of `Ω`.
    pub fn volume(&self) -> T {
        match self.shape {
            Shape::Cube => (T::lit(2.0) * self.m).powi(self.d as i32),
            Shape::Ball => unit_ball_volume::<T>(self.d) * self.m.powi(self.d as i32),
        }
    }

    /// The diagonal of the Gram matrix: `|Ω ∩ (ρ^{-1}Z)^d|/ρ^d` or `|Ω|`.
    pub fn measure(&self) -> Result<T> {
        match self.mode {
            Mode::Continuous => Ok(self.volume()),
            Mode::Discrete { rho } => {
                let c = T::lit(self.lattice_count()? as f64);
                Ok(c / T::from_usize_lossy(rho as usize).powi(self.d as i32))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct DomainDoc {
    shape: Shape,
    m: f64,
    mode: String,
    #[serde(default = "one")]
    rho: u32,
    d: usize,
}

fn one() -> u32 {
    1
}

impl<T: Real> Serialize for FrequencyDomain<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DomainDoc {
            shape: self.shape,
            m: self.m.as_f64(),
            mode: if self.is_discrete() { "discrete" } else { "continuous" }.into(),
            rho: self.rho(),
            d: self.d,
        }
        .serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for FrequencyDomain<T> {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = DomainDoc::deserialize(de)?;
        let mode = match doc.mode.as_str() {
            "discrete" => Mode::Discrete { rho: doc.rho },
            "continuous" => Mode::Continuous,
            other => return Err(D::Error::custom(format!("unknown mode {other:?}"))),
        };
        FrequencyDomain::new(doc.shape, T::lit(doc.m), mode, doc.d).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dom(shape: Shape, m: f64, d: usize) -> FrequencyDomain<f64> {
        FrequencyDomain::discrete(shape, m, d).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let c = dom(Shape::Cube, 1.0, 2).enumerate_lattice().unwrap();
        assert_eq!(c.len(), 9);
        assert_eq!(c[0], vec![-1.0, -1.0]);
        assert_eq!(c[1], vec![-1.0, 0.0]);
        assert_eq!(dom(Shape::Ball, 1.0, 2).enumerate_lattice().unwrap().len(), 5);
        // brute-force scan of the 11×11 grid
        let brute = (-5i64..=5)
            .flat_map(|a| (-5i64..=5).map(move |b| a * a + b * b))
            .filter(|&q| q <= 25)
            .count();
        assert_eq!(brute, 81);
        assert_eq!(dom(Shape::Ball, 5.0, 2).enumerate_lattice().unwrap().len(), brute);
        assert_eq!(dom(Shape::Ball, 5.0, 2).lattice_count().unwrap(), 81);
    }

    #[test]
    fn counts() {
        assert_eq!(dom(Shape::Cube, 20.0, 2).lattice_count().unwrap(), 1681);
        assert_eq!(dom(Shape::Cube, 2.5, 2).lattice_count().unwrap(), 25);
        let os = FrequencyDomain::new(Shape::Cube, 1.0, Mode::Discrete { rho: 2 }, 1).unwrap();
        assert_eq!(os.enumerate_lattice().unwrap(), vec![vec![-1.0], vec![-0.5], vec![0.0], vec![0.5], vec![1.0]]);
        assert!((os.measure().unwrap() - 2.5_f64).abs() < 1e-15);
    }

    #[test]
    fn budget() {
        let big = dom(Shape::Cube, 2000.0, 3);
        match big.enumerate_indices() {
            Err(Error::Budget { required, .. }) => assert_eq!(required, 4001u128.pow(3)),
            other => panic!("{other:?}"),
        }
        assert!(FrequencyDomain::continuous(Shape::Ball, 1.0, 2).unwrap().lattice_count().is_err());
    }

    #[test]
    fn volumes() {
        let pi = std::f64::consts::PI;
        assert_eq!(dom(Shape::Cube, 1.0, 3).volume(), 8.0);
        assert!((dom(Shape::Ball, 1.0, 2).volume() - pi).abs() < 1e-14);
        assert!((dom(Shape::Ball, 2.0, 3).volume() - 32.0 * pi / 3.0).abs() < 1e-12);
    }

    #[test]
    fn gauss_ratio() {
        let b = dom(Shape::Ball, 40.0, 2);
        let r = b.lattice_count().unwrap() as f64 / b.volume();
        assert!((r - 1.0).abs() < 0.05);
    }

    #[test]
    fn json_schema() {
        let d = FrequencyDomain::new(Shape::Ball, 2.5, Mode::Discrete { rho: 2 }, 3).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"shape":"ball","m":2.5,"mode":"discrete","rho":2,"d":3}"#);
        let back: FrequencyDomain<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<FrequencyDomain<f64>>(
            r#"{"shape":"cube","m":-1,"mode":"continuous","rho":1,"d":2}"#
        )
        .is_err());
    }
}
