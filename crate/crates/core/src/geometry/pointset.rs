use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Exponent, Real};

/// Metric the node set lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    /// `[-1/2, 1/2)^d` identified with `T^d`; distances wrap per coordinate.
    Torus,
    Euclidean,
}

/// A finite node set in `[-1/2, 1/2)^d`.
///
/// Construction rejects coordinates outside the fundamental domain and
/// coincident nodes, so every operator built on top is well posed.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet<T: Real> {
    points: Vec<Vec<T>>,
    dim: usize,
    space: Space,
}

fn in_domain<T: Real>(x: T) -> bool {
    x >= T::lit(-0.5) && x < T::lit(0.5)
}

impl<T: Real> PointSet<T> {
    pub fn new(dim: usize, space: Space, points: Vec<Vec<T>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidPointSet("dimension must be positive".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: p.len() });
            }
            if !p.iter().all(|&x| x.is_finite() && in_domain(x)) {
                return Err(Error::InvalidPointSet(format!(
                    "node {i} has a coordinate outside [-1/2, 1/2)"
                )));
            }
        }
        for i in 0..points.len() {
            for j in 0..i {
                if points[i] == points[j] {
                    return Err(Error::InvalidPointSet(format!("nodes {j} and {i} coincide")));
                }
            }
        }
        Ok(PointSet { points, dim, space })
    }

    pub fn torus(dim: usize, points: Vec<Vec<T>>) -> Result<Self> {
        Self::new(dim, Space::Torus, points)
    }

    pub fn euclidean(dim: usize, points: Vec<Vec<T>>) -> Result<Self> {
        Self::new(dim, Space::Euclidean, points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }

    pub fn point(&self, k: usize) -> &[T] {
        &self.points[k]
    }

    /// Same nodes, different metric.
    pub fn with_space(&self, space: Space) -> Self {
        PointSet { points: self.points.clone(), dim: self.dim, space }
    }

    /// Sub-set by indices, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Self {
        PointSet {
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
            dim: self.dim,
            space: self.space,
        }
    }

    /// Difference `x_j - x_k` expressed in the chart centred at `x_k`: wrapped
    /// into `[-1/2, 1/2)` per coordinate on the torus, plain otherwise.
    pub fn chart_difference(&self, j: usize, k: usize) -> Vec<T> {
        difference(&self.points[j], &self.points[k], self.space)
    }

    pub fn distance(&self, j: usize, k: usize, p: Exponent) -> T {
        lp_distance_unchecked(&self.points[j], &self.points[k], p, self.space)
    }

    /// Translate every node by `t`, wrapping back into the fundamental domain.
    pub fn translated(&self, t: &[T]) -> Result<Self> {
        if t.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: t.len() });
        }
        let pts = self
            .points
            .iter()
            .map(|p| p.iter().zip(t).map(|(&a, &b)| wrap(a + b)).collect())
            .collect();
        PointSet::new(self.dim, self.space, pts)
    }

    /// Isotropic dilation `{δx}`.
    pub fn dilate(&self, delta: T) -> Result<Self> {
        if !(delta > T::zero()) {
            return Err(Error::InvalidArgument("dilation factor must be positive".into()));
        }
        let pts = self
            .points
            .iter()
            .map(|p| p.iter().map(|&x| x * delta).collect())
            .collect();
        PointSet::new(self.dim, self.space, pts)
    }
}

/// Reduce `x` into `[-1/2, 1/2)`.
pub fn wrap<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    let y = x - (x + half).floor();
    if y >= half {
        y - T::one()
    } else {
        y
    }
}

pub(crate) fn difference<T: Real>(x: &[T], y: &[T], space: Space) -> Vec<T> {
    x.iter()
        .zip(y)
        .map(|(&a, &b)| match space {
            Space::Torus => wrap(a - b),
            Space::Euclidean => a - b,
        })
        .collect()
}

pub(crate) fn lp_distance_unchecked<T: Real>(x: &[T], y: &[T], p: Exponent, space: Space) -> T {
    p.norm(&difference(x, y, space))
}

/// ℓ^p distance, wrapped per coordinate (`min_n |x_i - y_i + n|`) on the torus.
pub fn lp_distance<T: Real>(x: &[T], y: &[T], p: Exponent, space: Space) -> Result<T> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { expected: x.len(), got: y.len() });
    }
    Ok(lp_distance_unchecked(x, y, p, space))
}

#[derive(Serialize, Deserialize)]
struct PointSetDoc {
    d: usize,
    space: Space,
    points: Vec<Vec<f64>>,
}

impl<T: Real> Serialize for PointSet<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PointSetDoc {
            d: self.dim,
            space: self.space,
            points: self
                .points
                .iter()
                .map(|p| p.iter().map(|x| x.as_f64()).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for PointSet<T> {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let doc = PointSetDoc::deserialize(de)?;
        let pts = doc
            .points
            .into_iter()
            .map(|p| p.into_iter().map(T::lit).collect())
            .collect();
        PointSet::new(doc.d, doc.space, pts).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sets() {
        assert!(PointSet::<f64>::torus(0, vec![]).is_err());
        assert!(PointSet::torus(2, vec![vec![0.5, 0.0]]).is_err());
        assert!(PointSet::torus(2, vec![vec![0.1, 0.0], vec![0.1, 0.0]]).is_err());
        assert!(PointSet::torus(2, vec![vec![0.1]]).is_err());
        assert!(PointSet::torus(2, vec![vec![-0.5, 0.49]]).is_ok());
    }

    #[test]
    fn wrap_is_into_half_open_box() {
        assert_eq!(wrap(0.5_f64), -0.5);
        assert_eq!(wrap(-0.5_f64), -0.5);
        assert!((wrap(0.8_f64) + 0.2).abs() < 1e-15);
        assert!((wrap(-0.8_f64) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn distance_examples() {
        let d = lp_distance(&[0.0, 0.0], &[0.3, 0.0], Exponent::Inf, Space::Torus).unwrap();
        assert!((d - 0.3_f64).abs() < 1e-15);
        let d = lp_distance(&[-0.4, 0.0], &[0.4, 0.0], Exponent::Inf, Space::Torus).unwrap();
        assert!((d - 0.2_f64).abs() < 1e-15);
        let d = lp_distance(&[0.0, 0.0], &[0.3, 0.4], Exponent::One, Space::Euclidean).unwrap();
        assert!((d - 0.7_f64).abs() < 1e-15);
        assert!(lp_distance(&[0.0], &[0.0, 1.0], Exponent::Two, Space::Torus).is_err());
    }

    #[test]
    fn json_roundtrip_and_schema() {
        let x = PointSet::torus(2, vec![vec![0.1, -0.2], vec![0.0, 0.25]]).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"d":2,"space":"torus","points":[[0.1,-0.2],[0.0,0.25]]}"#);
        let y: PointSet<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        let bad = r#"{"d":2,"space":"euclidean","points":[[0.7,0.0]]}"#;
        assert!(serde_json::from_str::<PointSet<f64>>(bad).is_err());
    }

    #[test]
    fn dilation() {
        let x = PointSet::torus(2, vec![vec![0.2, 0.0]]).unwrap();
        assert_eq!(x.dilate(1.0).unwrap(), x);
        let y = x.dilate(0.5).unwrap();
        assert!((y.point(0)[0] - 0.1_f64).abs() < 1e-16);
        assert!(x.dilate(3.0).is_err());
    }
}
