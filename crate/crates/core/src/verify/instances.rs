use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::{BoundParams, OperatorKind};
use crate::error::Result;
use crate::geometry::{lp_distance, min_separation, PointSet, Space};
use crate::lattice::{FrequencyDomain, Mode, Shape};
use crate::operators::{gram, measure, sigma_extremes, SpectrumReport};
use crate::scalar::Exponent;

/// A random node set with the radius and `τ` it was built for.
#[derive(Clone, Debug)]
pub struct Instance {
    pub x: PointSet<f64>,
    pub m: f64,
    pub tau: f64,
    pub shape: Shape,
    pub op: OperatorKind,
}

impl Instance {
    pub fn domain(&self) -> Result<FrequencyDomain<f64>> {
        let mode = match self.op {
            OperatorKind::Discrete => Mode::Discrete { rho: 1 },
            OperatorKind::Continuous => Mode::Continuous,
        };
        FrequencyDomain::new(self.shape, self.m, mode, self.x.dim())
    }
}

/// Separation constant `C` and largest `τ` of the bounds for `shape`.
fn shape_constants(shape: Shape, d: usize) -> Result<(f64, f64)> {
    let df = d as f64;
    Ok(match shape {
        Shape::Cube => (BoundParams::default_for(d)?.beta * df, 1.0 / (4.0 * df)),
        Shape::Ball => (BoundParams::default_for(d)?.alpha, 1.0 / (4.0 * df.sqrt())),
    })
}

fn space_of(op: OperatorKind) -> Space {
    match op {
        OperatorKind::Discrete => Space::Torus,
        OperatorKind::Continuous => Space::Euclidean,
    }
}

/// `clusters` groups of `lambda` nodes. Groups are more than `τ` apart and
/// have spread below `λ/m`; `m` is the smallest radius meeting the sample
/// and density conditions, inflated by a random factor up to 1.3. Nodes stay
/// clear of the seam of the torus. `None` if the centres could not be placed.
pub fn clustered(
    rng: &mut ChaCha8Rng,
    d: usize,
    shape: Shape,
    op: OperatorKind,
    clusters: usize,
    lambda: usize,
) -> Result<Option<Instance>> {
    let (big_c, tau_max) = shape_constants(shape, d)?;
    let p = shape.exponent();
    let dim = if shape == Shape::Cube { 1.0 } else { (d as f64).sqrt() };
    let s = clusters * lambda;
    let tau = tau_max * rng.gen_range(0.5..1.0);
    let m_min = (4.0 * s as f64 * dim).max(2.0 * big_c * lambda as f64 / tau);
    let m = m_min * rng.gen_range(1.0..1.3);
    let spread = lambda as f64 / m * 10f64.powf(rng.gen_range(-1.5..-0.3));
    let margin = tau + spread;
    let mut centres: Vec<Vec<f64>> = Vec::new();
    for _ in 0..200 {
        if centres.len() == clusters {
            break;
        }
        let c: Vec<f64> = (0..d).map(|_| rng.gen_range(-0.5 + margin..0.5 - margin)).collect();
        let far = centres.iter().all(|o| {
            lp_distance(&c, o, p, Space::Torus).map_or(false, |t| t > 1.05 * tau + 2.0 * spread * dim)
        });
        if far {
            centres.push(c);
        }
    }
    if centres.len() < clusters {
        return Ok(None);
    }
    let mut pts = Vec::with_capacity(s);
    for c in &centres {
        for _ in 0..lambda {
            pts.push(c.iter().map(|&v| v + spread * rng.gen_range(-0.5..0.5)).collect());
        }
    }
    let x = PointSet::new(d, space_of(op), pts)?;
    if s > 1 && min_separation(&x, Exponent::Two)? < 1e-3 * spread {
        return Ok(None);
    }
    Ok(Some(Instance { x, m, tau, shape, op }))
}

/// `s` nodes uniform in the box, with `m` between one and two times the
/// smallest radius at which they are well separated, capped at `m_cap`.
pub fn well_separated(
    rng: &mut ChaCha8Rng,
    d: usize,
    shape: Shape,
    op: OperatorKind,
    s: usize,
    m_cap: f64,
) -> Result<Option<Instance>> {
    let (big_c, _) = shape_constants(shape, d)?;
    let pts: Vec<Vec<f64>> = (0..s).map(|_| (0..d).map(|_| rng.gen_range(-0.45..0.45)).collect()).collect();
    let x = PointSet::new(d, space_of(op), pts)?;
    let sep = if s > 1 { min_separation(&x, shape.exponent())? } else { 1.0 };
    let m = (big_c / sep).max(1.0) * rng.gen_range(1.0..2.0);
    if m > m_cap {
        return Ok(None);
    }
    Ok(Some(Instance { x, m, tau: 0.0, shape, op }))
}

/// Rows of `Φ` above which the Gram route is used for a discrete domain.
const SVD_ROWS: u128 = 40_000;

/// `σ_min`, `σ_max` of the instance: SVD of `Φ` for moderate discrete
/// domains, Gram eigenvalues otherwise.
pub(crate) fn spectrum(dom: &FrequencyDomain<f64>, x: &PointSet<f64>) -> Result<SpectrumReport<f64>> {
    if dom.is_discrete() && (dom.shape == Shape::Ball || dom.lattice_count()? <= SVD_ROWS) {
        measure(dom, x)
    } else {
        sigma_extremes(&gram(dom, x)?)
    }
}
