use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::PointSet;

/// Generator behind every random draw: ChaCha8 seeded from the 64-bit seed,
/// with the trial index selecting the stream.
pub const RNG_ID: &str = "chacha8-seed64-stream-trial";

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ScenarioKind {
    /// `λ` points `(i - (λ-1)/2) δ e_1`.
    Line { lambda: usize },
    /// `{0, δe_1, δe_2}`.
    Triangle,
    /// Abscissas `(i - ⌊(λ-1)/2⌋) δ` on the parabola `y = x²`.
    Parabola { lambda: usize },
    /// `δU` with `U` uniform on `[-1/m, 1/m]^d`, drawn once per trial.
    Generic { lambda: usize },
    /// `r` copies of `Line(λ)` whose centres are `gap` apart along the last axis.
    Clumps { r: usize, lambda: usize, gap: f64 },
    /// A fixed pattern dilated by `δ`.
    Custom { points: Vec<Vec<f64>> },
}

impl ScenarioKind {
    pub fn label(&self) -> String {
        match self {
            ScenarioKind::Line { lambda } => format!("line{lambda}"),
            ScenarioKind::Triangle => "triangle".into(),
            ScenarioKind::Parabola { lambda } => format!("parabola{lambda}"),
            ScenarioKind::Generic { lambda } => format!("generic{lambda}"),
            ScenarioKind::Clumps { r, lambda, .. } => format!("clumps{r}x{lambda}"),
            ScenarioKind::Custom { points } => format!("custom{}", points.len()),
        }
    }
}

/// Raw points of a scenario (no validation).
pub fn scenario_points(kind: &ScenarioKind, d: usize, m: f64, delta: f64, seed: u64, trial: u64) -> Result<Vec<Vec<f64>>> {
    let axis = |i: usize, v: f64| {
        let mut p = vec![0.0; d];
        p[i] = v;
        p
    };
    Ok(match kind {
        ScenarioKind::Line { lambda } => {
            let c = (*lambda as f64 - 1.0) / 2.0;
            (0..*lambda).map(|i| axis(0, (i as f64 - c) * delta)).collect()
        }
        ScenarioKind::Triangle => {
            if d < 2 {
                return Err(Error::InvalidArgument("the triangle needs d ≥ 2".into()));
            }
            vec![vec![0.0; d], axis(0, delta), axis(1, delta)]
        }
        ScenarioKind::Parabola { lambda } => {
            if d < 2 {
                return Err(Error::InvalidArgument("the parabola needs d ≥ 2".into()));
            }
            let shift = ((*lambda as i64) - 1) / 2;
            (0..*lambda as i64)
                .map(|i| {
                    let t = (i - shift) as f64 * delta;
                    let mut p = axis(0, t);
                    p[1] = t * t;
                    p
                })
                .collect()
        }
        ScenarioKind::Generic { lambda } => {
            let mut rng = trial_rng(seed, trial);
            (0..*lambda)
                .map(|_| (0..d).map(|_| delta * rng.gen_range(-1.0 / m..1.0 / m)).collect())
                .collect()
        }
        ScenarioKind::Clumps { r, lambda, gap } => {
            let c = (*lambda as f64 - 1.0) / 2.0;
            let cr = (*r as f64 - 1.0) / 2.0;
            let mut pts = Vec::with_capacity(r * lambda);
            for j in 0..*r {
                for i in 0..*lambda {
                    let mut p = axis(0, (i as f64 - c) * delta);
                    p[d - 1] += (j as f64 - cr) * gap;
                    pts.push(p);
                }
            }
            pts
        }
        ScenarioKind::Custom { points } => points.iter().map(|p| p.iter().map(|v| v * delta).collect()).collect(),
    })
}

/// The scenario's node set at scale `delta`, on the torus.
pub fn generate_scenario(kind: &ScenarioKind, d: usize, m: f64, delta: f64, seed: u64, trial: u64) -> Result<PointSet<f64>> {
    if !(delta > 0.0) {
        return Err(Error::InvalidArgument("delta must be positive".into()));
    }
    let pts = scenario_points(kind, d, m, delta, seed, trial)?;
    if pts.iter().flatten().any(|v| !(-0.5..0.5).contains(v)) {
        return Err(Error::OutOfRange { what: "scenario coordinate", value: delta, lo: -0.5, hi: 0.5 });
    }
    PointSet::torus(d, pts)
}
