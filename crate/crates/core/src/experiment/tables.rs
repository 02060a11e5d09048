use std::collections::BTreeMap;

use serde::Serialize;

use super::scenario::ScenarioKind;
use super::sweep::{fit_slope, sweep, DeltaGrid, SweepConfig};
use crate::bounds::OperatorKind;
use crate::error::Result;
use crate::geometry::generic_exponents;
use crate::lattice::Shape;
use crate::specfun::{c_alpha_extended, c_alpha_interval, c_alpha_left_limit, unit_ball_volume};

/// Rows `d = 2..=10`: both Bessel zeros over `π` and three candidates for the
/// square-rooted well-separated ball constant at the right endpoint.
pub fn table_prelim() -> Result<String> {
    let mut out = String::from("d,j_lo_over_pi,j_hi_over_pi,sqrt_c_closed,sqrt_c_limit,sqrt_c_limit_over_ball\n");
    for d in 2..=10 {
        let (lo, hi) = c_alpha_interval::<f64>(d)?;
        let ext = c_alpha_extended::<f64>(d)?;
        let lim = c_alpha_left_limit::<f64>(d)?;
        let ball = unit_ball_volume::<f64>(d);
        out.push_str(&format!(
            "{d},{lo:.10},{hi:.10},{:.10},{:.10},{:.10}\n",
            ext.sqrt(),
            lim.sqrt(),
            (lim / ball).sqrt()
        ));
    }
    Ok(out)
}

/// Settings of the generic-node exponent experiment.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentProtocol {
    pub m: f64,
    pub deltas: DeltaGrid,
    pub window: (f64, f64),
    pub trials: u64,
    pub seed: u64,
    /// Allowed distance of each fitted slope from its rounded value.
    pub tolerance: f64,
}

impl Default for ExponentProtocol {
    fn default() -> Self {
        ExponentProtocol {
            m: 20.0,
            deltas: DeltaGrid { min: 3e-4, max: 3e-3, count: 8 },
            window: (3e-4, 3e-3),
            trials: 5,
            seed: 2024,
            tolerance: 0.15,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentRow {
    pub d: usize,
    pub lambda: usize,
    pub slopes: Vec<f64>,
    pub mode: i64,
    pub gamma: usize,
    pub r: usize,
    /// Every fitted slope lies within the tolerance of the mode.
    pub within_tolerance: bool,
}

impl ExponentRow {
    pub fn matches_gamma(&self) -> bool {
        self.mode == self.gamma as i64
    }

    pub fn matches_r(&self) -> bool {
        self.mode == self.r as i64
    }
}

fn mode_of(values: &[i64]) -> i64 {
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for &v in values {
        *counts.entry(v).or_default() += 1;
    }
    let best = counts.values().copied().max().unwrap_or(0);
    counts.into_iter().find(|&(_, c)| c == best).map(|(v, _)| v).unwrap_or(0)
}

pub fn exponent_row(d: usize, lambda: usize, proto: &ExponentProtocol) -> Result<ExponentRow> {
    let cfg = SweepConfig {
        scenario: ScenarioKind::Generic { lambda },
        m: proto.m,
        d,
        shape: Shape::Cube,
        mode: OperatorKind::Discrete,
        rho: 1,
        deltas: proto.deltas,
        bounds: vec![],
        seed: proto.seed,
        trials: proto.trials,
    };
    let recs = sweep(&cfg)?;
    let mut slopes = Vec::with_capacity(proto.trials as usize);
    for t in 0..proto.trials {
        let mine: Vec<_> = recs.iter().filter(|r| r.trial == t).cloned().collect();
        slopes.push(fit_slope(&mine, proto.window)?.slope);
    }
    let rounded: Vec<i64> = slopes.iter().map(|s| s.round() as i64).collect();
    let mode = mode_of(&rounded);
    let (gamma, r) = generic_exponents(lambda, d)?;
    let within_tolerance = slopes.iter().all(|s| (s - mode as f64).abs() <= proto.tolerance);
    Ok(ExponentRow { d, lambda, slopes, mode, gamma, r, within_tolerance })
}

pub fn table_exponents(d: usize, lambdas: impl IntoIterator<Item = usize>, proto: &ExponentProtocol) -> Result<Vec<ExponentRow>> {
    lambdas.into_iter().map(|l| exponent_row(d, l, proto)).collect()
}

pub fn exponent_csv(rows: &[ExponentRow]) -> String {
    let mut out = String::from("d,lambda,mode,gamma,r,matches_gamma,matches_r,within_tolerance,slopes\n");
    for r in rows {
        let slopes: Vec<String> = r.slopes.iter().map(|s| format!("{s:.4}")).collect();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.d,
            r.lambda,
            r.mode,
            r.gamma,
            r.r,
            r.matches_gamma(),
            r.matches_r(),
            r.within_tolerance,
            slopes.join(";")
        ));
    }
    out
}
