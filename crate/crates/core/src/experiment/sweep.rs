use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::scenario::{generate_scenario, ScenarioKind, RNG_ID};
use crate::bounds::{best_over_tau, BoundParams, BoundReport, OperatorKind, Theorem};
use crate::error::{Error, Result};
use crate::lattice::{FrequencyDomain, Mode, Shape};
use crate::operators::measure;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeltaGrid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Default for DeltaGrid {
    fn default() -> Self {
        DeltaGrid { min: 1e-3, max: 1e-1, count: 24 }
    }
}

impl DeltaGrid {
    /// Geometric grid from `max` down to `min`.
    pub fn values(&self) -> Result<Vec<f64>> {
        if !(self.min > 0.0 && self.max > self.min) || self.count < 2 {
            return Err(Error::InvalidArgument("delta grid needs 0 < min < max and count ≥ 2".into()));
        }
        let r = (self.min / self.max).ln() / (self.count - 1) as f64;
        Ok((0..self.count).map(|i| self.max * (r * i as f64).exp()).collect())
    }
}

fn default_rho() -> u32 {
    1
}

fn default_trials() -> u64 {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub scenario: ScenarioKind,
    pub m: f64,
    pub d: usize,
    pub shape: Shape,
    pub mode: OperatorKind,
    #[serde(default = "default_rho")]
    pub rho: u32,
    #[serde(default)]
    pub deltas: DeltaGrid,
    #[serde(default)]
    pub bounds: Vec<Theorem>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_trials")]
    pub trials: u64,
}

impl SweepConfig {
    pub fn domain(&self) -> Result<FrequencyDomain<f64>> {
        let mode = match self.mode {
            OperatorKind::Discrete => Mode::Discrete { rho: self.rho },
            OperatorKind::Continuous => Mode::Continuous,
        };
        FrequencyDomain::new(self.shape, self.m, mode, self.d)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundValue {
    pub theorem: Theorem,
    pub applicable: bool,
    pub lower: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRecord {
    pub trial: u64,
    pub delta: f64,
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub floor_hit: bool,
    pub bounds: Vec<BoundValue>,
    pub error: Option<String>,
}

/// Bounds evaluated at the best `τ`; a theorem that cannot be evaluated for
/// this operator (e.g. a hyperplane bound for the matrix) is recorded as
/// inapplicable.
pub fn bound_values(theorems: &[Theorem], m: f64, x: &crate::PointSet64, params: BoundParams, op: OperatorKind) -> Vec<BoundValue> {
    theorems
        .iter()
        .map(|&t| match best_over_tau(t, m, x, params, op) {
            Ok(BoundReport { applicable, lower, .. }) => BoundValue { theorem: t, applicable, lower },
            Err(_) => BoundValue { theorem: t, applicable: false, lower: 0.0 },
        })
        .collect()
}

fn sweep_point(cfg: &SweepConfig, dom: &FrequencyDomain<f64>, params: BoundParams, trial: u64, delta: f64) -> SweepRecord {
    let mut rec = SweepRecord {
        trial,
        delta,
        sigma_min: f64::NAN,
        sigma_max: f64::NAN,
        floor_hit: false,
        bounds: Vec::new(),
        error: None,
    };
    let run = || -> Result<(crate::operators::SpectrumReport<f64>, crate::PointSet64)> {
        let x = generate_scenario(&cfg.scenario, cfg.d, cfg.m, delta, cfg.seed, trial)?;
        Ok((measure(dom, &x)?, x))
    };
    match run() {
        Ok((rep, x)) => {
            rec.sigma_min = rep.sigma_min;
            rec.sigma_max = rep.sigma_max;
            rec.floor_hit = rep.floor_hit;
            rec.bounds = bound_values(&cfg.bounds, cfg.m, &x, params, cfg.mode);
        }
        Err(e) => rec.error = Some(e.to_string()),
    }
    rec
}

/// All `(trial, δ)` points, computed in parallel and returned sorted by
/// trial, then by decreasing `δ`.
pub fn sweep(cfg: &SweepConfig) -> Result<Vec<SweepRecord>> {
    let dom = cfg.domain()?;
    let params = BoundParams::default_for(cfg.d).unwrap_or(BoundParams { beta: 1.0, alpha: 1.0 });
    let deltas = cfg.deltas.values()?;
    let jobs: Vec<(u64, f64)> = (0..cfg.trials).flat_map(|t| deltas.iter().map(move |&d| (t, d))).collect();
    Ok(jobs.par_iter().map(|&(t, d)| sweep_point(cfg, &dom, params, t, d)).collect())
}

pub fn sweep_csv(cfg: &SweepConfig, records: &[SweepRecord]) -> String {
    let mut out = format!(
        "# scenario={} m={} d={} shape={:?} mode={:?} rho={} seed={} rng={}\n",
        cfg.scenario.label(),
        cfg.m,
        cfg.d,
        cfg.shape,
        cfg.mode,
        cfg.rho,
        cfg.seed,
        RNG_ID
    );
    out.push_str("delta,sigma_min,floor_hit");
    for t in &cfg.bounds {
        out.push(',');
        out.push_str(&BoundReport::csv_header(*t));
    }
    out.push_str(",trial\n");
    for r in records {
        out.push_str(&format!("{:.17e},{:.17e},{}", r.delta, r.sigma_min, r.floor_hit));
        for b in &r.bounds {
            out.push_str(&format!(",{},{:.17e}", b.applicable, b.lower));
        }
        if r.bounds.len() < cfg.bounds.len() {
            out.push_str(&",false,0".repeat(cfg.bounds.len() - r.bounds.len()));
        }
        out.push_str(&format!(",{}\n", r.trial));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub r_squared: f64,
    pub points: usize,
}

/// Least-squares slope of `log σ_min` against `log δ` over non-floor records
/// with `δ` in `[lo, hi]`.
pub fn fit_slope(records: &[SweepRecord], window: (f64, f64)) -> Result<SlopeFit> {
    let pts: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| !r.floor_hit && r.error.is_none() && r.sigma_min > 0.0)
        .filter(|r| r.delta >= window.0 * (1.0 - 1e-12) && r.delta <= window.1 * (1.0 + 1e-12))
        .map(|r| (r.delta.ln(), r.sigma_min.ln()))
        .collect();
    if pts.len() < 4 {
        return Err(Error::InvalidArgument(format!("{} usable records in the fit window (need 4)", pts.len())));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r_squared = if syy > 0.0 { sxy * sxy / (sxx * syy) } else { 1.0 };
    Ok(SlopeFit { slope, r_squared, points: pts.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(k: f64) -> Vec<SweepRecord> {
        DeltaGrid::default()
            .values()
            .unwrap()
            .into_iter()
            .map(|delta| SweepRecord {
                trial: 0,
                delta,
                sigma_min: 5.0 * delta.powf(k),
                sigma_max: 1.0,
                floor_hit: false,
                bounds: vec![],
                error: None,
            })
            .collect()
    }

    #[test]
    fn exact_power_law() {
        let f = fit_slope(&synthetic(3.0), (1e-3, 1e-1)).unwrap();
        assert!((f.slope - 3.0).abs() < 1e-9);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
        assert!(fit_slope(&synthetic(3.0), (0.05, 0.06)).is_err());
    }

    #[test]
    fn grid_is_geometric_and_decreasing() {
        let g = DeltaGrid::default().values().unwrap();
        assert_eq!(g.len(), 24);
        assert!((g[0] - 0.1).abs() < 1e-15 && (g[23] - 1e-3).abs() < 1e-15);
        assert!(g.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn line_two_has_unit_slope() {
        let cfg = SweepConfig {
            scenario: ScenarioKind::Line { lambda: 2 },
            m: 20.0,
            d: 2,
            shape: Shape::Cube,
            mode: OperatorKind::Discrete,
            rho: 1,
            deltas: DeltaGrid { min: 1e-3, max: 1e-2, count: 6 },
            bounds: vec![Theorem::SrCube],
            seed: 0,
            trials: 1,
        };
        let recs = sweep(&cfg).unwrap();
        let f = fit_slope(&recs, (1e-3, 1e-2)).unwrap();
        assert!((f.slope - 1.0).abs() < 0.05, "{f:?}");
        for r in &recs {
            for b in &r.bounds {
                assert!(!b.applicable || b.lower <= r.sigma_min + 1e-9);
            }
        }
        let csv = sweep_csv(&cfg, &recs);
        assert!(csv.lines().nth(1).unwrap().starts_with("delta,sigma_min,floor_hit,sr-cube_applicable"));
    }
}
