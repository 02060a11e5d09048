//! Lower (and well-separated upper) bounds on `σ_min`, each with its full
//! hypothesis checklist.

mod report;
mod theorems;

pub use report::{BoundReport, Hypothesis, OperatorKind, Theorem};
pub use theorems::{
    clump_ball, clump_cube, hyper_ball, hyper_cube, hyperplane_parameters, multiscale_product,
    sr_ball, sr_cube, wellsep_ball, wellsep_cube, wrap_free, HYPER_R_MAX,
};

use crate::error::Result;
use crate::geometry::PointSet;
use crate::specfun::c_alpha_interval;

/// Parameters of the two bound families: `β` for cubes, `α` for balls.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundParams {
    pub beta: f64,
    pub alpha: f64,
}

impl BoundParams {
    /// `β = 1` and `α` at the right end of the interval where `c(α)` is given
    /// by the Bessel ratio.
    pub fn default_for(d: usize) -> Result<Self> {
        let (_, hi) = c_alpha_interval::<f64>(d)?;
        Ok(BoundParams { beta: 1.0, alpha: hi })
    }
}

/// Evaluates one theorem at a fixed `τ` (ignored by the well-separated ones).
pub fn evaluate(
    theorem: Theorem,
    m: f64,
    x: &PointSet<f64>,
    params: BoundParams,
    tau: f64,
    op: OperatorKind,
) -> Result<BoundReport> {
    let d = x.dim();
    match theorem {
        Theorem::WellSepCube => wellsep_cube(m, d, x, params.beta, op),
        Theorem::WellSepBall => wellsep_ball(m, d, x, params.alpha, op),
        Theorem::SrCube => sr_cube(m, x, tau, params.beta, op),
        Theorem::SrBall => sr_ball(m, x, tau, params.alpha, op),
        Theorem::ClumpCube => clump_cube(m, x, tau, params.beta, op),
        Theorem::ClumpBall => clump_ball(m, x, tau, params.alpha, op),
        Theorem::HyperCube => hyper_cube(m, x, tau, params.beta, op),
        Theorem::HyperBall => hyper_ball(m, x, tau, params.alpha, op),
    }
}

/// Candidate `τ` values: `2Cν'/m · 2^{j/4}` for `ν' ≤ s`, capped at `tau_max`.
pub fn tau_candidates(theorem: Theorem, m: f64, x: &PointSet<f64>, params: BoundParams) -> Vec<f64> {
    let d = x.dim() as f64;
    let (big_c, tau_max) = if theorem.is_ball() {
        (params.alpha, 1.0 / (4.0 * d.sqrt()))
    } else {
        (params.beta * d, 1.0 / (4.0 * d))
    };
    let mut out: Vec<f64> = (1..=x.len())
        .flat_map(|nu| {
            let base = 2.0 * big_c * nu as f64 / m;
            (0..=48).map(move |j| base * 2f64.powf(j as f64 / 4.0))
        })
        .filter(|&t| t <= tau_max)
        .collect();
    out.push(tau_max);
    out.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    out.dedup();
    out
}

/// The report with the largest lower bound over [`tau_candidates`]; the
/// well-separated theorems are evaluated once. When no candidate applies the
/// report at the largest candidate is returned.
pub fn best_over_tau(
    theorem: Theorem,
    m: f64,
    x: &PointSet<f64>,
    params: BoundParams,
    op: OperatorKind,
) -> Result<BoundReport> {
    if matches!(theorem, Theorem::WellSepCube | Theorem::WellSepBall) {
        return evaluate(theorem, m, x, params, 0.0, op);
    }
    let mut best: Option<BoundReport> = None;
    let mut last = None;
    for tau in tau_candidates(theorem, m, x, params) {
        let rep = evaluate(theorem, m, x, params, tau, op)?;
        if rep.applicable && best.as_ref().is_none_or(|b| rep.lower > b.lower) {
            best = Some(rep);
        } else {
            last = Some(rep);
        }
    }
    Ok(best.or(last).expect("at least one candidate"))
}
