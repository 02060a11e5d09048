use rand::Rng;

use super::instances::{clustered, spectrum, well_separated, Instance};
use super::Tally;
use crate::bounds::{best_over_tau, BoundParams, OperatorKind, Theorem};
use crate::error::Result;
use crate::experiment::trial_rng;
use crate::lattice::Shape;

/// Applicable instances required per theorem.
pub(super) const REQUIRED: usize = 200;
const MAX_ATTEMPTS: usize = 4000;
const SLACK: f64 = 1e-9;

fn draw(theorem: Theorem, rng: &mut rand_chacha::ChaCha8Rng) -> Result<Option<Instance>> {
    let shape = if theorem.is_ball() { Shape::Ball } else { Shape::Cube };
    let op = match theorem {
        Theorem::HyperCube | Theorem::HyperBall => OperatorKind::Continuous,
        _ if rng.gen_bool(0.5) => OperatorKind::Discrete,
        _ => OperatorKind::Continuous,
    };
    // the discrete ball has no closed-form Gram matrix, so it stays planar
    let d = if shape == Shape::Ball && op == OperatorKind::Discrete { 2 } else { rng.gen_range(2..=3) };
    match theorem {
        Theorem::WellSepCube | Theorem::WellSepBall => {
            let cap = if d == 2 { 120.0 } else { 40.0 };
            let s = rng.gen_range(1..=6);
            well_separated(rng, d, shape, op, s, cap)
        }
        _ => {
            let clusters = rng.gen_range(1..=3);
            let lambda = rng.gen_range(1..=3);
            clustered(rng, d, shape, op, clusters, lambda)
        }
    }
}

pub(super) fn bound_soundness(seed: u64) -> Result<Tally> {
    let mut t = Tally::default();
    for (i, &theorem) in Theorem::ALL.iter().enumerate() {
        let mut rng = trial_rng(seed, 400 + i as u64);
        let (mut applicable, mut attempts, mut floor, mut tightest) = (0usize, 0usize, 0usize, 0.0f64);
        while applicable < REQUIRED && attempts < MAX_ATTEMPTS {
            attempts += 1;
            let Some(inst) = draw(theorem, &mut rng)? else { continue };
            let params = BoundParams::default_for(inst.x.dim())?;
            let Ok(rep) = best_over_tau(theorem, inst.m, &inst.x, params, inst.op) else { continue };
            if !rep.applicable {
                continue;
            }
            let sp = spectrum(&inst.domain()?, &inst.x)?;
            if sp.floor_hit {
                floor += 1;
                continue;
            }
            applicable += 1;
            tightest = tightest.max(rep.lower / sp.sigma_min);
            t.check(sp.sigma_min >= rep.lower - SLACK, || {
                format!("{}: σ_min {} < bound {} (m = {}, x = {:?})", theorem.name(), sp.sigma_min, rep.lower, inst.m, inst.x.points())
            });
        }
        if applicable < REQUIRED {
            t.incomplete = true;
        }
        t.note(format!(
            "{} {applicable}/{attempts} applicable, {floor} at the floor, max bound/σ_min {tightest:.3}",
            theorem.name()
        ));
    }
    Ok(t)
}
