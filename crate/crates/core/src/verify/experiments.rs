use super::Tally;
use crate::bounds::OperatorKind;
use crate::error::Result;
use crate::experiment::{fit_slope, sweep, table_exponents, DeltaGrid, ExponentProtocol, ScenarioKind, SweepConfig};
use crate::lattice::Shape;

/// Expected modes for `λ = 2..=10`.
const MODES_D2: [i64; 9] = [1, 1, 2, 2, 2, 3, 3, 3, 3];
const MODES_D3: [i64; 9] = [1, 1, 1, 2, 2, 2, 2, 2, 2];

pub(super) fn exponents() -> Result<Tally> {
    let proto = ExponentProtocol::default();
    let mut t = Tally::default();
    for (d, want) in [(2usize, MODES_D2), (3, MODES_D3)] {
        let rows = table_exponents(d, 2..=10, &proto)?;
        let modes: Vec<i64> = rows.iter().map(|r| r.mode).collect();
        for (row, &w) in rows.iter().zip(&want) {
            t.check(row.mode == w, || format!("d = {d}, λ = {}: mode {} vs {w}", row.lambda, row.mode));
            t.check(row.within_tolerance, || {
                format!("d = {d}, λ = {}: slopes {:?} not within {} of {}", row.lambda, row.slopes, proto.tolerance, row.mode)
            });
        }
        let worst = rows
            .iter()
            .flat_map(|r| r.slopes.iter().map(move |s| (s - r.mode as f64).abs()))
            .fold(0.0, f64::max);
        t.note(format!("d = {d} modes {modes:?}, largest slope deviation {worst:.3}"));
    }
    Ok(t)
}

/// Fit window for the deterministic scenarios on the default δ grid.
pub const SCENARIO_WINDOW: (f64, f64) = (1e-3, 1e-2);

pub(super) fn scenario_slopes() -> Result<Tally> {
    let cases = [
        (ScenarioKind::Line { lambda: 2 }, 1.0, 0.1),
        (ScenarioKind::Line { lambda: 3 }, 2.0, 0.1),
        (ScenarioKind::Line { lambda: 4 }, 3.0, 0.1),
        (ScenarioKind::Line { lambda: 5 }, 4.0, 0.1),
        (ScenarioKind::Triangle, 1.0, 0.05),
        (ScenarioKind::Parabola { lambda: 3 }, 2.0, 0.1),
        (ScenarioKind::Parabola { lambda: 4 }, 3.0, 0.15),
        (ScenarioKind::Parabola { lambda: 5 }, 4.0, 0.2),
    ];
    let mut t = Tally::default();
    let mut fits = Vec::new();
    for (kind, want, tol) in cases {
        let cfg = SweepConfig {
            scenario: kind.clone(),
            m: 20.0,
            d: 2,
            shape: Shape::Cube,
            mode: OperatorKind::Discrete,
            rho: 1,
            deltas: DeltaGrid::default(),
            bounds: vec![],
            seed: 0,
            trials: 1,
        };
        let fit = fit_slope(&sweep(&cfg)?, SCENARIO_WINDOW)?;
        t.check((fit.slope - want).abs() <= tol, || format!("{}: slope {:.4} vs {want} ± {tol}", kind.label(), fit.slope));
        fits.push(format!("{} {:.3}", kind.label(), fit.slope));
    }
    t.note(fits.join(", "));
    Ok(t)
}
