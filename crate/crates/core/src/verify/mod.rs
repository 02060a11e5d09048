//! Property suites: one per acceptance criterion. Each suite draws its random
//! instances from its own stream of the experiment generator, so a run is
//! reproducible from the seed alone.

mod certificates;
mod experiments;
mod instances;
mod soundness;
mod spectra;

use std::time::Instant;

use serde::Serialize;

use crate::error::Result;

pub use instances::{clustered, well_separated, Instance};

/// Seed used by `nhf verify` and the acceptance test.
pub const DEFAULT_SEED: u64 = 2024;

/// What a suite found, before timing is attached.
#[derive(Clone, Debug, Default)]
pub(crate) struct Tally {
    pub checked: usize,
    pub failures: usize,
    /// Set when the suite could not reach its required instance count.
    pub incomplete: bool,
    pub first_failure: Option<String>,
    pub notes: Vec<String>,
}

impl Tally {
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub criterion: u8,
    pub name: &'static str,
    pub pass: bool,
    pub checked: usize,
    pub failures: usize,
    pub seconds: f64,
    pub time_limit: Option<f64>,
    pub detail: String,
}

impl Outcome {
    pub fn line(&self) -> String {
        let limit = self.time_limit.map_or(String::new(), |l| format!(" (limit {l:.0}s)"));
        format!(
            "{} {:>2} {}: {} checks, {} failures, {:.2}s{}; {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.criterion,
            self.name,
            self.checked,
            self.failures,
            self.seconds,
            limit,
            self.detail
        )
    }
}

pub const CRITERIA: [(u8, &str, Option<f64>); 10] = [
    (1, "bessel-zeros", Some(1.0)),
    (2, "singleton", None),
    (3, "gram-oracle", Some(30.0)),
    (4, "bound-soundness", Some(300.0)),
    (5, "exponents", Some(180.0)),
    (6, "scenario-slopes", None),
    (7, "quantizer", None),
    (8, "interpolant-certificates", None),
    (9, "duality", None),
    (10, "structural-invariants", None),
];

fn dispatch(id: u8, seed: u64) -> Result<Tally> {
    match id {
        1 => spectra::bessel_zeros(),
        2 => spectra::singleton(seed),
        3 => spectra::gram_oracle(seed),
        4 => soundness::bound_soundness(seed),
        5 => experiments::exponents(),
        6 => experiments::scenario_slopes(),
        7 => certificates::quantizer(seed),
        8 => certificates::interpolants(seed),
        9 => certificates::duality(seed),
        10 => spectra::structural(seed),
        _ => unreachable!("criterion ids are 1..=10"),
    }
}

/// Runs one suite; an error inside the suite is reported as a failure.
pub fn run_criterion(id: u8, seed: u64) -> Option<Outcome> {
    let &(criterion, name, time_limit) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let result = dispatch(id, seed);
    let seconds = start.elapsed().as_secs_f64();
    let slow = time_limit.is_some_and(|l| seconds > l);
    Some(match result {
        Ok(t) => {
            let mut detail = t.notes.join("; ");
            if let Some(f) = &t.first_failure {
                detail = format!("{detail}; first failure: {f}");
            }
            if t.incomplete {
                detail = format!("{detail}; required instance count not reached");
            }
            if slow {
                detail = format!("{detail}; over the time limit");
            }
            Outcome {
                criterion,
                name,
                pass: t.failures == 0 && !t.incomplete && !slow && t.checked > 0,
                checked: t.checked,
                failures: t.failures,
                seconds,
                time_limit,
                detail,
            }
        }
        Err(e) => Outcome {
            criterion,
            name,
            pass: false,
            checked: 0,
            failures: 1,
            seconds,
            time_limit,
            detail: format!("error: {e}"),
        },
    })
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    CRITERIA.iter().filter_map(|c| run_criterion(c.0, seed)).collect()
}
