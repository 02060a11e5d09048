use rand::Rng;

use super::Tally;
use crate::error::{Error, Result};
use crate::experiment::{table_prelim, trial_rng};
use crate::geometry::PointSet;
use crate::lattice::{FrequencyDomain, Mode, Shape};
use crate::linalg::{hermitian_eigen, svd_jacobi};
use crate::operators::{build_matrix, gram, gram_direct, matrix_from_indices, measure};

/// Printed four-decimal values of `j_{d/2-1,1}/π` and `j_{d/2,1}/π`, `d = 2..=10`.
const ZEROS_LO: [f64; 9] = [0.7655, 1.0000, 1.2197, 1.4303, 1.6347, 1.8346, 2.0309, 2.2243, 2.4154];
const ZEROS_HI: [f64; 9] = [1.2197, 1.4303, 1.6347, 1.8346, 2.0309, 2.2243, 2.4154, 2.6046, 2.7920];

pub(super) fn bessel_zeros() -> Result<Tally> {
    let mut t = Tally::default();
    let csv = table_prelim()?;
    let rows: Vec<Vec<f64>> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse::<f64>().map_err(|e| Error::Serde(e.to_string()))).collect())
        .collect::<Result<_>>()?;
    if rows.len() != 9 {
        return Err(Error::Serde(format!("expected 9 rows, got {}", rows.len())));
    }
    let mut worst: f64 = 0.0;
    for (i, row) in rows.iter().enumerate() {
        for (got, want) in [(row[1], ZEROS_LO[i]), (row[2], ZEROS_HI[i])] {
            let err = (got - want).abs();
            worst = worst.max(err);
            t.check(err <= 1e-4, || format!("d = {}: {got} vs {want}", row[0]));
        }
    }
    t.note(format!("largest deviation {worst:.2e}"));
    Ok(t)
}

fn random_domain(rng: &mut impl Rng, d: usize, m: f64) -> Result<FrequencyDomain<f64>> {
    let shape = if rng.gen_bool(0.5) { Shape::Cube } else { Shape::Ball };
    let mode = match rng.gen_range(0..3) {
        0 => Mode::Continuous,
        k => Mode::Discrete { rho: k },
    };
    FrequencyDomain::new(shape, m, mode, d)
}

pub(super) fn singleton(seed: u64) -> Result<Tally> {
    let mut rng = trial_rng(seed, 102);
    let mut t = Tally::default();
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let d = rng.gen_range(1..=4);
        let m = rng.gen_range(0.5..[0.0, 20.0, 8.0, 4.0, 2.5][d]);
        let dom = random_domain(&mut rng, d, m)?;
        let x = PointSet::torus(d, vec![(0..d).map(|_| rng.gen_range(-0.5..0.5)).collect()])?;
        let r = measure(&dom, &x)?;
        let want = dom.measure()?.sqrt();
        let err = (r.sigma_min - want).abs().max((r.sigma_max - want).abs()) / want;
        worst = worst.max(err);
        t.check(err <= 1e-12, || format!("{dom:?}: σ = ({}, {}) vs {want}", r.sigma_min, r.sigma_max));
    }
    t.note(format!("largest relative error {worst:.2e}"));
    Ok(t)
}

pub(super) fn gram_oracle(seed: u64) -> Result<Tally> {
    let mut rng = trial_rng(seed, 103);
    let mut t = Tally::default();
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let d = rng.gen_range(2..=3);
        let rho: u32 = rng.gen_range(1..=2);
        let m = rng.gen_range(1.0..12.0);
        let s = rng.gen_range(1..=8);
        let dom = FrequencyDomain::<f64>::new(Shape::Cube, m, Mode::Discrete { rho }, d)?;
        let x = PointSet::torus(d, (0..s).map(|_| (0..d).map(|_| rng.gen_range(-0.5..0.5)).collect()).collect())?;
        let closed = gram(&dom, &x)?.entries;
        let direct = gram_direct(&dom, &x)?.entries;
        let mut err: f64 = 0.0;
        for j in 0..s {
            for k in 0..s {
                err = err.max((closed[(j, k)] - direct[(j, k)]).norm());
            }
        }
        worst = worst.max(err);
        t.check(err <= 1e-9, || format!("d = {d}, ρ = {rho}, m = {m}, s = {s}: entry error {err:e}"));
    }
    t.note(format!("largest entry error {worst:.2e}"));
    Ok(t)
}

fn singular_values(dom: &FrequencyDomain<f64>, x: &PointSet<f64>) -> Result<Vec<f64>> {
    Ok(svd_jacobi(&build_matrix(dom, x)?.matrix)?.sigma)
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max)
}

fn eigenvalues(g: &crate::linalg::CMatrix<f64>) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(g)?.values)
}

/// Subset monotonicity, node translation, frequency shift and oversampling
/// convergence on the same random instances.
pub(super) fn structural(seed: u64) -> Result<Tally> {
    let mut rng = trial_rng(seed, 110);
    let mut t = Tally::default();
    for _ in 0..50 {
        let d = rng.gen_range(2..=3);
        let s = rng.gen_range(2..=6);
        let m = rng.gen_range(1..=if d == 2 { 8 } else { 4 }) as f64;
        // half of the instances are a tight cluster
        let scale = if rng.gen_bool(0.5) { 0.5 / m } else { 1.0 };
        let pts: Vec<Vec<f64>> =
            (0..s).map(|_| (0..d).map(|_| scale * rng.gen_range(-0.45..0.45)).collect()).collect();
        let x = PointSet::torus(d, pts.clone())?;

        let cube = FrequencyDomain::<f64>::discrete(Shape::Cube, m, d)?;
        let ball = FrequencyDomain::<f64>::discrete(Shape::Ball, m, d)?;
        let sc = singular_values(&cube, &x)?;
        let sb = singular_values(&ball, &x)?;
        let tol = 1e-9 * sc[s - 1];
        t.check(sb[0] <= sc[0] + tol, || format!("ball σ_min {} above cube σ_min {}", sb[0], sc[0]));

        let shift: Vec<f64> = (0..d).map(|_| rng.gen_range(-0.5..0.5)).collect();
        let moved = x.translated(&shift)?;
        let st = singular_values(&cube, &moved)?;
        let e = max_diff(&sc, &st);
        t.check(e <= tol, || format!("translation changed singular values by {e:e}"));

        let k0: Vec<i64> = (0..d).map(|_| rng.gen_range(-5..=5)).collect();
        let shifted: Vec<Vec<i64>> = cube
            .enumerate_indices()?
            .into_iter()
            .map(|n| n.iter().zip(&k0).map(|(a, b)| a + b).collect())
            .collect();
        let sf = svd_jacobi(&matrix_from_indices(shifted, 1, &x)?.matrix)?.sigma;
        let e = max_diff(&sc, &sf);
        t.check(e <= tol, || format!("frequency shift {k0:?} changed singular values by {e:e}"));

        // oversampled Gram matrices against the continuous one; integer m keeps
        // ρm integral so every refinement covers the cube exactly
        let cont = eigenvalues(&gram(&FrequencyDomain::continuous(Shape::Cube, m, d)?, &x)?.entries)?;
        let mut errs = Vec::with_capacity(4);
        for rho in [1u32, 2, 4, 8] {
            let dom = FrequencyDomain::<f64>::new(Shape::Cube, m, Mode::Discrete { rho }, d)?;
            errs.push(max_diff(&eigenvalues(&gram(&dom, &x)?.entries)?, &cont));
        }
        let decreasing = errs.windows(2).all(|w| w[1] < w[0]);
        t.check(decreasing, || format!("oversampling errors {errs:?} not strictly decreasing"));
    }
    t.note("50 instances, four properties each".to_string());
    Ok(t)
}
