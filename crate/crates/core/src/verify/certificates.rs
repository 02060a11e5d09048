use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::instances::{clustered, spectrum};
use super::Tally;
use crate::bounds::{BoundParams, OperatorKind, HYPER_R_MAX};
use crate::error::Result;
use crate::experiment::trial_rng;
use crate::interpolants::{
    duality_lower_bound, hyper_family, local_planes, min_norm_family, neighbor_interpolant_continuous,
    neighbor_interpolant_discrete, neighbor_interpolant_integer_hyperplanes, quantize_direction,
    sr_family, InterpolantProduct, LocalizationConstants, LAGRANGE_TOL,
};
use crate::geometry::{local_hyperplane_decomposition, PointSet};
use crate::lattice::Shape;
use crate::scalar::Exponent;

const REL: f64 = 1e-12;

fn pick_p(rng: &mut ChaCha8Rng) -> Exponent {
    if rng.gen_bool(0.5) {
        Exponent::Two
    } else {
        Exponent::Inf
    }
}

/// Random nonzero vector scaled to `|u|_q = len`.
fn vector_with_norm(rng: &mut ChaCha8Rng, d: usize, q: Exponent, len: f64) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = q.norm(&v);
        if n > 1e-3 {
            return v.into_iter().map(|c| c * len / n).collect();
        }
    }
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..=hi.ln())).exp()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(super) fn quantizer(seed: u64) -> Result<Tally> {
    let mut rng = trial_rng(seed, 107);
    let mut t = Tally::default();
    for i in 0..10_000 {
        let d = rng.gen_range(2..=4);
        let p = pick_p(&mut rng);
        let cap = 1.0 / (4.0 * p.dim_factor(d));
        let alpha = cap * rng.gen_range(0.01..=1.0);
        // every tenth draw sits on the boundary |u|_p' = α
        let len = if i % 10 == 0 { alpha } else { alpha * log_uniform(&mut rng, 1e-3, 1.0) };
        let u = vector_with_norm(&mut rng, d, p.conjugate(), len);
        let q = match quantize_direction(&u, alpha, p) {
            Ok(q) => q,
            Err(e) => {
                t.check(false, || format!("u = {u:?}, α = {alpha}, p = {p}: {e}"));
                continue;
            }
        };
        let qf: Vec<f64> = q.q.iter().map(|&c| c as f64).collect();
        let nu = p.conjugate().norm(&u);
        let qu = dot(&qf, &u);
        let gap = (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * qu)).norm();
        let ok = p.norm(&qf) <= (1.0 + REL) / (2.0 * alpha)
            && qu.abs() >= (1.0 - REL) * nu / (4.0 * alpha)
            && qu.abs() <= 0.5 * (1.0 + REL)
            && gap >= (1.0 - REL) * 2f64.sqrt() * nu / alpha;
        t.check(ok, || format!("u = {u:?}, α = {alpha}, p = {p}: q = {:?}", q.q));
    }
    t.note("10000 draws over d ∈ {2,3,4}, p ∈ {2,∞}".to_string());
    Ok(t)
}

/// Interpolation residuals, the norm bound and the bandwidth certificate of
/// one interpolant. `zeros` are points where `f` must vanish.
fn certify(t: &mut Tally, label: &str, f: &InterpolantProduct, zeros: &[Vec<f64>], bandwidth: f64) -> Result<()> {
    let d = f.d;
    let mut res = (f.evaluate(&vec![0.0; d])? - 1.0).norm();
    for z in zeros {
        res = res.max(f.evaluate(z)?.norm());
    }
    t.check(res < LAGRANGE_TOL, || format!("{label}: residual {res:e}"));
    let norm = if f.is_polynomial() && label == "neighbor" { f.sup_norm_grid()? } else { f.l2_norm()? };
    t.check(norm <= f.norm_bound + 1e-6, || format!("{label}: norm {norm} above bound {}", f.norm_bound));
    let support = f.numerical_support(1e-12)?;
    t.check(support <= f.bandwidth_certificate + 1e-9, || {
        format!("{label}: numerical support {support} beyond certificate {}", f.bandwidth_certificate)
    });
    t.check(f.bandwidth_certificate <= bandwidth * (1.0 + REL), || {
        format!("{label}: certificate {} above {bandwidth}", f.bandwidth_certificate)
    });
    Ok(())
}

/// A point on `{θ·y = η}` at most `reach` from its foot.
fn on_plane(rng: &mut ChaCha8Rng, theta: &[f64], eta: f64, reach: f64) -> Vec<f64> {
    let d = theta.len();
    let w: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let c = dot(&w, theta) / dot(theta, theta);
    let perp: Vec<f64> = w.iter().zip(theta).map(|(a, b)| a - c * b).collect();
    let scale = reach * rng.gen_range(0.0..1.0) / Exponent::Two.norm(&perp).max(1e-300);
    let tn = Exponent::Two.norm(theta);
    theta.iter().zip(&perp).map(|(a, b)| eta * a / tn + scale * b).collect()
}

pub(super) fn interpolants(seed: u64) -> Result<Tally> {
    let mut rng = trial_rng(seed, 108);
    let mut t = Tally::default();
    for _ in 0..100 {
        let d = rng.gen_range(2..=3);
        let p = pick_p(&mut rng);
        let df = p.dim_factor(d);
        let r = rng.gen_range(1..=4);
        let n = 2.0 * df * r as f64 * rng.gen_range(1.0..2.0);
        let cap = 1.0 / (4.0 * df);
        let near = r as f64 / (2.0 * n);
        let mut u = vec![vec![0.0; d]];
        for _ in 1..rng.gen_range(1..=r) {
            let len = log_uniform(&mut rng, 1e-3 * near, cap);
            u.push(vector_with_norm(&mut rng, d, p.conjugate(), len));
        }
        let (f, _) = neighbor_interpolant_discrete(&u, n, r, p)?;
        certify(&mut t, "neighbor", &f, &u[1..], n * (r as f64 - 1.0) / r as f64)?;
    }
    let mut sets = 0;
    while sets < 100 {
        // a reference node at the origin with up to four neighbors at scale δ;
        // the planes come from the decomposition, the bandwidth from the largest η
        let d = rng.gen_range(2..=3);
        let p = pick_p(&mut rng);
        let delta = log_uniform(&mut rng, 1e-4, 1e-2);
        let mut pts = vec![vec![0.0; d]];
        for _ in 0..rng.gen_range(1..=4) {
            pts.push((0..d).map(|_| delta * rng.gen_range(-1.0..1.0)).collect());
        }
        let x = PointSet::euclidean(d, pts)?;
        let Ok(dec) = local_hyperplane_decomposition(&x, 0, 10.0 * delta, p, HYPER_R_MAX) else { continue };
        let planes = local_planes(&dec, x.point(0));
        let r = planes.len();
        let eta_max = planes.iter().map(|pl| pl.1).fold(0.0, f64::max);
        let n = (r as f64 + 1.0) / (4.0 * eta_max) * rng.gen_range(0.3..1.0);
        let f = neighbor_interpolant_continuous(&planes, d, n, p)?;
        certify(&mut t, "continuous", &f, &x.points()[1..], n)?;
        sets += 1;
    }
    for _ in 0..100 {
        let d = rng.gen_range(2..=3);
        let p = pick_p(&mut rng);
        let r = rng.gen_range(1..=3);
        let n = rng.gen_range(8.0..24.0);
        let qmax = n / (r as f64 + 1.0);
        let cap = (r as f64 + 1.0) / (4.0 * n);
        let comp = (qmax / (d as f64).sqrt()).floor().max(1.0) as i64;
        let mut planes = Vec::with_capacity(r);
        let mut u = vec![vec![0.0; d]];
        for _ in 0..r {
            let q: Vec<i64> = loop {
                let q: Vec<i64> = (0..d).map(|_| rng.gen_range(-comp..=comp)).collect();
                if q.iter().any(|&c| c != 0) {
                    break q;
                }
            };
            let qf: Vec<f64> = q.iter().map(|&c| c as f64).collect();
            let eta = log_uniform(&mut rng, 1e-3 * cap, cap);
            for _ in 0..rng.gen_range(1..=2) {
                u.push(on_plane(&mut rng, &qf, eta, 4.0 * eta));
            }
            planes.push((q, eta));
        }
        let f = neighbor_interpolant_integer_hyperplanes(&u, &planes, n, p)?;
        certify(&mut t, "integer", &f, &u[1..], n)?;
    }
    t.note("100 sets for each of the three constructions".to_string());
    Ok(t)
}

const DUALITY_INSTANCES: usize = 100;

pub(super) fn duality(seed: u64) -> Result<Tally> {
    let mut rng = trial_rng(seed, 109);
    let mut t = Tally::default();
    let (mut done, mut attempts, mut floor) = (0usize, 0usize, 0usize);
    let mut built = [0usize; 3];
    while done < DUALITY_INSTANCES && attempts < 20 * DUALITY_INSTANCES {
        attempts += 1;
        let (shape, op, d) = match rng.gen_range(0..4) {
            0 => (Shape::Cube, OperatorKind::Discrete, 2),
            1 => (Shape::Ball, OperatorKind::Discrete, 2),
            2 => (Shape::Cube, OperatorKind::Continuous, 2),
            _ => (Shape::Ball, OperatorKind::Continuous, rng.gen_range(2..=3)),
        };
        let clusters = rng.gen_range(1..=3);
        // three-node clusters in three dimensions push the localization degree past 40
        let lambda = rng.gen_range(1..=if d == 3 { 2 } else { 3 });
        let Some(inst) = clustered(&mut rng, d, shape, op, clusters, lambda)? else { continue };
        let dom = inst.domain()?;
        let sp = spectrum(&dom, &inst.x)?;
        if sp.floor_hit {
            floor += 1;
            continue;
        }
        let params = BoundParams::default_for(d)?;
        let consts = match shape {
            Shape::Cube => LocalizationConstants::cube(params.beta, d)?,
            Shape::Ball => LocalizationConstants::ball(params.alpha, d, inst.tau)?,
        };
        let mut families: Vec<(usize, Vec<InterpolantProduct>)> = Vec::new();
        match op {
            OperatorKind::Discrete => {
                if let Ok(f) = sr_family(&inst.x, inst.m, inst.tau, consts) {
                    families.push((0, f));
                }
                if dom.lattice_count()? <= 40_000 {
                    families.push((2, min_norm_family(&dom, &inst.x)?));
                }
            }
            OperatorKind::Continuous => {
                if let Ok(f) = hyper_family(&inst.x, inst.m, inst.tau, consts, HYPER_R_MAX) {
                    families.push((1, f));
                }
            }
        }
        if families.is_empty() {
            continue;
        }
        done += 1;
        for (kind, fam) in families {
            built[kind] += 1;
            let b = duality_lower_bound(&inst.x, &fam, &dom)?;
            t.check(b.bound <= sp.sigma_min + 1e-9, || {
                format!("family {kind}: bound {} above σ_min {} (m = {}, x = {:?})", b.bound, sp.sigma_min, inst.m, inst.x.points())
            });
        }
    }
    if done < DUALITY_INSTANCES {
        t.incomplete = true;
    }
    t.note(format!(
        "{done} instances ({attempts} drawn, {floor} at the floor); families: {} neighborhood products, {} hyperplane, {} minimum-norm",
        built[0], built[1], built[2]
    ));
    Ok(t)
}
