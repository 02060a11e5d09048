use super::report::{BoundReport, OperatorKind, Theorem};
use crate::error::{Error, Result};
use crate::geometry::{
    detect_clumps, local_hyperplane_decomposition, local_sparsity, min_separation, neighborhood,
    PointSet, Space,
};
use crate::lattice::{FrequencyDomain, Shape};
use crate::scalar::Exponent;
use crate::specfun::{c_alpha, unit_ball_volume};

/// Planes allowed per node when a decomposition is searched for.
pub const HYPER_R_MAX: usize = 8;

fn beta_min() -> f64 {
    1.0 / (2.0 * std::f64::consts::LN_2)
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta >= beta_min() * (1.0 - 1e-15)) {
        return Err(Error::OutOfRange { what: "beta", value: beta, lo: beta_min(), hi: f64::INFINITY });
    }
    Ok(())
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidArgument("the bounds need d ≥ 2".into()));
    }
    Ok(())
}

/// `|Ω ∩ Z^d|` for the matrix, `|Ω|` for the operator.
fn measure(shape: Shape, radius: f64, d: usize, op: OperatorKind) -> Result<f64> {
    match op {
        OperatorKind::Discrete => Ok(FrequencyDomain::<f64>::discrete(shape, radius, d)?.lattice_count()? as f64),
        OperatorKind::Continuous => Ok(FrequencyDomain::<f64>::continuous(shape, radius, d)?.volume()),
    }
}

/// `|B_r| / |B_r ∩ Z^d|`, by enumeration.
fn ball_ratio(radius: f64, d: usize) -> Result<f64> {
    let dom = FrequencyDomain::<f64>::discrete(Shape::Ball, radius, d)?;
    Ok(dom.volume() / dom.lattice_count()? as f64)
}

/// `Δ_p(X)` with `+∞` for a single node.
fn separation(x: &PointSet<f64>, p: Exponent) -> Result<f64> {
    if x.len() < 2 {
        Ok(f64::INFINITY)
    } else {
        min_separation(x, p)
    }
}

fn metric_for(x: &PointSet<f64>, op: OperatorKind) -> PointSet<f64> {
    x.with_space(match op {
        OperatorKind::Discrete => Space::Torus,
        OperatorKind::Continuous => Space::Euclidean,
    })
}

/// `Π_{0 < |x_j - x_k|_q ≤ scale} |x_j - x_k|_q / scale`, in the metric of `x`.
pub fn multiscale_product(x: &PointSet<f64>, k: usize, scale: f64, q: Exponent) -> f64 {
    (0..x.len())
        .filter(|&j| j != k)
        .map(|j| x.distance(j, k, q))
        .filter(|&t| t > 0.0 && t <= scale)
        .map(|t| t / scale)
        .product()
}

fn min_product(x: &PointSet<f64>, scale: f64, q: Exponent) -> f64 {
    (0..x.len()).map(|k| multiscale_product(x, k, scale, q)).fold(1.0, f64::min)
}

pub fn wellsep_cube(m: f64, d: usize, x: &PointSet<f64>, beta: f64, op: OperatorKind) -> Result<BoundReport> {
    check_dim(d)?;
    check_beta(beta)?;
    if !(m >= 1.0) {
        return Err(Error::OutOfRange { what: "m", value: m, lo: 1.0, hi: f64::INFINITY });
    }
    if x.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: x.dim() });
    }
    let mut rep = BoundReport::new(Theorem::WellSepCube, op);
    let delta = separation(&metric_for(x, op), Exponent::Inf)?;
    let need = beta * d as f64 / m;
    rep.check("separation", format!("Δ_∞ ≥ βd/m = {need}"), delta, delta >= need);
    rep.constant("beta", beta);
    rep.finish(|r| {
        let e = (1.0 / (2.0 * beta)).exp();
        let meas = measure(Shape::Cube, m, d, op)?;
        r.constant("measure", meas);
        r.upper = Some((e * meas).sqrt());
        Ok(((2.0 - e).max(0.0) * meas).sqrt())
    })
}

pub fn wellsep_ball(m: f64, d: usize, x: &PointSet<f64>, alpha: f64, op: OperatorKind) -> Result<BoundReport> {
    check_dim(d)?;
    if !(m > 0.0) {
        return Err(Error::OutOfRange { what: "m", value: m, lo: 0.0, hi: f64::INFINITY });
    }
    if x.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: x.dim() });
    }
    let c = c_alpha(alpha, d)?;
    let mut rep = BoundReport::new(Theorem::WellSepBall, op);
    let delta = separation(&metric_for(x, op), Exponent::Two)?;
    let need = alpha / m;
    rep.check("separation", format!("Δ_2 ≥ α/m = {need}"), delta, delta >= need);
    rep.constant("alpha", alpha);
    rep.constant("c_alpha", c);
    rep.finish(|_| Ok((c * m.powi(d as i32)).sqrt()))
}

struct SrSetup {
    x: PointSet<f64>,
    s: usize,
    d: usize,
    nu: usize,
}

fn sr_setup(x: &PointSet<f64>, tau: f64, p: Exponent) -> Result<SrSetup> {
    if x.is_empty() {
        return Err(Error::InvalidPointSet("empty node set".into()));
    }
    check_dim(x.dim())?;
    let xt = x.with_space(Space::Torus);
    let nu = if tau > 0.0 { local_sparsity(&xt, tau, p) } else { x.len() };
    Ok(SrSetup { s: x.len(), d: x.dim(), nu, x: xt })
}

/// Hypotheses shared by the super-resolution theorems; `dim` is `1` for cubes
/// and `√d` for balls, `big_c` is `βd` or `α`, `count` is `ν` or `λ`.
fn sr_hypotheses(rep: &mut BoundReport, m: f64, s: usize, tau: f64, dim: f64, tau_max: f64, big_c: f64, count: usize) {
    rep.check("samples", format!("m ≥ 4s·{dim} = {}", 4.0 * s as f64 * dim), m, m >= 4.0 * s as f64 * dim);
    rep.check("tau", format!("0 < τ ≤ {tau_max}"), tau, tau > 0.0 && tau <= tau_max);
    let lhs = 2.0 * big_c * count as f64 / tau;
    rep.check("density", format!("2·C·{count}/τ ≤ m = {m}"), lhs, lhs <= m);
}

fn cube_leading(beta: f64, s: usize, nu: usize) -> f64 {
    let e = (1.0 / (2.0 * beta)).exp();
    (2.0 / s as f64).sqrt() * (1.0 - 0.5 * e).max(0.0).powf(nu as f64 / 2.0)
}

/// `(1/√s)(c(α)/|B_1|)^{ν/2} (|B_{α/τ}|/|B_{α/τ}|_*)^{ν/2}`.
fn ball_leading(alpha: f64, d: usize, tau: f64, s: usize, nu: usize) -> Result<f64> {
    let c = c_alpha(alpha, d)?;
    let ratio = ball_ratio(alpha / tau, d)?;
    Ok((c / unit_ball_volume::<f64>(d) * ratio).powf(nu as f64 / 2.0) / (s as f64).sqrt())
}

pub fn sr_cube(m: f64, x: &PointSet<f64>, tau: f64, beta: f64, op: OperatorKind) -> Result<BoundReport> {
    check_beta(beta)?;
    let st = sr_setup(x, tau, Exponent::Inf)?;
    let mut rep = BoundReport::new(Theorem::SrCube, op);
    let (d, nu) = (st.d as f64, st.nu);
    sr_hypotheses(&mut rep, m, st.s, tau, 1.0, 1.0 / (4.0 * d), beta * d, nu);
    for (k, v) in [("beta", beta), ("tau", tau), ("nu", nu as f64)] {
        rep.constant(k, v);
    }
    rep.finish(|r| {
        let prod = min_product(&st.x, nu as f64 / m, Exponent::One);
        let meas = measure(Shape::Cube, m / (2.0 * nu as f64), st.d, op)?;
        r.constant("product", prod);
        r.constant("measure", meas);
        Ok(cube_leading(beta, st.s, nu) * meas.sqrt() * prod)
    })
}

pub fn sr_ball(m: f64, x: &PointSet<f64>, tau: f64, alpha: f64, op: OperatorKind) -> Result<BoundReport> {
    let st = sr_setup(x, tau, Exponent::Two)?;
    c_alpha(alpha, st.d)?;
    let mut rep = BoundReport::new(Theorem::SrBall, op);
    let (sd, nu) = ((st.d as f64).sqrt(), st.nu);
    sr_hypotheses(&mut rep, m, st.s, tau, sd, 1.0 / (4.0 * sd), alpha, nu);
    for (k, v) in [("alpha", alpha), ("tau", tau), ("nu", nu as f64)] {
        rep.constant(k, v);
    }
    rep.finish(|r| {
        let prod = min_product(&st.x, nu as f64 / m, Exponent::Two);
        let meas = measure(Shape::Ball, m / (2.0 * nu as f64), st.d, op)?;
        let lead = ball_leading(alpha, st.d, tau, st.s, nu)? * 2f64.powf(-(nu as f64 - 1.0) / 2.0);
        r.constant("product", prod);
        r.constant("measure", meas);
        r.constant("leading", lead);
        Ok(lead * meas.sqrt() * prod)
    })
}

fn clump_common(
    rep: &mut BoundReport,
    st: &SrSetup,
    m: f64,
    tau: f64,
    p: Exponent,
    q: Exponent,
    dim: f64,
    tau_max: f64,
    big_c: f64,
) -> Option<(usize, f64)> {
    let clumps = detect_clumps(&st.x, tau, p);
    let lambda = match &clumps {
        Ok(c) => c.lambda,
        Err(_) => 0,
    };
    rep.check("clumps", format!("equal-size clumps at τ = {tau}"), lambda as f64, clumps.is_ok());
    let lambda = lambda.max(1);
    let delta = separation(&st.x, q).unwrap_or(f64::INFINITY);
    // with λ = 1 the product is empty and the separation condition is vacuous
    let ok = lambda == 1 || delta <= lambda as f64 / m;
    rep.check("separation", format!("Δ ≤ λ/m = {}", lambda as f64 / m), delta, ok);
    sr_hypotheses(rep, m, st.s, tau, dim, tau_max, big_c, lambda);
    rep.constant("lambda", lambda as f64);
    rep.constant("delta", delta);
    rep.constant("tau", tau);
    clumps.ok().map(|_| (lambda, delta))
}

pub fn clump_cube(m: f64, x: &PointSet<f64>, tau: f64, beta: f64, op: OperatorKind) -> Result<BoundReport> {
    check_beta(beta)?;
    let st = sr_setup(x, tau, Exponent::Inf)?;
    let mut rep = BoundReport::new(Theorem::ClumpCube, op);
    let info = clump_common(&mut rep, &st, m, tau, Exponent::Inf, Exponent::One, 1.0, 1.0 / (4.0 * st.d as f64), beta * st.d as f64);
    rep.constant("beta", beta);
    rep.finish(|r| {
        let (lambda, delta) = info.expect("clumps pass");
        let l = lambda as f64;
        let meas = measure(Shape::Cube, m / (2.0 * l), st.d, op)?;
        r.constant("measure", meas);
        let prod = if lambda == 1 { 1.0 } else { (m * delta / l).powi(lambda as i32 - 1) };
        Ok(cube_leading(beta, st.s, lambda) * meas.sqrt() * prod)
    })
}

pub fn clump_ball(m: f64, x: &PointSet<f64>, tau: f64, alpha: f64, op: OperatorKind) -> Result<BoundReport> {
    let st = sr_setup(x, tau, Exponent::Two)?;
    c_alpha(alpha, st.d)?;
    let mut rep = BoundReport::new(Theorem::ClumpBall, op);
    let info = clump_common(&mut rep, &st, m, tau, Exponent::Two, Exponent::Two, (st.d as f64).sqrt(), 1.0 / (4.0 * (st.d as f64).sqrt()), alpha);
    rep.constant("alpha", alpha);
    rep.finish(|r| {
        let (lambda, delta) = info.expect("clumps pass");
        let l = lambda as f64;
        let meas = measure(Shape::Ball, m / (2.0 * l), st.d, op)?;
        let lead = ball_leading(alpha, st.d, tau, st.s, lambda)? * 2f64.powf(-(l - 1.0) / 2.0);
        r.constant("measure", meas);
        r.constant("leading", lead);
        let prod = if lambda == 1 { 1.0 } else { (m * delta / l).powi(lambda as i32 - 1) };
        Ok(lead * meas.sqrt() * prod)
    })
}

/// Largest plane count and smallest plane distance over all nodes, or `None`
/// if some neighborhood has no decomposition within `r_max` planes.
pub fn hyperplane_parameters(x: &PointSet<f64>, tau: f64, p: Exponent, r_max: usize) -> Option<(usize, f64)> {
    let mut r = 0;
    let mut eta = f64::INFINITY;
    for k in 0..x.len() {
        let dec = local_hyperplane_decomposition(x, k, tau, p, r_max).ok()?;
        r = r.max(dec.r());
        eta = eta.min(dec.eta);
    }
    Some((r, eta))
}

/// Every `τ`-neighborhood sits in one chart: raw and wrapped differences agree.
pub fn wrap_free(x: &PointSet<f64>, tau: f64, p: Exponent) -> bool {
    (0..x.len()).all(|k| {
        neighborhood(x, k, tau, p).into_iter().all(|j| {
            let d = x.chart_difference(j, k);
            x.point(j).iter().zip(x.point(k)).zip(d).all(|((a, b), c)| ((a - b) - c).abs() <= 1e-12)
        })
    })
}

fn hyper_common(
    rep: &mut BoundReport,
    st: &SrSetup,
    m: f64,
    tau: f64,
    p: Exponent,
    dim: f64,
    tau_max: f64,
    big_c: f64,
    r_max: usize,
) -> Option<(usize, f64)> {
    sr_hypotheses(rep, m, st.s, tau, dim, tau_max, big_c, st.nu);
    let params = if tau > 0.0 { hyperplane_parameters(&st.x, tau, p, r_max) } else { None };
    rep.check(
        "decomposition",
        format!("hyperplane cover with ≤ {r_max} planes per node"),
        params.map_or(f64::NAN, |(r, _)| r as f64),
        params.is_some(),
    );
    let wf = tau > 0.0 && wrap_free(&st.x, tau, p);
    rep.check("wrap-free", "neighborhoods inside one chart".into(), wf as u8 as f64, wf);
    let (r, eta) = params.unwrap_or((0, f64::NAN));
    let cap = (r as f64 + 1.0) / (2.0 * m);
    let ok = params.is_some() && (r == 0 || eta <= cap);
    rep.check("eta", format!("η ≤ (r+1)/(2m) = {cap}"), eta, ok);
    for (k, v) in [("tau", tau), ("nu", st.nu as f64), ("r", r as f64), ("eta", eta)] {
        rep.constant(k, v);
    }
    params
}

fn hyper_tail(m: f64, r: usize, eta: f64) -> f64 {
    if r == 0 {
        return 1.0;
    }
    let rp1 = r as f64 + 1.0;
    2f64.powf(-(r as f64) / 2.0) * (2.0 * m * eta / rp1).powi(r as i32)
}

fn refuse_discrete(op: OperatorKind) -> Result<()> {
    if op == OperatorKind::Discrete {
        return Err(Error::InvalidArgument("the hyperplane bounds hold for the continuous operator only".into()));
    }
    Ok(())
}

pub fn hyper_cube(m: f64, x: &PointSet<f64>, tau: f64, beta: f64, op: OperatorKind) -> Result<BoundReport> {
    refuse_discrete(op)?;
    check_beta(beta)?;
    let st = sr_setup(x, tau, Exponent::Inf)?;
    let d = st.d as f64;
    let mut rep = BoundReport::new(Theorem::HyperCube, op);
    let params = hyper_common(&mut rep, &st, m, tau, Exponent::Inf, 1.0, 1.0 / (4.0 * d), beta * d, HYPER_R_MAX);
    rep.constant("beta", beta);
    rep.finish(|r| {
        let (pl, eta) = params.expect("decomposition passes");
        let meas = measure(Shape::Cube, m / (2.0 * pl as f64 + 2.0), st.d, op)?;
        r.constant("measure", meas);
        Ok(cube_leading(beta, st.s, st.nu) * meas.sqrt() * hyper_tail(m, pl, eta))
    })
}

pub fn hyper_ball(m: f64, x: &PointSet<f64>, tau: f64, alpha: f64, op: OperatorKind) -> Result<BoundReport> {
    refuse_discrete(op)?;
    let st = sr_setup(x, tau, Exponent::Two)?;
    c_alpha(alpha, st.d)?;
    let sd = (st.d as f64).sqrt();
    let mut rep = BoundReport::new(Theorem::HyperBall, op);
    let params = hyper_common(&mut rep, &st, m, tau, Exponent::Two, sd, 1.0 / (4.0 * sd), alpha, HYPER_R_MAX);
    rep.constant("alpha", alpha);
    rep.finish(|r| {
        let (pl, eta) = params.expect("decomposition passes");
        let meas = measure(Shape::Ball, m / (2.0 * pl as f64 + 2.0), st.d, op)?;
        let lead = ball_leading(alpha, st.d, tau, st.s, st.nu)?;
        r.constant("measure", meas);
        r.constant("leading", lead);
        Ok(lead * meas.sqrt() * hyper_tail(m, pl, eta))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::c_alpha;

    fn pts(d: usize, p: Vec<Vec<f64>>) -> PointSet<f64> {
        PointSet::torus(d, p).unwrap()
    }

    #[test]
    fn wellsep_cube_constants() {
        let x = pts(2, vec![vec![0.0, 0.0], vec![0.3, 0.2]]);
        let r = wellsep_cube(10.0, 2, &x, beta_min(), OperatorKind::Discrete).unwrap();
        assert!(r.applicable && r.lower < 1e-6);
        let beta = 1.0 / (2.0 * 1.19f64.ln());
        let r = wellsep_cube(20.0, 2, &x, beta, OperatorKind::Discrete).unwrap();
        assert!((r.lower - 0.9 * 41.0).abs() < 1e-12);
        let r = wellsep_cube(2.0, 2, &x, beta, OperatorKind::Discrete).unwrap();
        assert!(!r.applicable && r.lower == 0.0 && r.upper.is_none());
        assert!(wellsep_cube(10.0, 2, &x, 0.5, OperatorKind::Discrete).is_err());
        assert!(wellsep_cube(10.0, 1, &pts(1, vec![vec![0.0]]), 1.0, OperatorKind::Discrete).is_err());
    }

    #[test]
    fn wellsep_ball_constants() {
        let x = pts(2, vec![vec![0.0, 0.0], vec![0.2, 0.0]]);
        let r = wellsep_ball(10.0, 2, &x, 1.5, OperatorKind::Continuous).unwrap();
        assert!(r.applicable);
        assert!((r.lower - (c_alpha(1.5_f64, 2).unwrap() * 100.0).sqrt()).abs() < 1e-12);
        assert!(matches!(wellsep_ball(10.0, 2, &x, 0.7, OperatorKind::Continuous), Err(Error::NoMinorant { .. })));
        let lo = crate::specfun::c_alpha_interval::<f64>(2).unwrap().0;
        let r = wellsep_ball(10.0, 2, &x, lo + 1e-9, OperatorKind::Continuous).unwrap();
        assert!(r.lower < 1e-3);
    }

    #[test]
    fn multiscale_products() {
        let x = pts(2, vec![vec![0.0, 0.0], vec![0.4, 0.0]]);
        assert_eq!(multiscale_product(&x, 0, 0.1, Exponent::One), 1.0);
        let x = pts(2, vec![vec![0.0, 0.0], vec![0.05, 0.0]]);
        assert!((multiscale_product(&x, 0, 0.1, Exponent::One) - 0.5).abs() < 1e-15);
        // endpoint of an equispaced line of four points at gap δ
        let delta = 0.01;
        let x = pts(2, (0..4).map(|i| vec![i as f64 * delta, 0.0]).collect());
        let scale = 0.025;
        let want: f64 = (1..4).map(|i| i as f64 * delta).filter(|&t| t <= scale).map(|t| t / scale).product();
        assert!((multiscale_product(&x, 0, scale, Exponent::Two) - want).abs() < 1e-15);
    }

    #[test]
    fn sr_cube_two_points() {
        let (beta, tau) = (1.0, 0.125);
        let m = 2.0 * beta * 2.0 * 2.0 / tau;
        let delta = 0.01;
        let x = pts(2, vec![vec![0.0, 0.0], vec![delta, 0.0]]);
        let r = sr_cube(m, &x, tau, beta, OperatorKind::Discrete).unwrap();
        assert!(r.applicable, "{:?}", r.failed());
        let lead = cube_leading(beta, 2, 2) * (((2.0 * (m / 4.0).floor() + 1.0) as f64).powi(2)).sqrt();
        assert!((r.lower - lead * m * delta / 2.0).abs() < 1e-12 * r.lower);
        // the clump corollary agrees on the same pair
        let c = clump_cube(m, &x, tau, beta, OperatorKind::Discrete).unwrap();
        assert!(c.applicable && (c.lower - r.lower).abs() < 1e-12 * r.lower);
        // ν = 1: product-free
        let y = pts(2, vec![vec![0.0, 0.0], vec![0.3, 0.0]]);
        let r1 = sr_cube(m, &y, tau, beta, OperatorKind::Discrete).unwrap();
        assert!(r1.applicable && r1.constants["product"] == 1.0);
        let r2 = sr_cube(7.0, &x, tau, beta, OperatorKind::Discrete).unwrap();
        assert!(!r2.applicable && r2.failed().contains(&"samples"));
    }

    #[test]
    fn clump_monotone_in_delta() {
        let (beta, tau, m) = (1.0, 0.125, 64.0);
        let mut prev = 0.0;
        for i in 1..=10 {
            let delta = i as f64 * 0.2 / m;
            let x = pts(2, vec![vec![0.0, 0.0], vec![delta, 0.0], vec![0.3, 0.3], vec![0.3 + delta, 0.3]]);
            let r = clump_cube(m, &x, tau, beta, OperatorKind::Continuous).unwrap();
            assert!(r.applicable);
            assert!(r.lower > prev);
            prev = r.lower;
        }
    }

    #[test]
    fn hyper_examples() {
        let delta = 0.004;
        let tri = pts(2, vec![vec![0.0, 0.0], vec![delta, 0.0], vec![0.0, delta]]);
        let (beta, tau) = (1.0, 0.125);
        let m = 2.0 * beta * 2.0 * 3.0 / tau;
        let r = hyper_cube(m, &tri, tau, beta, OperatorKind::Continuous).unwrap();
        assert!(r.applicable, "{:?}", r.failed());
        assert_eq!(r.constants["r"], 1.0);
        assert!((r.constants["eta"] - delta / 2f64.sqrt()).abs() < 1e-15);
        let r2 = hyper_cube(m, &pts(2, vec![vec![0.0, 0.0], vec![2.0 * delta, 0.0], vec![0.0, 2.0 * delta]]), tau, beta, OperatorKind::Continuous).unwrap();
        assert!((r2.lower / r.lower - 2.0).abs() < 1e-9);
        let line = pts(2, (0..4).map(|i| vec![i as f64 * delta, 0.0]).collect());
        let r = hyper_cube(2.0 * 2.0 * 4.0 / tau, &line, tau, beta, OperatorKind::Continuous).unwrap();
        assert_eq!(r.constants["r"], 3.0);
        assert!(hyper_cube(m, &tri, tau, beta, OperatorKind::Discrete).is_err());
        let far = pts(2, vec![vec![0.0, 0.0], vec![0.1, 0.0], vec![0.0, 0.1]]);
        let r = hyper_cube(m, &far, tau, beta, OperatorKind::Continuous).unwrap();
        assert!(!r.applicable && r.failed().contains(&"eta"));
    }

    #[test]
    fn each_hypothesis_can_fail_alone() {
        let (beta, tau) = (1.0, 0.125);
        let x = pts(2, vec![vec![0.0, 0.0], vec![0.01, 0.0]]);
        let m = 64.0;
        let ok = sr_cube(m, &x, tau, beta, OperatorKind::Discrete).unwrap();
        assert!(ok.applicable);
        for (mm, tt, name) in [(7.0, tau, "samples"), (m, 0.2, "tau"), (m, 0.05, "density")] {
            let r = sr_cube(mm, &x, tt, beta, OperatorKind::Discrete).unwrap();
            assert!(!r.applicable && r.lower == 0.0, "{name}");
            assert!(r.failed().contains(&name), "{name}: {:?}", r.failed());
        }
    }
}
