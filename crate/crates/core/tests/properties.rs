use nonharmonic::bounds::{wellsep_cube, OperatorKind};
use nonharmonic::experiment::{fit_slope, sweep, DeltaGrid, ScenarioKind, SweepConfig, SweepRecord};
use nonharmonic::geometry::{lp_distance, min_separation, PointSet, Space};
use nonharmonic::interpolants::quantize_direction;
use nonharmonic::lattice::{FrequencyDomain, Shape};
use nonharmonic::operators::{gram, gram_direct, measure};
use nonharmonic::{Exponent, PointSet64};
use proptest::prelude::*;

fn coord() -> impl Strategy<Value = f64> {
    -0.5f64..0.5
}

fn point(d: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(coord(), d)
}

fn exponent() -> impl Strategy<Value = Exponent> {
    prop_oneof![Just(Exponent::One), Just(Exponent::Two), Just(Exponent::Inf)]
}

fn node_set(d: usize, max: usize) -> impl Strategy<Value = PointSet64> {
    prop::collection::vec(point(d), 1..=max).prop_filter_map("coincident nodes", move |pts| PointSet::torus(d, pts).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn torus_metric_axioms(x in point(3), y in point(3), z in point(3), p in exponent()) {
        let d = |a: &[f64], b: &[f64]| lp_distance(a, b, p, Space::Torus).unwrap();
        prop_assert!(d(&x, &x) == 0.0);
        prop_assert!((d(&x, &y) - d(&y, &x)).abs() < 1e-15);
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z) + 1e-12);
        prop_assert!(d(&x, &y) <= lp_distance(&x, &y, p, Space::Euclidean).unwrap() + 1e-15);
    }

    #[test]
    fn norms_are_ordered(x in point(4), y in point(4)) {
        let inf = lp_distance(&x, &y, Exponent::Inf, Space::Torus).unwrap();
        let two = lp_distance(&x, &y, Exponent::Two, Space::Torus).unwrap();
        let one = lp_distance(&x, &y, Exponent::One, Space::Torus).unwrap();
        prop_assert!(inf <= two + 1e-15 && two <= one + 1e-15);
        prop_assert!(inf <= 0.5);
    }

    #[test]
    fn quantizer_inequalities(u in prop::collection::vec(-1.0f64..1.0, 2..=4), scale in 0.01f64..1.0, slack in 0.0f64..1.0, ball in any::<bool>()) {
        let p = if ball { Exponent::Two } else { Exponent::Inf };
        let d = u.len() as f64;
        let cap = if ball { 1.0 / (4.0 * d.sqrt()) } else { 1.0 / (4.0 * d) };
        let nu = p.conjugate().norm(&u);
        prop_assume!(nu > 1e-6);
        let u: Vec<f64> = u.iter().map(|v| v * scale * cap / nu).collect();
        let nu = p.conjugate().norm(&u);
        let alpha = nu + slack * (cap - nu);
        let q = quantize_direction(&u, alpha, p).unwrap();
        let qf: Vec<f64> = q.q.iter().map(|&v| v as f64).collect();
        let dot: f64 = qf.iter().zip(&u).map(|(a, b)| a * b).sum::<f64>().abs();
        prop_assert!(p.norm(&qf) <= (1.0 + 1e-12) / (2.0 * alpha));
        prop_assert!(dot >= (1.0 - 1e-12) * nu / (4.0 * alpha) && dot <= 0.5 + 1e-12);
    }

    #[test]
    fn singleton_sigma_is_root_measure(x in point(2), m in 1.0f64..12.0, ball in any::<bool>(), discrete in any::<bool>()) {
        let shape = if ball { Shape::Ball } else { Shape::Cube };
        let dom = if discrete { FrequencyDomain::discrete(shape, m, 2) } else { FrequencyDomain::continuous(shape, m, 2) }.unwrap();
        let rep = measure(&dom, &PointSet::torus(2, vec![x]).unwrap()).unwrap();
        let want = dom.measure().unwrap().sqrt();
        prop_assert!((rep.sigma_min - want).abs() <= 1e-12 * want);
        prop_assert!((rep.sigma_max - want).abs() <= 1e-12 * want);
    }

    #[test]
    fn gram_matches_direct(x in node_set(2, 5), m in 1u32..6) {
        let dom = FrequencyDomain::discrete(Shape::Cube, m as f64, 2).unwrap();
        let a = gram(&dom, &x).unwrap();
        let b = gram_direct(&dom, &x).unwrap();
        let n = x.len();
        for j in 0..n {
            for k in 0..n {
                prop_assert!((a.entries[(j, k)] - b.entries[(j, k)]).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn spectrum_is_translation_invariant(x in node_set(2, 5), t in point(2), m in 2u32..8) {
        let dom = FrequencyDomain::discrete(Shape::Cube, m as f64, 2).unwrap();
        let a = measure(&dom, &x).unwrap();
        let b = measure(&dom, &x.translated(&t).unwrap()).unwrap();
        prop_assert!((a.sigma_min - b.sigma_min).abs() <= 1e-9 * a.sigma_max);
        prop_assert!((a.sigma_max - b.sigma_max).abs() <= 1e-9 * a.sigma_max);
    }

    #[test]
    fn continuous_dilation_homogeneity(x in node_set(2, 4), m in 2.0f64..10.0, delta in 0.2f64..1.0) {
        let x = x.with_space(Space::Euclidean);
        let near = measure(&FrequencyDomain::continuous(Shape::Cube, m, 2).unwrap(), &x.dilate(delta).unwrap()).unwrap();
        let far = measure(&FrequencyDomain::continuous(Shape::Cube, delta * m, 2).unwrap(), &x).unwrap();
        prop_assume!(!near.floor_hit && !far.floor_hit);
        let scaled = far.sigma_min / delta;
        prop_assert!((near.sigma_min - scaled).abs() <= 1e-7 * near.sigma_max, "{} vs {}", near.sigma_min, scaled);
    }

    #[test]
    fn wellsep_cube_is_sound(x in node_set(2, 6), extra in 1.5f64..4.0) {
        prop_assume!(x.len() >= 2);
        let sep = min_separation(&x, Exponent::Inf).unwrap();
        prop_assume!(sep > 0.02);
        let m = (4.0 * x.len() as f64).max(2.0 * extra / sep);
        let dom = FrequencyDomain::discrete(Shape::Cube, m, 2).unwrap();
        prop_assume!(dom.lattice_count().unwrap() <= 40_000);
        let rep = wellsep_cube(m, 2, &x, 1.0, OperatorKind::Discrete).unwrap();
        let s = measure(&dom, &x).unwrap();
        if rep.applicable {
            prop_assert!(rep.lower <= s.sigma_min + 1e-9);
            prop_assert!(rep.upper.unwrap() >= s.sigma_max - 1e-9);
        }
    }

    #[test]
    fn fit_recovers_power_law(k in 0.5f64..6.0, c in 1e-3f64..1e3) {
        let recs: Vec<SweepRecord> = DeltaGrid::default()
            .values()
            .unwrap()
            .into_iter()
            .map(|delta| SweepRecord { trial: 0, delta, sigma_min: c * delta.powf(k), sigma_max: 1.0, floor_hit: false, bounds: vec![], error: None })
            .collect();
        let f = fit_slope(&recs, (1e-3, 1e-1)).unwrap();
        prop_assert!((f.slope - k).abs() < 1e-9);
    }
}

#[test]
fn f32_and_f64_agree() {
    let pts = vec![vec![0.0, 0.0], vec![0.2, -0.1], vec![-0.3, 0.25]];
    let x64 = PointSet::<f64>::torus(2, pts.clone()).unwrap();
    let x32 = PointSet::<f32>::torus(2, pts.iter().map(|p| p.iter().map(|&v| v as f32).collect()).collect()).unwrap();
    let a = measure(&FrequencyDomain::<f64>::discrete(Shape::Cube, 6.0, 2).unwrap(), &x64).unwrap();
    let b = measure(&FrequencyDomain::<f32>::discrete(Shape::Cube, 6.0, 2).unwrap(), &x32).unwrap();
    assert!((a.sigma_min - b.sigma_min as f64).abs() < 1e-4 * a.sigma_max);
}

#[test]
fn generic_sweep_is_deterministic() {
    let cfg = SweepConfig {
        scenario: ScenarioKind::Generic { lambda: 4 },
        m: 20.0,
        d: 2,
        shape: Shape::Cube,
        mode: OperatorKind::Discrete,
        rho: 1,
        deltas: DeltaGrid { min: 1e-3, max: 1e-1, count: 5 },
        bounds: vec![],
        seed: 11,
        trials: 3,
    };
    let a = sweep(&cfg).unwrap();
    let b = sweep(&cfg).unwrap();
    assert_eq!(a, b);
    let order: Vec<(u64, f64)> = a.iter().map(|r| (r.trial, r.delta)).collect();
    let mut sorted = order.clone();
    sorted.sort_by(|p, q| p.0.cmp(&q.0).then(q.1.total_cmp(&p.1)));
    assert_eq!(order, sorted);
}
