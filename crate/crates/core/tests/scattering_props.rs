use hermsym::boundary::{
    bc_from_unitary, preset, spectral_asymptotic_map, BoundaryConditions, Preset,
};
use hermsym::matrix::{CMatrix, Tolerance};
use hermsym::random::haar_unitary;
use hermsym::scattering::{
    asymptotic_check, hermitian_case_matrix, jost_at_origin, jost_origin, scatter_from_jost,
    scattering_sweep, wronskian, zero_potential_s, KGrid, Potential, Spacing, StarGraph,
    ASYMPTOTIC_CHECKPOINTS,
};
use hermsym::C64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tol() -> Tolerance<f64> {
    Tolerance::default()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sampled_decay() -> Potential<f64> {
    Potential::sampled_fn(12.0, 1201, |x| {
        -2.0 * (-x).exp() * (1.0 + 0.5 * (3.0 * x).sin())
    })
}

fn conditions(n: usize, seed: u64) -> Vec<BoundaryConditions<f64>> {
    let mut r = rng(seed);
    let mut out: Vec<_> = [
        Preset::Dirichlet,
        Preset::Neumann,
        Preset::Kirchhoff,
        Preset::Delta { alpha: 1.5 },
    ]
    .iter()
    .map(|p| preset(p, n, &tol()).unwrap())
    .collect();
    for _ in 0..5 {
        out.push(bc_from_unitary(&haar_unitary(&mut r, n), &tol()).unwrap());
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn free_pipeline_matches_closed_form(seed in any::<u64>(), n in 1usize..=4, k in 0.05f64..50.0) {
        let u = haar_unitary::<f64, _>(&mut rng(seed), n);
        let bc = bc_from_unitary(&u, &tol()).unwrap();
        let g = StarGraph::uniform(n, Potential::Zero).unwrap();
        let j = jost_origin(&g, k).unwrap();
        let s = scatter_from_jost(&j, &bc, &tol()).unwrap();
        let closed = zero_potential_s(&u, k, &tol()).unwrap();
        prop_assert!(s.s.distance(&closed) <= 1e-9);
        prop_assert!(s.unitarity_defect <= 1e-10);
    }

    #[test]
    fn self_wronskian_vanishes(seed in any::<u64>(), n in 1usize..=6) {
        let u = haar_unitary::<f64, _>(&mut rng(seed), n);
        let bc = bc_from_unitary(&u, &tol()).unwrap();
        let w = wronskian(bc.a(), bc.b(), bc.a(), bc.b()).unwrap();
        prop_assert!(w.frobenius_norm() <= 1e-9);
    }

    #[test]
    fn random_potentials_give_unitary_s(seed in any::<u64>(), depth in -5.0f64..5.0, width in 0.1f64..3.0, k in 0.1f64..30.0) {
        let mut r = rng(seed);
        let u = haar_unitary::<f64, _>(&mut r, 3);
        let bc = bc_from_unitary(&u, &tol()).unwrap();
        let g = StarGraph::new(vec![
            Potential::square_well(depth, width),
            Potential::Zero,
            Potential::PiecewiseConstant(vec![(0.2, 0.2 + width, depth * 0.5)]),
        ]).unwrap();
        let res = scatter_from_jost(&jost_origin(&g, k).unwrap(), &bc, &tol()).unwrap();
        prop_assert!(res.unitarity_defect <= 1e-7);
    }

    #[test]
    fn hermitian_form_matches_general(mask in proptest::collection::vec(any::<bool>(), 1..=4), k in 0.1f64..20.0) {
        let n = mask.len();
        let bc = preset(&Preset::Mixed { dirichlet: mask }, n, &tol()).unwrap();
        let g = StarGraph::uniform(n, Potential::square_well(1.0, 1.0)).unwrap();
        let j = jost_origin(&g, k).unwrap();
        let general = scatter_from_jost(&j, &bc, &tol()).unwrap().s;
        prop_assert!(general.distance(&hermitian_case_matrix(&bc, &j, &tol()).unwrap()) <= 1e-9);
    }
}

#[test]
fn unitarity_across_potentials_and_conditions() {
    let ks = KGrid {
        k_min: 0.1,
        k_max: 50.0,
        count: 12,
        spacing: Spacing::Log,
    }
    .points()
    .unwrap();
    for pot in [
        Potential::Zero,
        Potential::square_well(1.0, 1.0),
        sampled_decay(),
    ] {
        let g = StarGraph::uniform(3, pot).unwrap();
        for bc in conditions(3, 7) {
            for p in scattering_sweep(&g, &bc, &ks, &tol()).unwrap() {
                let r = p.outcome.unwrap();
                assert!(
                    r.unitarity_defect <= 1e-7,
                    "k={} defect={}",
                    r.k,
                    r.unitarity_defect
                );
            }
        }
    }
}

#[test]
fn square_well_against_transfer_matrix() {
    // closed-form backward transfer through q = −1 on [0, 1]
    let oracle = |k: f64| {
        let kappa = (k * k + 1.0).sqrt();
        let fa = C64::new(0.0, k).exp();
        let fxa = C64::new(0.0, k) * fa;
        let (s, c) = kappa.sin_cos();
        (fa * c - fxa * (s / kappa), fa * (kappa * s) + fxa * c)
    };
    let p = Potential::square_well(1.0, 1.0);
    let bc = preset::<f64>(&Preset::Kirchhoff, 2, &tol()).unwrap();
    for k in [0.5, 2.0, 10.0] {
        let (f, fx) = oracle(k);
        let j = jost_at_origin(&p, k).unwrap();
        assert!((j.f - f).norm() / f.norm() < 1e-7);
        assert!((j.f_x - fx).norm() / fx.norm() < 1e-7);
        // S built from exact Jost data
        let exact = hermsym::scattering::JostOrigin {
            k,
            f_plus: vec![f; 2],
            f_plus_x: vec![fx; 2],
            estimated_error: 0.0,
        };
        let g = StarGraph::uniform(2, p.clone()).unwrap();
        let s_num = scatter_from_jost(&jost_origin(&g, k).unwrap(), &bc, &tol())
            .unwrap()
            .s;
        let s_exact = scatter_from_jost(&exact, &bc, &tol()).unwrap().s;
        assert!(s_num.distance(&s_exact) <= 1e-6);
    }
}

#[test]
fn conjugate_jost_for_real_potential() {
    let p = sampled_decay();
    let j = jost_at_origin(&p, 3.3).unwrap();
    let (fm, fmx) = j.minus();
    assert!((fm - j.f.conj()).norm() <= 1e-12);
    assert!((fmx - j.f_x.conj()).norm() <= 1e-12);
}

fn decay_results(
    g: &StarGraph<f64>,
    bc: &BoundaryConditions<f64>,
) -> Vec<hermsym::scattering::ScatteringResult<f64>> {
    scattering_sweep(g, bc, &ASYMPTOTIC_CHECKPOINTS, &tol())
        .unwrap()
        .into_iter()
        .map(|p| p.outcome.unwrap())
        .collect()
}

#[test]
fn decay_towards_limit() {
    let mut r = rng(99);
    let mut unitaries = vec![CMatrix::from_diagonal(&[
        C64::new(0.0, 1.0),
        C64::new(-1.0, 0.0),
    ])];
    for _ in 0..3 {
        unitaries.push(haar_unitary(&mut r, 3));
    }
    for u in unitaries {
        let n = u.nrows();
        let bc = bc_from_unitary(&u, &tol()).unwrap();
        let uhat = spectral_asymptotic_map(&u, &tol()).unwrap();
        let g = StarGraph::uniform(n, Potential::Zero).unwrap();
        let report = asymptotic_check(&decay_results(&g, &bc), &uhat).unwrap();
        assert!(report.passed(), "{report:?}");
    }
}

#[test]
fn hermitian_free_decay_is_flat_zero() {
    let bc = preset::<f64>(&Preset::Kirchhoff, 3, &tol()).unwrap();
    let g = StarGraph::uniform(3, Potential::Zero).unwrap();
    let report = asymptotic_check(&decay_results(&g, &bc), bc.u()).unwrap();
    assert!(report.checkpoints.iter().all(|(_, d)| *d < 1e-12));
    assert!(report.passed());
}

#[test]
fn square_well_decay_is_order_one_over_k() {
    let bc = preset::<f64>(&Preset::Kirchhoff, 3, &tol()).unwrap();
    let g = StarGraph::uniform(3, Potential::square_well(1.0, 1.0)).unwrap();
    let report = asymptotic_check(&decay_results(&g, &bc), bc.u()).unwrap();
    assert!(report.decreasing, "{report:?}");
    let (k, d) = report.checkpoints[2];
    assert!(d <= 10.0 / k, "{d}");
}
