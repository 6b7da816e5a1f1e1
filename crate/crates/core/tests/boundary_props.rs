use hermsym::boundary::{
    bc_from_ks_pair, bc_from_unitary, normalized_pole_determinant, preset, spectral_asymptotic_map,
    zero_potential_bound_states, Preset,
};
use hermsym::matrix::{orthogonal_complement, orthonormalize, CMatrix, Tolerance};
use hermsym::random::{complex_gaussian, complex_gaussian_vector, haar_unitary};
use hermsym::{cplx, C64};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tol() -> Tolerance<f64> {
    Tolerance::default()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn structural_residuals_vanish(seed in any::<u64>(), n in 1usize..=6) {
        let u = haar_unitary::<f64, _>(&mut rng(seed), n);
        let bc = bc_from_unitary(&u, &tol()).unwrap();
        prop_assert!(bc.normalization_residual() <= 1e-10);
        prop_assert!(bc.symmetry_residual() <= 1e-10);
    }

    #[test]
    fn range_vectors_satisfy_conditions(seed in any::<u64>(), n in 1usize..=6) {
        let mut r = rng(seed);
        let u = haar_unitary::<f64, _>(&mut r, n);
        let bc = bc_from_unitary(&u, &tol()).unwrap();
        let c = complex_gaussian_vector::<f64, _>(&mut r, n);
        let v = bc.range_matrix().mul_vec(&c);
        let res = bc.residual(&v[..n], &v[n..]).unwrap();
        prop_assert!(norm(&res) <= 1e-10 * norm(&v).max(1.0));
    }

    #[test]
    fn kernel_vectors_lie_in_range(seed in any::<u64>(), n in 1usize..=6) {
        let mut r = rng(seed);
        let u = haar_unitary::<f64, _>(&mut r, n);
        let bc = bc_from_unitary(&u, &tol()).unwrap();
        let k = bc.kernel_matrix();
        let ker = orthogonal_complement(&orthonormalize(&k.adjoint(), &tol()).q, &tol());
        prop_assert_eq!(ker.ncols(), n);
        let plane = bc.plane(&tol()).unwrap();
        let c = complex_gaussian_vector::<f64, _>(&mut r, n);
        let v = ker.mul_vec(&c);
        prop_assert!(norm(&k.mul_vec(&v)) <= 1e-9 * norm(&v));
        prop_assert!(plane.contains(&v, &tol()));
    }

    #[test]
    fn generic_vectors_violate_conditions(seed in any::<u64>(), n in 1usize..=6) {
        let mut r = rng(seed);
        let u = haar_unitary::<f64, _>(&mut r, n);
        let bc = bc_from_unitary(&u, &tol()).unwrap();
        let v = complex_gaussian_vector::<f64, _>(&mut r, 2 * n);
        let res = bc.residual(&v[..n], &v[n..]).unwrap();
        let inside = bc.plane(&tol()).unwrap().contains(&v, &tol());
        prop_assert_eq!(inside, norm(&res) <= 1e-9 * norm(&v));
    }

    #[test]
    fn ks_pair_round_trip(seed in any::<u64>(), n in 1usize..=6) {
        let mut r = rng(seed);
        let u = haar_unitary::<f64, _>(&mut r, n);
        let bc = bc_from_unitary(&u, &tol()).unwrap();
        let (a, b) = bc.ks_pair();
        prop_assert!(bc_from_ks_pair(&a, &b, &tol()).unwrap().u().distance(&u) <= 1e-9);
        // any invertible left factor describes the same conditions
        let g = complex_gaussian::<f64, _>(&mut r, n, n);
        if hermsym::matrix::inverse(&g, &tol()).map(|s| s.rcond > 1e-3).unwrap_or(false) {
            let back = bc_from_ks_pair(&(&g * &a), &(&g * &b), &tol()).unwrap();
            prop_assert!(back.u().distance(&u) <= 1e-8);
        }
    }

    #[test]
    fn asymptotic_map_is_idempotent(seed in any::<u64>(), n in 1usize..=6) {
        let u = haar_unitary::<f64, _>(&mut rng(seed), n);
        let uhat = spectral_asymptotic_map(&u, &tol()).unwrap();
        prop_assert!(uhat.hermitian_defect() <= 1e-10);
        prop_assert!(uhat.unitary_defect() <= 1e-10);
        prop_assert!((&uhat * &uhat).distance(&CMatrix::identity(n)) <= 1e-10);
        let again = spectral_asymptotic_map(&uhat, &tol()).unwrap();
        prop_assert!(again.distance(&uhat) <= 1e-10);
    }

    #[test]
    fn bound_states_are_poles(seed in any::<u64>(), n in 1usize..=4) {
        let u = haar_unitary::<f64, _>(&mut rng(seed), n);
        for bs in zero_potential_bound_states(&u, &tol()).unwrap() {
            prop_assert!(bs.kappa > 0.0);
            // κ → ∞ as φ → π, where the determinant scaling degenerates
            if bs.kappa < 1e6 {
                let d = normalized_pole_determinant(&u, cplx(0.0, bs.kappa)).unwrap();
                prop_assert!(d <= 1e-8, "kappa {} det {}", bs.kappa, d);
            }
        }
    }
}

#[test]
fn hermitian_u_is_its_own_limit() {
    for p in [Preset::Dirichlet, Preset::Neumann, Preset::Kirchhoff] {
        for n in [1, 2, 5] {
            let bc = preset::<f64>(&p, n, &tol()).unwrap();
            assert!(
                spectral_asymptotic_map(bc.u(), &tol())
                    .unwrap()
                    .distance(bc.u())
                    <= 1e-10
            );
        }
    }
}

#[test]
fn delta_tends_to_kirchhoff() {
    for n in [2, 3, 4] {
        let kirchhoff = preset::<f64>(&Preset::Kirchhoff, n, &tol()).unwrap();
        let mut ratios = Vec::new();
        for alpha in [1e-3, 1e-6] {
            let d = preset(&Preset::Delta { alpha }, n, &tol()).unwrap();
            assert!(!d.is_hermitian());
            ratios.push(d.u().distance(kirchhoff.u()) / alpha);
        }
        // distance ≤ C|α| with the same C at both scales
        assert!(
            ratios[1] <= 1.1 * ratios[0] && ratios[0] < 10.0,
            "{ratios:?}"
        );
    }
}

#[test]
fn delta_well_bound_state_matches_det_scan() {
    let bc = preset::<f64>(&Preset::Delta { alpha: -2.0 }, 2, &tol()).unwrap();
    let states = zero_potential_bound_states(bc.u(), &tol()).unwrap();
    assert_eq!(states.len(), 1);
    assert!((states[0].kappa - 1.0).abs() < 1e-9);
    assert!((states[0].energy + 1.0).abs() < 1e-9);
    let scan = (1..=400)
        .map(|i| 0.01 * i as f64)
        .map(|kappa| {
            (
                kappa,
                normalized_pole_determinant(bc.u(), cplx(0.0, kappa)).unwrap(),
            )
        })
        .fold((0.0, f64::INFINITY), |best, cur| {
            if cur.1 < best.1 {
                cur
            } else {
                best
            }
        });
    assert!((scan.0 - 1.0).abs() < 0.011);
}

#[test]
fn phase_i_bound_state() {
    let u = CMatrix::from_diagonal(&[cplx(0.0, 1.0)]);
    let states = zero_potential_bound_states(&u, &tol()).unwrap();
    assert_eq!(states.len(), 1);
    assert!((states[0].kappa - 1.0).abs() <= 1e-10);
    assert!(normalized_pole_determinant(&u, cplx(0.0, states[0].kappa)).unwrap() <= 1e-8);
    // away from the pole the determinant is of order one
    assert!(normalized_pole_determinant(&u, cplx(0.0, 2.0)).unwrap() > 0.1);
}
