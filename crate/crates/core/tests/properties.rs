//! Property tests for the structural invariants: transform round trips,
//! Parseval, semigroup group laws, norm axioms, dealiasing, and the
//! equivalence of the two right-hand-side formulations at t = 0.

use num_complex::Complex64;
use proptest::prelude::*;

use dispersive::spaces::{difference_torus, DiffOrder};
use dispersive::*;

const N: usize = 64;

fn grid() -> PeriodicGrid {
    PeriodicGrid::new(N, 1).unwrap()
}

/// Random band-limited real field from bounded cosine/sine coefficients.
fn field_strategy(k_max: usize, amp: f64) -> impl Strategy<Value = RealField> {
    prop::collection::vec((-amp..amp, -amp..amp), k_max).prop_map(move |coeffs| {
        let g = grid();
        let mut hat = SpectralField::zeros(&g);
        for (i, (re, im)) in coeffs.iter().enumerate() {
            let k = (i + 1) as i64;
            let damp = (1.0 + k as f64).powi(-2);
            *hat.coeff_mut(k) = Complex64::new(re * damp, im * damp);
            *hat.coeff_mut(-k) = Complex64::new(re * damp, -im * damp);
        }
        hat.inverse().unwrap()
    })
}

fn symbol_strategy() -> impl Strategy<Value = DispersionSymbol> {
    prop::sample::select(vec![
        DispersionSymbol::identity(),
        DispersionSymbol::whitham(),
        DispersionSymbol::kdv(),
        DispersionSymbol::bo(),
        DispersionSymbol::fractional(0.5).unwrap(),
    ])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transform_round_trip(u in field_strategy(8, 1.0)) {
        let back = u.forward().unwrap().inverse().unwrap();
        let err = u.sub(&back).unwrap().max_abs();
        prop_assert!(err <= 1e-12 * u.max_abs().max(1.0));
    }

    #[test]
    fn parseval(u in field_strategy(8, 1.0)) {
        let spectral = u.forward().unwrap().energy();
        let physical = u.samples().iter().map(|v| v * v).sum::<f64>() / N as f64;
        prop_assert!((spectral - physical).abs() <= 1e-12 * physical.max(1e-30));
    }

    #[test]
    fn semigroup_is_a_group(
        u in field_strategy(8, 1.0),
        m in symbol_strategy(),
        t1 in -5.0..5.0f64,
        t2 in -5.0..5.0f64,
    ) {
        let uh = u.forward().unwrap();
        let composed = uh.semigroup(&m, t1).unwrap().semigroup(&m, t2).unwrap();
        let direct = uh.semigroup(&m, t1 + t2).unwrap();
        let scale = direct.coeffs().iter().fold(0.0f64, |a, c| a.max(c.norm())).max(1e-30);
        for (a, b) in composed.coeffs().iter().zip(direct.coeffs()) {
            prop_assert!((a - b).norm() <= 1e-12 * scale);
        }
    }

    #[test]
    fn semigroup_preserves_hs_norms(
        u in field_strategy(8, 1.0),
        m in symbol_strategy(),
        t in -10.0..10.0f64,
        s in 0.0..3.0f64,
    ) {
        let before = sobolev_norm(&u, s).unwrap();
        prop_assume!(before > 1e-12);
        let after = sobolev_norm(&fourier::semigroup(&u, &m, t).unwrap(), s).unwrap();
        prop_assert!((after - before).abs() <= 1e-12 * before);
    }

    #[test]
    fn norms_are_absolutely_homogeneous(
        u in field_strategy(6, 1.0),
        lambda in -3.0..3.0f64,
    ) {
        let idx = BesovIndex::new(1.75, 2.0, 2.0).unwrap();
        let b = besov_norm_torus(&u, &idx).unwrap();
        let b_scaled = besov_norm_torus(&u.scale(lambda), &idx).unwrap();
        prop_assert!((b_scaled - lambda.abs() * b).abs() <= 1e-12 * b.max(1.0));
        let h = sobolev_norm(&u, 1.75).unwrap();
        let h_scaled = sobolev_norm(&u.scale(lambda), 1.75).unwrap();
        prop_assert!((h_scaled - lambda.abs() * h).abs() <= 1e-12 * h.max(1.0));
    }

    #[test]
    fn besov_triangle_inequality(
        u in field_strategy(6, 1.0),
        v in field_strategy(6, 1.0),
        q in prop::sample::select(vec![1.5, 2.0, 3.0, f64::INFINITY]),
    ) {
        let idx = BesovIndex::new(1.75, 2.0, q).unwrap();
        let lhs = besov_norm_torus(&u.add(&v).unwrap(), &idx).unwrap();
        let rhs = besov_norm_torus(&u, &idx).unwrap() + besov_norm_torus(&v, &idx).unwrap();
        prop_assert!(lhs <= rhs + 1e-12 * rhs.max(1.0));
    }

    #[test]
    fn sobolev_monotone_in_s(u in field_strategy(8, 1.0), s in 0.0..2.5f64) {
        let lo = sobolev_norm(&u, s).unwrap();
        let hi = sobolev_norm(&u, s + 0.5).unwrap();
        prop_assert!(hi >= lo - 1e-14);
    }

    #[test]
    fn dealias_is_idempotent_and_band_preserving(u in field_strategy(8, 1.0)) {
        let uh = u.forward().unwrap();
        let once = dealias(&uh);
        let twice = dealias(&once);
        prop_assert_eq!(once.coeffs(), twice.coeffs());
        for k in 0..=(N as i64 / 3) {
            prop_assert_eq!(once.coeff(k), uh.coeff(k));
        }
    }

    #[test]
    fn halving_identity(u in field_strategy(8, 1.0), shift in 1usize..16) {
        let lhs = difference_torus(&u, shift, DiffOrder::First).scale(2.0);
        let rhs = difference_torus(&u, 2 * shift, DiffOrder::First)
            .sub(&difference_torus(&u, shift, DiffOrder::Second))
            .unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().max_abs() <= 1e-14 * u.max_abs().max(1.0));
    }

    #[test]
    fn formulations_agree_at_time_zero(
        u in field_strategy(6, 0.5),
        m in symbol_strategy(),
    ) {
        // rhs_direct(u) + L dx u = rhs_transformed(u, 0): the conjugation
        // collapses and only the nonlinear transport remains
        let prob = EvolutionProblem::new(
            m.clone(),
            Nonlinearity::power(2).unwrap(),
            u.clone(),
            2.0,
        ).unwrap();
        let direct = prob.rhs_direct(&u, true).unwrap();
        let lin = u
            .forward().unwrap()
            .apply_multiplier(|xi| Complex64::new(0.0, xi * m.eval(xi))).unwrap()
            .inverse().unwrap();
        let transformed = prob.rhs_transformed(&u, 0.0, true).unwrap();
        let err = direct.add(&lin).unwrap().sub(&transformed).unwrap().max_abs();
        prop_assert!(err <= 1e-12 * transformed.max_abs().max(1.0));
    }

    #[test]
    fn evolve_mass_is_conserved(
        u in field_strategy(4, 0.3),
        m in symbol_strategy(),
    ) {
        let prob = EvolutionProblem::new(m, Nonlinearity::power(2).unwrap(), u, 2.0).unwrap();
        let cfg = SolverConfig::new(Method::Ifrk4Transformed, 5e-3, 0.1).with_stride(5);
        let traj = evolve(&prob, &cfg).unwrap();
        prop_assume!(traj.termination == Termination::Completed);
        let m0 = traj.diagnostics.mass[0];
        for &mass in &traj.diagnostics.mass {
            prop_assert!((mass - m0).abs() < 1e-13);
        }
    }
}
