//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured figures (run with `--nocapture` to see them all).

use std::time::Instant;

use dispersive::lab::*;
use dispersive::spaces::{difference_torus, DiffOrder};
use dispersive::*;

fn grid(n: usize) -> PeriodicGrid {
    PeriodicGrid::new(n, 1).unwrap()
}

fn whitham_smooth(n: usize, s: f64) -> EvolutionProblem {
    let g = grid(n);
    EvolutionProblem::new(
        DispersionSymbol::whitham(),
        Nonlinearity::power(2).unwrap(),
        presets::smooth_preset(&g),
        s,
    )
    .unwrap()
}

fn pass(criterion: u32, name: &str, details: &str, started: Instant) {
    println!(
        "ACCEPTANCE {criterion:2} ({name}): PASS — {details} [{:.2?}]",
        started.elapsed()
    );
}

/// 1. The linear flow is unitary in every Sobolev norm, for every builtin
/// symbol, to 1e-12 relative.
#[test]
fn criterion_01_unitary_group() {
    let t0 = Instant::now();
    let g = grid(256);
    let u = band_limited_family(41, 1, 32, 1.0)[0].synthesize(&g).unwrap();
    let symbols = [
        DispersionSymbol::identity(),
        DispersionSymbol::whitham(),
        DispersionSymbol::kdv(),
        DispersionSymbol::bo(),
        DispersionSymbol::fractional(0.5).unwrap(),
        DispersionSymbol::constant(2.0),
    ];
    let mut worst: f64 = 0.0;
    for symbol in &symbols {
        for s in [0.0, 1.75, 3.0] {
            let before = sobolev_norm(&u, s).unwrap();
            for t in [0.1, 1.0, 10.0] {
                let after =
                    sobolev_norm(&fourier::semigroup(&u, symbol, t).unwrap(), s).unwrap();
                let dev = (after - before).abs() / before;
                worst = worst.max(dev);
                assert!(
                    dev < 1e-12,
                    "{} at s={s}, t={t}: relative drift {dev:e}",
                    symbol.name()
                );
            }
        }
    }
    pass(1, "unitary group", &format!("worst relative drift {worst:.2e}"), t0);
}

/// 2. The direct and integrating-factor formulations agree at T = 1 to 1e-6
/// in the max norm.
#[test]
fn criterion_02_formulation_equivalence() {
    let t0 = Instant::now();
    let prob = whitham_smooth(256, 2.0);
    let direct = evolve(
        &prob,
        &SolverConfig::new(Method::Rk4Direct, 1e-3, 1.0).with_stride(1000),
    )
    .unwrap();
    let transformed = evolve(
        &prob,
        &SolverConfig::new(Method::Ifrk4Transformed, 1e-3, 1.0).with_stride(1000),
    )
    .unwrap();
    assert_eq!(direct.termination, Termination::Completed);
    assert_eq!(transformed.termination, Termination::Completed);
    let diff = direct
        .final_state()
        .sub(transformed.final_state())
        .unwrap()
        .max_abs();
    assert!(diff < 1e-6, "cross-formulation discrepancy {diff:e}");
    pass(2, "formulation equivalence", &format!("max-norm discrepancy {diff:.2e}"), t0);
}

/// 3. Both integrators converge at order 4.0 +/- 0.3 on the smooth problem.
#[test]
fn criterion_03_convergence_order() {
    let t0 = Instant::now();
    let prob = whitham_smooth(256, 2.0);
    let dt_list = [4e-3, 2e-3, 1e-3, 5e-4];
    let mut observed = Vec::new();
    for method in [Method::Rk4Direct, Method::Ifrk4Transformed] {
        let cfg = SolverConfig::new(method, 1e-3, 1.0);
        let report = convergence_study(&prob, &cfg, &dt_list, 4.0).unwrap();
        assert_eq!(
            report.outcome,
            Outcome::Pass,
            "{method:?}: {:?}",
            report.metrics
        );
        observed.push(report.metrics["observed_order"]);
    }
    pass(
        3,
        "convergence order",
        &format!("rk4 {:.3}, ifrk4 {:.3}", observed[0], observed[1]),
        t0,
    );
}

/// 4. Mass, L2, and Hamiltonian drift stay below their thresholds over T=1.
#[test]
fn criterion_04_conservation() {
    let t0 = Instant::now();
    let prob = whitham_smooth(256, 2.0);
    let traj = evolve(
        &prob,
        &SolverConfig::new(Method::Rk4Direct, 1e-3, 1.0).with_stride(100),
    )
    .unwrap();
    assert_eq!(traj.termination, Termination::Completed);
    let d = &traj.diagnostics;
    let dm = (d.mass.last().unwrap() - d.mass[0]).abs();
    let dl = ((d.l2.last().unwrap() - d.l2[0]) / d.l2[0]).abs();
    let dh = ((d.hamiltonian.last().unwrap() - d.hamiltonian[0]) / d.hamiltonian[0]).abs();
    assert!(dm < 1e-13, "mass drift {dm:e}");
    assert!(dl < 1e-8, "relative L2 drift {dl:e}");
    assert!(dh < 1e-6, "relative Hamiltonian drift {dh:e}");
    pass(
        4,
        "conservation",
        &format!("|dmass|={dm:.1e}, |dl2|/l2={dl:.1e}, |dH|/|H|={dh:.1e}"),
        t0,
    );
}

/// 5. The Besov-over-Sobolev ratio interval for p=q=2 is tight (c2/c1 <= 10)
/// and shifts under 20% when N doubles from 256 to 512.
#[test]
fn criterion_05_norm_identity() {
    let t0 = Instant::now();
    let family = band_limited_family(2024, 20, 32, 1.0);
    let eq = check_norm_equivalence(&family, &[1.75, 2.0, 2.5], 256).unwrap();
    assert!(
        eq.spread() <= EQUIV_SPREAD_MAX,
        "interval spread {} exceeds {EQUIV_SPREAD_MAX}",
        eq.spread()
    );
    assert!(
        eq.is_stable(EQUIV_SHIFT_MAX),
        "interval shifted more than 20%: {:?} -> {:?}",
        eq.interval,
        eq.interval_refined
    );
    pass(
        5,
        "norm identity",
        &format!(
            "[c1,c2]=[{:.3},{:.3}], spread {:.2}, refined [{:.3},{:.3}]",
            eq.interval.0, eq.interval.1, eq.spread(), eq.interval_refined.0, eq.interval_refined.1
        ),
        t0,
    );
}

/// 6. The halving identity 2 D_h = D_2h - D_h^2 holds to 1e-14 on 100 random
/// fields.
#[test]
fn criterion_06_second_difference_identity() {
    let t0 = Instant::now();
    let g = grid(128);
    let family = band_limited_family(7, 100, 16, 1.0);
    let mut worst: f64 = 0.0;
    for member in &family {
        let f = member.synthesize(&g).unwrap();
        let scale = f.max_abs().max(1.0);
        for shift in [1usize, 3, 11] {
            let lhs = difference_torus(&f, shift, DiffOrder::First).scale(2.0);
            let rhs = difference_torus(&f, 2 * shift, DiffOrder::First)
                .sub(&difference_torus(&f, shift, DiffOrder::Second))
                .unwrap();
            let dev = lhs.sub(&rhs).unwrap().max_abs() / scale;
            worst = worst.max(dev);
            assert!(dev < 1e-14, "identity defect {dev:e} at shift {shift}");
        }
    }
    pass(6, "second-difference identity", &format!("worst defect {worst:.2e}"), t0);
}

/// 7. Localizing inequality: bounded, refinement-stable ratios for
/// fractional, integer, mixed-(p,q), and q=inf indices.
#[test]
fn criterion_07_localizing() {
    let t0 = Instant::now();
    let rho = CutoffFunction::dilate(std::f64::consts::PI).unwrap();
    let family = band_limited_family(2024, 8, 32, 1.0);
    let mut details = String::new();
    for (s, p, q) in [
        (1.5, 2.0, 2.0),
        (2.0, 2.0, 2.0),
        (2.0, 4.0, 3.0),
        (1.75, 2.0, f64::INFINITY),
    ] {
        let idx = BesovIndex::new(s, p, q).unwrap();
        let report = check_localizing(&rho, &family, &idx, 256).unwrap();
        assert!(
            report.is_bounded_and_stable(),
            "index ({s},{p},{q}): max {}, trend {:?}",
            report.max_ratio,
            report.refinement_trend
        );
        details.push_str(&format!("({s},{p},{q}):{:.2} ", report.max_ratio));
    }
    pass(7, "localizing lemma", details.trim(), t0);
}

/// 8. Periodic composition bound: bounded stable ratios for x^2 and x^3 at
/// s=2 and for the non-smooth x|x| at s=1.75.
#[test]
fn criterion_08_composition_bound() {
    let t0 = Instant::now();
    let base = band_limited_family(77, 6, 32, 2.0);
    let family: Vec<ModeSet> = base.iter().flat_map(|m| [m.clone(), m.scale(0.5)]).collect();
    let mut details = String::new();
    for (f, s) in [
        (ScalarFunction::square(), 2.0),
        (ScalarFunction::cube(), 2.0),
        (ScalarFunction::abs_x_x(), 1.75),
    ] {
        let idx = BesovIndex::new(s, 2.0, 2.0).unwrap();
        let report = check_composition_bound(&f, &family, &idx, 256).unwrap();
        assert!(
            report.is_bounded_and_stable(),
            "{} at s={s}: max {}, trend {:?}",
            f.name(),
            report.max_ratio,
            report.refinement_trend
        );
        details.push_str(&format!("{}:{:.4} ", f.name(), report.max_ratio));
    }
    pass(8, "composition bound", details.trim(), t0);
}

/// 9. Continuous dependence: exact linearity on the linear equation to
/// 1e-10, and sensitivity spread <= 4 on nonlinear Whitham.
#[test]
fn criterion_09_continuous_dependence() {
    let t0 = Instant::now();
    let g = grid(256);
    let w = presets::sine(&g, 1.0, 1);
    let eps = [1e-2, 1e-3, 1e-4];
    let cfg = SolverConfig::new(Method::Ifrk4Transformed, 1e-3, 1.0).with_stride(50);

    let linear = EvolutionProblem::new(
        DispersionSymbol::whitham(),
        Nonlinearity::zero(),
        presets::smooth_preset(&g),
        2.0,
    )
    .unwrap();
    let report = run_continuous_dependence(&linear, &cfg, &eps, &w).unwrap();
    assert_eq!(report.outcome, Outcome::Pass);
    let w_norm = sobolev_norm(&w, 2.0).unwrap();
    for i in 0..eps.len() {
        let sens = report.metrics[&format!("sensitivity_{i}")];
        let dev = (sens - w_norm).abs() / w_norm;
        assert!(dev < 1e-10, "linear oracle off by {dev:e} at eps {}", eps[i]);
    }

    let nonlinear = whitham_smooth(256, 2.0);
    let report = run_continuous_dependence(&nonlinear, &cfg, &eps, &w).unwrap();
    assert_eq!(report.outcome, Outcome::Pass, "{:?}", report.metrics);
    let spread = report.metrics["spread"];
    assert!(spread <= RATIO_SPREAD_MAX);
    pass(
        9,
        "continuous dependence",
        &format!("linear exact, nonlinear spread {spread:.3}"),
        t0,
    );
}

/// 10. Wave-breaking contrast at N=1024: the gradient criterion trips under
/// Whitham but not under KdV from the same datum.
#[test]
fn criterion_10_wave_breaking_contrast() {
    let t0 = Instant::now();
    let g = PeriodicGrid::new(1024, 1).unwrap();
    let u0 = presets::breaking_preset(&g);
    let cfg = SolverConfig::new(Method::Ifrk4Transformed, 1e-3, presets::BREAKING_HORIZON)
        .with_stride(25);

    let whitham = EvolutionProblem::new(
        DispersionSymbol::whitham(),
        Nonlinearity::power(2).unwrap(),
        u0.clone(),
        2.0,
    )
    .unwrap();
    let report_w = run_wave_breaking(&whitham, &cfg).unwrap();
    assert_eq!(
        report_w.outcome,
        Outcome::Pass,
        "whitham did not break: {:?}",
        report_w.metrics
    );
    let break_t = report_w.metrics["breaking_time"];

    let kdv = EvolutionProblem::new(
        DispersionSymbol::kdv(),
        Nonlinearity::power(2).unwrap(),
        u0,
        2.0,
    )
    .unwrap();
    let report_k = run_wave_breaking(&kdv, &cfg).unwrap();
    assert_ne!(
        report_k.outcome,
        Outcome::Pass,
        "kdv tripped the breaking criterion: {:?}",
        report_k.metrics
    );
    let kdv_ratio = report_k.metrics["max_gradient_ratio"];
    assert!(
        kdv_ratio < BREAKING_GRADIENT_RATIO,
        "kdv gradient ratio {kdv_ratio} too close to the threshold"
    );
    pass(
        10,
        "wave-breaking contrast",
        &format!(
            "whitham breaks at t={break_t:.3} (ratio {:.0}), kdv ratio {kdv_ratio:.1}",
            report_w.metrics["max_gradient_ratio"]
        ),
        t0,
    );
}

/// 11. The time-derivative class norm H^{s-max(1,l+1)} of the direct
/// right-hand side stays within 10x its initial value on completed smooth
/// runs, for weak (Whitham) and strong (KdV) dispersion.
#[test]
fn criterion_11_ut_regularity_class() {
    let t0 = Instant::now();
    let mut details = String::new();
    for (symbol, expected_drop) in [
        (DispersionSymbol::whitham(), 1.0),
        (DispersionSymbol::kdv(), 3.0),
    ] {
        let name = symbol.name().to_string();
        let prob = EvolutionProblem::new(
            symbol,
            Nonlinearity::power(2).unwrap(),
            presets::smooth_preset(&grid(256)),
            2.0,
        )
        .unwrap();
        assert_eq!(prob.s_minus(), 2.0 - expected_drop);
        let traj = evolve(
            &prob,
            &SolverConfig::new(Method::Ifrk4Transformed, 1e-3, 1.0).with_stride(50),
        )
        .unwrap();
        assert_eq!(traj.termination, Termination::Completed);
        let h0 = traj.diagnostics.hs_minus_norm[0];
        let hmax = traj.diagnostics.hs_minus_norm.iter().cloned().fold(0.0f64, f64::max);
        assert!(
            hmax <= 10.0 * h0,
            "{name}: u_t class norm grew {}x",
            hmax / h0
        );
        details.push_str(&format!("{name}: x{:.2} ", hmax / h0));
    }
    pass(11, "u_t regularity class", details.trim(), t0);
}
