// scratch: dry-run the main acceptance numerics
use dispersive::*;
use dispersive::lab::*;
use std::time::Instant;

fn main() {
    let grid = PeriodicGrid::new(256, 1).unwrap();
    let u0 = presets::smooth_preset(&grid);
    let prob = EvolutionProblem::new(DispersionSymbol::whitham(), Nonlinearity::power(2).unwrap(), u0.clone(), 2.0).unwrap();

    // #2 formulation equivalence
    let t0 = Instant::now();
    let direct = evolve(&prob, &SolverConfig::new(Method::Rk4Direct, 1e-3, 1.0).with_stride(1000)).unwrap();
    let transformed = evolve(&prob, &SolverConfig::new(Method::Ifrk4Transformed, 1e-3, 1.0).with_stride(1000)).unwrap();
    let diff = direct.final_state().sub(transformed.final_state()).unwrap().max_abs();
    println!("#2 cross-formulation max diff = {diff:.3e}  ({:?})", t0.elapsed());

    // #3 convergence
    let t0 = Instant::now();
    for method in [Method::Rk4Direct, Method::Ifrk4Transformed] {
        let cfg = SolverConfig::new(method, 1e-3, 1.0);
        let rep = convergence_study(&prob, &cfg, &[4e-3, 2e-3, 1e-3, 5e-4], 4.0).unwrap();
        println!("#3 {method:?}: outcome={:?} observed={:?}", rep.outcome, rep.metrics.get("observed_order"));
    }
    println!("   ({:?})", t0.elapsed());

    // #4 conservation over T=1
    let tr = evolve(&prob, &SolverConfig::new(Method::Rk4Direct, 1e-3, 1.0).with_stride(100)).unwrap();
    let d = &tr.diagnostics;
    let dm = (d.mass.last().unwrap() - d.mass[0]).abs();
    let dl = ((d.l2.last().unwrap() - d.l2[0]) / d.l2[0]).abs();
    let dh = ((d.hamiltonian.last().unwrap() - d.hamiltonian[0]) / d.hamiltonian[0]).abs();
    println!("#4 dmass={dm:.2e} dl2={dl:.2e} dham={dh:.2e}");

    // #5 norm equivalence
    let t0 = Instant::now();
    let family = band_limited_family(2024, 20, 32, 1.0);
    let eq = check_norm_equivalence(&family, &[1.75, 2.0, 2.5], 256).unwrap();
    println!("#5 interval=({:.3},{:.3}) spread={:.2} refined=({:.3},{:.3}) stable={} ({:?})",
        eq.interval.0, eq.interval.1, eq.spread(), eq.interval_refined.0, eq.interval_refined.1, eq.is_stable(0.2), t0.elapsed());

    // #7 localizing
    let t0 = Instant::now();
    let rho = CutoffFunction::dilate(std::f64::consts::PI).unwrap();
    for (s, p, q) in [(1.5, 2.0, 2.0), (2.0, 2.0, 2.0), (2.0, 4.0, 3.0), (1.75, 2.0, f64::INFINITY)] {
        let idx = BesovIndex::new(s, p, q).unwrap();
        let rep = check_localizing(&rho, &family[..8], &idx, 256).unwrap();
        println!("#7 ({s},{p},{q}): max={:.3} trend={:?}", rep.max_ratio, rep.refinement_trend);
    }
    println!("   ({:?})", t0.elapsed());

    // #8 composition
    let t0 = Instant::now();
    let fam2: Vec<ModeSet> = band_limited_family(77, 6, 32, 2.0).into_iter()
        .flat_map(|m| [m.clone(), m.scale(0.5)]).collect();
    for (f, s) in [(ScalarFunction::square(), 2.0), (ScalarFunction::cube(), 2.0), (ScalarFunction::abs_x_x(), 1.75)] {
        let idx = BesovIndex::new(s, 2.0, 2.0).unwrap();
        let rep = check_composition_bound(&f, &fam2, &idx, 256).unwrap();
        println!("#8 {}: max={:.4} trend={:?}", f.name(), rep.max_ratio, rep.refinement_trend);
    }
    println!("   ({:?})", t0.elapsed());

    // #9 continuous dependence (nonlinear)
    let t0 = Instant::now();
    let w = presets::sine(&grid, 1.0, 1);
    let cfg = SolverConfig::new(Method::Ifrk4Transformed, 1e-3, 1.0).with_stride(50);
    let rep = run_continuous_dependence(&prob, &cfg, &[1e-2, 1e-3, 1e-4], &w).unwrap();
    println!("#9 outcome={:?} spread={:?} ({:?})", rep.outcome, rep.metrics.get("spread"), t0.elapsed());

    // #11 u_t class boundedness
    for (name, sym, s) in [("whitham", DispersionSymbol::whitham(), 2.0), ("kdv", DispersionSymbol::kdv(), 2.0)] {
        let p = EvolutionProblem::new(sym, Nonlinearity::power(2).unwrap(), u0.clone(), s).unwrap();
        let tr = evolve(&p, &SolverConfig::new(Method::Ifrk4Transformed, 1e-3, 1.0).with_stride(100)).unwrap();
        let h0 = tr.diagnostics.hs_minus_norm[0];
        let hmax = tr.diagnostics.hs_minus_norm.iter().cloned().fold(0.0f64, f64::max);
        println!("#11 {name}: term={:?} s_minus={} h0={h0:.4} hmax={hmax:.4} ratio={:.2}", tr.termination, p.s_minus(), hmax / h0);
    }
}
