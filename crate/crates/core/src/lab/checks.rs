use crate::error::{Error, Result};
use crate::fourier::PeriodicGrid;
use crate::lab::families::ModeSet;
use crate::lab::scalar::ScalarFunction;
use crate::lab::{classify_trend, RatioReport, Trend, TREND_STABLE_HI, TREND_STABLE_LO};
use crate::spaces::{
    besov_norm_line, besov_norm_torus, sobolev_norm, BesovIndex, CutoffFunction, LineField,
};

/// Even line-sample count matching the torus spacing `2 pi / n` over a box of
/// the given half-width.
fn line_samples(half_width: f64, n_torus: usize) -> usize {
    let dx = 2.0 * std::f64::consts::PI / n_torus as f64;
    let m = (2.0 * half_width / dx).ceil() as usize;
    (m + m % 2).max(16)
}

/// Outcome of the `H^s = B^s_22` comparison: the ratio interval `[c1, c2]`
/// over the family at the base resolution and after one doubling.
#[derive(Debug, Clone)]
pub struct NormEquivalence {
    pub report: RatioReport,
    pub interval: (f64, f64),
    pub interval_refined: (f64, f64),
}

impl NormEquivalence {
    pub fn spread(&self) -> f64 {
        self.interval.1 / self.interval.0
    }

    /// Both endpoints move by less than the declared fraction under doubling.
    pub fn is_stable(&self, max_shift: f64) -> bool {
        let (c1, c2) = self.interval;
        let (r1, r2) = self.interval_refined;
        (r1 / c1 - 1.0).abs() <= max_shift && (r2 / c2 - 1.0).abs() <= max_shift
    }
}

fn equivalence_ratios(
    family: &[ModeSet],
    s_list: &[f64],
    n: usize,
) -> Result<Vec<f64>> {
    let grid = PeriodicGrid::new(n, 1)?;
    let mut ratios = Vec::with_capacity(family.len() * s_list.len());
    for member in family {
        let u = member.synthesize(&grid)?;
        for &s in s_list {
            let idx = BesovIndex::new(s, 2.0, 2.0)?;
            let b = besov_norm_torus(&u, &idx)?;
            let h = sobolev_norm(&u, s)?;
            if h == 0.0 {
                return Err(Error::Precondition("zero member in equivalence family".into()));
            }
            ratios.push(b / h);
        }
    }
    Ok(ratios)
}

/// Compare the difference-characterized `B^s_22` norm against the Fourier
/// `H^s` norm over a family, reporting the ratio interval and its behavior
/// under one grid doubling.
pub fn check_norm_equivalence(
    family: &[ModeSet],
    s_list: &[f64],
    n_base: usize,
) -> Result<NormEquivalence> {
    if family.is_empty() || s_list.is_empty() {
        return Err(Error::Precondition("equivalence check needs a nonempty family".into()));
    }
    let base = equivalence_ratios(family, s_list, n_base)?;
    let refined = equivalence_ratios(family, s_list, 2 * n_base)?;
    let interval = (
        base.iter().cloned().fold(f64::INFINITY, f64::min),
        base.iter().cloned().fold(0.0, f64::max),
    );
    let interval_refined = (
        refined.iter().cloned().fold(f64::INFINITY, f64::min),
        refined.iter().cloned().fold(0.0, f64::max),
    );
    let lo_ratio = interval_refined.0 / interval.0;
    let hi_ratio = interval_refined.1 / interval.1;
    let trend = if hi_ratio > TREND_STABLE_HI || lo_ratio > TREND_STABLE_HI {
        Trend::Growing
    } else if hi_ratio < TREND_STABLE_LO || lo_ratio < TREND_STABLE_LO {
        Trend::Shrinking
    } else {
        Trend::Stable
    };
    let report = RatioReport::new("norm-equivalence", base, trend)?;
    Ok(NormEquivalence { report, interval, interval_refined })
}

fn localizing_ratios(
    rho: &CutoffFunction,
    family: &[ModeSet],
    idx: &BesovIndex,
    n: usize,
) -> Result<Vec<f64>> {
    let grid = PeriodicGrid::new(n, 1)?;
    let support = rho.support_radius();
    let half_width = support + 1.0;
    let m = line_samples(half_width, n);
    family
        .iter()
        .map(|member| {
            let f_torus = member.synthesize(&grid)?;
            let denom = besov_norm_torus(&f_torus, idx)?;
            if denom == 0.0 {
                return Err(Error::Precondition("zero member in localizing family".into()));
            }
            let localized = LineField::sample(half_width, m, (-support, support), |x| {
                rho.value(x) * member.eval(x)
            })?;
            let num = besov_norm_line(&localized, idx)?;
            Ok(num / denom)
        })
        .collect()
}

/// Localizing inequality: the line norm of a smooth compactly supported
/// multiple of the periodic extension is controlled by the torus norm.
/// Integer `s` is the delicate case and is exercised on the same footing.
pub fn check_localizing(
    rho: &CutoffFunction,
    family: &[ModeSet],
    idx: &BesovIndex,
    n_base: usize,
) -> Result<RatioReport> {
    let base = localizing_ratios(rho, family, idx, n_base)?;
    let refined = localizing_ratios(rho, family, idx, 2 * n_base)?;
    let max_base = base.iter().cloned().fold(0.0, f64::max);
    let max_refined = refined.iter().cloned().fold(0.0, f64::max);
    RatioReport::new(
        &format!("localizing[s={},p={},q={}]", idx.s(), idx.p(), idx.q()),
        base,
        classify_trend(max_base, max_refined),
    )
}

fn composition_ratios(
    f: &ScalarFunction,
    family: &[ModeSet],
    idx: &BesovIndex,
    n: usize,
) -> Result<Vec<f64>> {
    let grid = PeriodicGrid::new(n, 1)?;
    let exponent = idx.s() - 1.0 - 1.0 / idx.p();
    family
        .iter()
        .map(|member| {
            let g = member.synthesize(&grid)?;
            let a = g.max_abs();
            if a == 0.0 {
                return Err(Error::Precondition("zero member in composition family".into()));
            }
            let lhs = besov_norm_torus(&g.map(|v| f.eval(v)), idx)?;
            let g_norm = besov_norm_torus(&g, idx)?;

            let phi_a = CutoffFunction::dilate(a)?;
            let support = phi_a.support_radius();
            let half_width = support + 1.0;
            let m = line_samples(half_width, n);
            let fd_step = 2.0 * half_width / m as f64 / 8.0;
            let bump_derivative = LineField::sample(half_width, m, (-support, support), |x| {
                f.derivative(x, fd_step) * phi_a.value(x) + f.eval(x) * phi_a.derivative(x)
            })?;
            let outer = besov_norm_line(&bump_derivative, &idx.lower()?)?;
            let rhs = outer * g_norm * (1.0 + g_norm).powf(exponent);
            Ok(lhs / rhs)
        })
        .collect()
}

/// Composition (Nemytskii) bound on the torus: `||f(g)||_{B^s_pq}` against
/// `||(f phi_a)'||_{B^{s-1}_pq(line)} ||g|| (1 + ||g||)^(s-1-1/p)` with
/// `a = sup|g|` recomputed per member. Requires `s > 1 + 1/p`.
pub fn check_composition_bound(
    f: &ScalarFunction,
    family: &[ModeSet],
    idx: &BesovIndex,
    n_base: usize,
) -> Result<RatioReport> {
    if idx.s() <= 1.0 + 1.0 / idx.p() {
        return Err(Error::Precondition(format!(
            "composition bound needs s > 1 + 1/p, got s = {}, p = {}",
            idx.s(),
            idx.p()
        )));
    }
    let base = composition_ratios(f, family, idx, n_base)?;
    let refined = composition_ratios(f, family, idx, 2 * n_base)?;
    let max_base = base.iter().cloned().fold(0.0, f64::max);
    let max_refined = refined.iter().cloned().fold(0.0, f64::max);
    RatioReport::new(
        &format!("composition[{},s={},p={},q={}]", f.name(), idx.s(), idx.p(), idx.q()),
        base,
        classify_trend(max_base, max_refined),
    )
}
