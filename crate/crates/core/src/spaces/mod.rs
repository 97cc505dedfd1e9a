//! Discrete Sobolev and Besov norms via the Fourier and second-difference
//! characterizations, plus difference operators and cutoff bumps.
//!
//! The `h`-integral of the Besov seminorm is discretized over exact grid
//! shifts (no interpolation), with trapezoid weights and a factor two for
//! `-h`; the `L_p` norms are plain Riemann sums. Constants are therefore
//! particular to this discretization, which is fine: every consumer asserts
//! ratio boundedness and refinement stability, never specific constants.

pub mod cutoff;
pub mod diff;
pub mod line;

use crate::error::{Error, Result};
use crate::fourier::RealField;

pub use cutoff::CutoffFunction;
pub use diff::{difference_line, difference_torus, DiffOrder};
pub use line::LineField;

/// Shift cap `delta` for line-case Besov seminorms; any value in `(0, 1/2)`
/// yields an equivalent norm.
pub const LINE_DELTA: f64 = 0.25;

/// Smoothness-integrability index `(s, p, q)` with the split
/// `s = s_floor + s_frac`, `s_frac` in `(0, 1]`; in particular an integer `s`
/// splits as `(s - 1) + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesovIndex {
    s: f64,
    p: f64,
    q: f64,
}

impl BesovIndex {
    /// `s > 0`, `p` in `(1, inf)`, `q` in `(1, inf]` (`f64::INFINITY` allowed).
    pub fn new(s: f64, p: f64, q: f64) -> Result<Self> {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::BadIndex(format!("s must be positive and finite, got {s}")));
        }
        if !(p > 1.0) || !p.is_finite() {
            return Err(Error::BadIndex(format!("p must lie in (1, inf), got {p}")));
        }
        if !(q > 1.0) {
            return Err(Error::BadIndex(format!("q must lie in (1, inf], got {q}")));
        }
        Ok(Self { s, p, q })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn is_sup_q(&self) -> bool {
        self.q.is_infinite()
    }

    /// Integer part `[s]^-` of the split.
    pub fn s_floor(&self) -> usize {
        if self.s.fract() == 0.0 {
            self.s as usize - 1
        } else {
            self.s.floor() as usize
        }
    }

    /// Fractional part `{s}^+` in `(0, 1]`.
    pub fn s_frac(&self) -> f64 {
        self.s - self.s_floor() as f64
    }

    /// Index with `s` lowered by one (for derivative norms).
    pub fn lower(&self) -> Result<Self> {
        Self::new(self.s - 1.0, self.p, self.q)
    }
}

/// `sqrt( sum_k (1 + xi_k^2)^s |u_hat_k|^2 )` under the mean-normalized
/// transform. Negative `s` is meaningful here and used by the
/// time-derivative diagnostics.
pub fn sobolev_norm(u: &RealField, s: f64) -> Result<f64> {
    let uh = u.forward()?;
    let grid = u.grid();
    let sum: f64 = uh
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let xi = grid.xi(j);
            (1.0 + xi * xi).powf(s) * c.norm_sqr()
        })
        .sum();
    Ok(sum.sqrt())
}

fn lp_torus(f: &RealField, p: f64) -> f64 {
    let dx = f.grid().dx();
    let sum: f64 = f.samples().iter().map(|v| v.abs().powf(p)).sum();
    (sum * dx).powf(1.0 / p)
}

/// Shared assembly of the difference seminorm: `norms[j-1]` holds
/// `||Delta_{j dx}^2 gamma||_p` for shifts `j = 1..=j_max`.
fn difference_seminorm(norms: &[f64], dx: f64, sigma: f64, q: f64) -> f64 {
    if norms.is_empty() {
        return 0.0;
    }
    if q.is_infinite() {
        return norms
            .iter()
            .enumerate()
            .map(|(i, &v)| ((i + 1) as f64 * dx).powf(-sigma) * v)
            .fold(0.0, f64::max);
    }
    let j_max = norms.len();
    let mut sum = 0.0;
    for (i, &v) in norms.iter().enumerate() {
        let h = (i + 1) as f64 * dx;
        let weight = if j_max > 1 && (i == 0 || i == j_max - 1) { 0.5 } else { 1.0 };
        sum += weight * dx * h.powf(-sigma * q - 1.0) * v.powf(q);
    }
    (2.0 * sum).powf(1.0 / q)
}

/// Torus Besov norm: Sobolev `W^{[s]-}_p` part plus the weighted
/// second-difference seminorm of the top derivative, with the `h`-integral
/// over all grid shifts up to half the circumference.
pub fn besov_norm_torus(u: &RealField, idx: &BesovIndex) -> Result<f64> {
    besov_norm_torus_restricted(u, idx, f64::INFINITY)
}

/// Same norm with shifts restricted to `h <= h_max`; restricting to small
/// `h` yields an equivalent norm.
pub fn besov_norm_torus_restricted(u: &RealField, idx: &BesovIndex, h_max: f64) -> Result<f64> {
    if !u.is_finite() {
        return Err(Error::NonFinite);
    }
    let grid = u.grid().clone();
    let dx = grid.dx();
    let mut w_part = lp_torus(u, idx.p());
    let mut hat = u.forward()?;
    let mut top = u.clone();
    for _ in 0..idx.s_floor() {
        hat = hat.derivative();
        top = hat.inverse()?;
        w_part += lp_torus(&top, idx.p());
    }

    let j_cap = (h_max / dx).floor() as usize;
    let j_max = (grid.len() / 2).min(j_cap.max(0));
    if j_max == 0 {
        return Err(Error::InvalidParameter(format!(
            "no grid shifts below h_max = {h_max} (dx = {dx})"
        )));
    }
    let norms: Vec<f64> = (1..=j_max)
        .map(|j| lp_torus(&difference_torus(&top, j, DiffOrder::Second), idx.p()))
        .collect();
    Ok(w_part + difference_seminorm(&norms, dx, idx.s_frac(), idx.q()))
}

/// Line Besov norm of a compactly supported field, with the `h`-integral
/// over `0 < h <= delta = 1/4`. The support must keep a `2 delta` margin to
/// the box edge so shifted differences never escape.
pub fn besov_norm_line(f: &LineField, idx: &BesovIndex) -> Result<f64> {
    let (lo, hi) = f.support();
    let a = f.half_width();
    if lo < -a + 2.0 * LINE_DELTA || hi > a - 2.0 * LINE_DELTA {
        return Err(Error::SupportEscape { lo, hi, box_half: a });
    }
    let dx = f.dx();
    let mut w_part = f.lp_norm(idx.p());
    let mut top = f.clone();
    for _ in 0..idx.s_floor() {
        top = top.derivative();
        w_part += top.lp_norm(idx.p());
    }

    let j_max = (LINE_DELTA / dx).floor() as usize;
    if j_max == 0 {
        return Err(Error::InvalidParameter(format!(
            "line grid too coarse: dx = {dx} exceeds delta = {LINE_DELTA}"
        )));
    }
    let norms = (1..=j_max)
        .map(|j| Ok(difference_line(&top, j, DiffOrder::Second)?.lp_norm(idx.p())))
        .collect::<Result<Vec<f64>>>()?;
    Ok(w_part + difference_seminorm(&norms, dx, idx.s_frac(), idx.q()))
}
