use crate::error::{Error, Result};
use crate::fourier::RealField;
use crate::spaces::line::LineField;

/// Order of the forward difference `Delta_h^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffOrder {
    First,
    Second,
}

/// Exact index-shift difference on the torus with periodic wraparound;
/// `h = shift * dx`.
pub fn difference_torus(f: &RealField, shift: usize, order: DiffOrder) -> RealField {
    let n = f.samples().len();
    let s = f.samples();
    let samples: Vec<f64> = match order {
        DiffOrder::First => (0..n).map(|i| s[(i + shift) % n] - s[i]).collect(),
        DiffOrder::Second => (0..n)
            .map(|i| s[(i + 2 * shift) % n] - 2.0 * s[(i + shift) % n] + s[i])
            .collect(),
    };
    RealField::new(f.grid().clone(), samples).expect("same grid")
}

/// Exact index-shift difference on the line with zero padding outside the
/// support; fails when the shifted support escapes the box.
pub fn difference_line(f: &LineField, shift: usize, order: DiffOrder) -> Result<LineField> {
    let h = shift as f64 * f.dx();
    let steps = match order {
        DiffOrder::First => 1.0,
        DiffOrder::Second => 2.0,
    };
    let (lo, hi) = f.support();
    let new_lo = lo - steps * h;
    if new_lo < -f.half_width() {
        return Err(Error::SupportEscape { lo: new_lo, hi, box_half: f.half_width() });
    }
    let n = f.samples().len();
    let s = f.samples();
    let at = |i: usize| if i < n { s[i] } else { 0.0 };
    let samples: Vec<f64> = match order {
        DiffOrder::First => (0..n).map(|i| at(i + shift) - at(i)).collect(),
        DiffOrder::Second => (0..n)
            .map(|i| at(i + 2 * shift) - 2.0 * at(i + shift) + at(i))
            .collect(),
    };
    LineField::from_parts(f.half_width(), samples, (new_lo, hi))
}
