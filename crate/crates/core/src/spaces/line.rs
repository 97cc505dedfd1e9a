use crate::error::{Error, Result};
use crate::fourier::derivative_uniform;

/// Compactly supported samples on a uniform grid over `[-A, A)`.
///
/// The declared support must lie strictly inside the box; samples outside it
/// are identically zero. Spectral operations treat the box as periodic, which
/// is exact up to rounding because the wrap seam lies in the zero region.
#[derive(Debug, Clone, PartialEq)]
pub struct LineField {
    half_width: f64,
    dx: f64,
    samples: Vec<f64>,
    support: (f64, f64),
}

impl LineField {
    /// Sample `f` on `m` points over `[-A, A)`, zeroing everything outside
    /// the declared support.
    pub fn sample<F: Fn(f64) -> f64>(
        half_width: f64,
        m: usize,
        support: (f64, f64),
        f: F,
    ) -> Result<Self> {
        if !(half_width > 0.0) {
            return Err(Error::InvalidParameter("box half-width must be positive".into()));
        }
        if m < 16 || m % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "line grid needs an even sample count of at least 16, got {m}"
            )));
        }
        let (lo, hi) = support;
        if !(lo < hi) || lo <= -half_width || hi >= half_width {
            return Err(Error::SupportEscape { lo, hi, box_half: half_width });
        }
        let dx = 2.0 * half_width / m as f64;
        let samples = (0..m)
            .map(|i| {
                let x = -half_width + i as f64 * dx;
                if x >= lo && x <= hi {
                    f(x)
                } else {
                    0.0
                }
            })
            .collect();
        Ok(Self { half_width, dx, samples, support })
    }

    pub(crate) fn from_parts(half_width: f64, samples: Vec<f64>, support: (f64, f64)) -> Result<Self> {
        let dx = 2.0 * half_width / samples.len() as f64;
        Ok(Self { half_width, dx, samples, support })
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn x(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.dx
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Spectral derivative over the box; rounding residue outside the
    /// declared support is re-zeroed to keep the support invariant exact.
    pub fn derivative(&self) -> Self {
        let mut samples = derivative_uniform(&self.samples, 2.0 * self.half_width);
        let (lo, hi) = self.support;
        for (i, v) in samples.iter_mut().enumerate() {
            let x = -self.half_width + i as f64 * self.dx;
            if x < lo || x > hi {
                *v = 0.0;
            }
        }
        Self { half_width: self.half_width, dx: self.dx, samples, support: self.support }
    }

    /// `(integral |f|^p dx)^(1/p)` over the box by the plain Riemann sum.
    pub fn lp_norm(&self, p: f64) -> f64 {
        let sum: f64 = self.samples.iter().map(|v| v.abs().powf(p)).sum();
        (sum * self.dx).powf(1.0 / p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_vanish_outside_support() {
        let f = LineField::sample(2.0, 128, (-0.5, 0.5), |_| 1.0).unwrap();
        for (i, &v) in f.samples().iter().enumerate() {
            let x = f.x(i);
            if x < -0.5 || x > 0.5 {
                assert_eq!(v, 0.0);
            } else {
                assert_eq!(v, 1.0);
            }
        }
    }

    #[test]
    fn support_outside_box_is_rejected() {
        assert!(LineField::sample(1.0, 64, (-1.5, 0.5), |_| 1.0).is_err());
        assert!(LineField::sample(1.0, 64, (-0.5, 1.0), |_| 1.0).is_err());
    }

    #[test]
    fn derivative_of_smooth_bump() {
        use crate::spaces::cutoff::CutoffFunction;
        let phi = CutoffFunction::base();
        let f = LineField::sample(4.0, 1024, (-2.0, 2.0), |x| phi.value(x)).unwrap();
        let df = f.derivative();
        for (i, &v) in df.samples().iter().enumerate() {
            let x = f.x(i);
            assert!((v - phi.derivative(x)).abs() < 1e-6, "x = {x}");
        }
    }

    #[test]
    fn lp_norm_of_indicator() {
        // |support| = 1, so every L_p norm is 1
        let f = LineField::sample(2.0, 4096, (-0.5, 0.5), |_| 1.0).unwrap();
        for p in [1.5, 2.0, 4.0] {
            assert!((f.lp_norm(p) - 1.0).abs() < 1e-3);
        }
    }
}
