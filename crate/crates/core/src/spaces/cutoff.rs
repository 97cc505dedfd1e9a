use crate::error::{Error, Result};

/// Coefficients of the degree-17 smoothstep `S_8` on `[0, 1]`:
/// `S_8(t) = t^9 * sum_k COEFFS[k] t^k`. Eight derivatives vanish at both
/// endpoints, so the assembled bump is `C^8`. The integer coefficients make
/// sample values reproducible bit for bit at rational points.
const SMOOTHSTEP_COEFFS: [f64; 9] = [
    24310.0, -175032.0, 556920.0, -1021020.0, 1178100.0, -875160.0, 408408.0, -109395.0, 12870.0,
];

fn smoothstep_raw(t: f64) -> f64 {
    let p = SMOOTHSTEP_COEFFS.iter().rev().fold(0.0, |acc, &c| acc * t + c);
    t.powi(9) * p
}

fn smoothstep(t: f64) -> f64 {
    // the alternating Horner sum cancels badly near t = 1; the exact
    // symmetry S(1-t) = 1 - S(t) keeps evaluation on the stable half
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else if t > 0.5 {
        1.0 - smoothstep_raw(1.0 - t)
    } else {
        smoothstep_raw(t)
    }
}

fn smoothstep_derivative_raw(t: f64) -> f64 {
    let p = SMOOTHSTEP_COEFFS.iter().rev().fold(0.0, |acc, &c| acc * t + c);
    let dp = SMOOTHSTEP_COEFFS
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(0.0, |acc, (k, &c)| acc * t + k as f64 * c);
    t.powi(8) * (9.0 * p + t * dp)
}

fn smoothstep_derivative(t: f64) -> f64 {
    // S'(1-t) = S'(t) by the same symmetry
    if t <= 0.0 || t >= 1.0 {
        0.0
    } else if t > 0.5 {
        smoothstep_derivative_raw(1.0 - t)
    } else {
        smoothstep_derivative_raw(t)
    }
}

/// Dilated smooth bump `phi_a(x) = phi(x/a)` with `phi = 1` on `[-1, 1]`,
/// `supp(phi)` in `[-2, 2]`, and a `C^8` polynomial transition in between.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffFunction {
    dilation: f64,
}

impl CutoffFunction {
    /// The base bump (`a = 1`).
    pub fn base() -> Self {
        Self { dilation: 1.0 }
    }

    pub fn dilate(a: f64) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::InvalidParameter(format!("dilation must be positive, got {a}")));
        }
        Ok(Self { dilation: a })
    }

    pub fn dilation(&self) -> f64 {
        self.dilation
    }

    /// `phi_a = 1` on `[-a, a]`.
    pub fn plateau_radius(&self) -> f64 {
        self.dilation
    }

    /// `phi_a = 0` outside `[-2a, 2a]`.
    pub fn support_radius(&self) -> f64 {
        2.0 * self.dilation
    }

    pub fn value(&self, x: f64) -> f64 {
        let y = (x / self.dilation).abs();
        if y <= 1.0 {
            1.0
        } else if y >= 2.0 {
            0.0
        } else {
            smoothstep(2.0 - y)
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let y = x / self.dilation;
        let ya = y.abs();
        if !(1.0..2.0).contains(&ya) {
            0.0
        } else {
            -y.signum() * smoothstep_derivative(2.0 - ya) / self.dilation
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoothstep_endpoints() {
        assert_eq!(smoothstep(0.0), 0.0);
        assert_eq!(smoothstep(1.0), 1.0);
        assert!((smoothstep(0.5) - 0.5).abs() < 1e-12); // odd symmetry about 1/2
    }

    #[test]
    fn plateau_and_support() {
        for a in [0.5, 1.0, 3.0] {
            let phi = CutoffFunction::dilate(a).unwrap();
            assert_eq!(phi.value(0.0), 1.0);
            assert_eq!(phi.value(a), 1.0);
            assert_eq!(phi.value(-0.99 * a), 1.0);
            assert_eq!(phi.value(3.0 * a), 0.0);
            assert_eq!(phi.value(-2.0 * a), 0.0);
        }
    }

    #[test]
    fn range_stays_in_unit_interval() {
        let phi = CutoffFunction::dilate(1.7).unwrap();
        for i in 0..10_000 {
            let x = -4.0 + 8.0 * i as f64 / 10_000.0;
            let v = phi.value(x);
            assert!((0.0..=1.0).contains(&v), "phi({x}) = {v}");
        }
    }

    #[test]
    fn derivative_matches_central_differences() {
        let phi = CutoffFunction::dilate(0.8).unwrap();
        let h = 1e-6;
        for x in [-1.5, -1.01, 1.2, 1.7, 1.99] {
            let fd = (phi.value(x + h) - phi.value(x - h)) / (2.0 * h);
            assert!((fd - phi.derivative(x)).abs() < 1e-7, "x = {x}");
        }
    }

    #[test]
    fn transition_is_smooth_at_the_plateau_edge() {
        let phi = CutoffFunction::base();
        // C^8 regularity: the first derivative vanishes at both edges
        assert_eq!(phi.derivative(1.0), 0.0);
        assert_eq!(phi.derivative(2.0), 0.0);
        assert!(phi.derivative(1.5).abs() > 0.1);
    }
}
