//! Scalar abstraction shared by the dense linear algebra and the
//! representation builders.
//!
//! Two implementations are provided: `f64` for everyday work and
//! [`Extended`] (double-double, ~31 significant digits) for verifying
//! operator identities whose entries are large enough that one `f64` ulp
//! already exceeds the residual tolerance.

use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{Num, NumAssign};

/// Double-double real number.
pub type Extended = qd::Quad;

pub trait Real:
    Copy + Debug + PartialOrd + Num + NumAssign + Neg<Output = Self> + Send + Sync + 'static
{
    const NAME: &'static str;

    fn of(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn abs(self) -> Self;
    fn is_finite(self) -> bool;

    fn sinh(self) -> Self {
        let e = self.exp();
        (e - e.recip()) / Self::of(2.0)
    }

    fn cosh(self) -> Self {
        let e = self.exp();
        (e + e.recip()) / Self::of(2.0)
    }

    fn recip(self) -> Self {
        Self::one() / self
    }

    fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Real for f64 {
    const NAME: &'static str = "f64";

    fn of(x: f64) -> Self {
        x
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    fn sinh(self) -> Self {
        f64::sinh(self)
    }
    fn cosh(self) -> Self {
        f64::cosh(self)
    }
}

impl Real for Extended {
    const NAME: &'static str = "double-double";

    fn of(x: f64) -> Self {
        qd::Quad::from_f64(x)
    }
    fn to_f64(self) -> f64 {
        self.0 + self.1
    }
    fn sqrt(self) -> Self {
        qd::Quad::sqrt(self)
    }
    fn exp(self) -> Self {
        qd::Quad::exp(self)
    }
    fn ln(self) -> Self {
        qd::Quad::ln(self)
    }
    fn abs(self) -> Self {
        qd::Quad::abs(self)
    }
    fn is_finite(self) -> bool {
        self.0.is_finite() && self.1.is_finite()
    }
    fn sinh(self) -> Self {
        // exp(x) - exp(-x) cancels for small |x|; a short Taylor series keeps
        // full relative precision there.
        if self.0.abs() < 0.05 {
            let x2 = self * self;
            let mut term = self;
            let mut sum = self;
            for k in 1..12 {
                let d = Self::of(((2 * k) * (2 * k + 1)) as f64);
                term = term * x2 / d;
                sum += term;
            }
            sum
        } else {
            let e = qd::Quad::exp(self);
            (e - e.recip()) / Self::of(2.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extended_exp_ln_round_trip() {
        let x = Extended::of(1.386294);
        let err = (x.exp().ln() - x).abs().to_f64();
        assert!(err < 1e-28, "{err}");
    }

    #[test]
    fn extended_hyperbolic_identity() {
        for &v in &[1e-4, 0.01, 0.049, 0.2, 3.7] {
            let x = Extended::of(v);
            let c = Real::cosh(x);
            let s = Real::sinh(x);
            let err = (c * c - s * s - Extended::of(1.0)).abs().to_f64();
            assert!(err < 1e-26 * c.to_f64() * c.to_f64(), "{v}: {err}");
            assert!((s.to_f64() - v.sinh()).abs() < 1e-15 * v.sinh().abs().max(1.0));
        }
    }

    #[test]
    fn f64_passthrough() {
        assert_eq!(<f64 as Real>::sinh(0.3), 0.3f64.sinh());
        assert!(!<f64 as Real>::is_finite(f64::NAN));
    }
}
