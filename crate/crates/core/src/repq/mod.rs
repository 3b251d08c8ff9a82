//! Unitary representations of U_q(su(2)) built from leaf functions by
//! Weyl (mid-point) quantization, plus residual checks of the operator
//! identities they satisfy.
//!
//! Everything is generic over the scalar [`Real`]; `f64` is the default and
//! [`Extended`](crate::Extended) is used where entries grow like q^{2j}.

mod build;
mod verify;

pub use build::{build_rep, ladder_x_plus, weyl_quantize, RepSet};
pub use verify::{
    casimir, casimir_residuals, classical_limit_scan, delta_gap, naive_trace, q_trace,
    reflection_residual, rll_residual, verify_chi_algebra, verify_classical_su2,
    verify_isomorphism, verify_jimbo_drinfeld, verify_ladder, verify_reflection, verify_rll,
    CasimirResiduals, LimitRow,
};

use crate::numkit::{NumError, Real};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RepqError {
    #[error("spin must be a positive half-integer, got {0}")]
    Spin(f64),
    #[error("hbar must be finite and positive, got {0}")]
    Hbar(f64),
    #[error("winding {0} outside [-1, 1]")]
    Winding(i32),
    #[error("leaf function is not finite at lattice point J = {0}")]
    NonFiniteAt(f64),
    #[error("Casimir is not central: residual {0:.3e}")]
    CentralityViolation(f64),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Spin stored as the integer `2j ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Spin(u32);

impl Spin {
    pub fn from_twice(two_j: u32) -> Result<Self, RepqError> {
        if two_j == 0 {
            return Err(RepqError::Spin(0.0));
        }
        Ok(Self(two_j))
    }

    pub fn new(j: f64) -> Result<Self, RepqError> {
        let t = 2.0 * j;
        if !t.is_finite() || t < 1.0 - 1e-9 || (t - t.round()).abs() > 1e-9 || t > u32::MAX as f64 {
            return Err(RepqError::Spin(j));
        }
        Ok(Self(t.round() as u32))
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }
}

/// Deformation scalars `q = e^{ħ/2}`, `λ = q − q⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QContext<T: Real = f64> {
    pub hbar: T,
    pub q: T,
    pub lambda: T,
}

impl<T: Real> QContext<T> {
    pub fn new(hbar: f64) -> Result<Self, RepqError> {
        if !hbar.is_finite() || hbar <= 0.0 {
            return Err(RepqError::Hbar(hbar));
        }
        let h = T::of(hbar);
        let half = h / T::of(2.0);
        Ok(Self {
            hbar: h,
            q: half.exp(),
            lambda: T::of(2.0) * half.sinh(),
        })
    }

    /// `[x]_q = (q^x − q^{−x})/(q − q⁻¹)`.
    pub fn qnum(&self, x: T) -> T {
        (x * self.hbar / T::of(2.0)).sinh() / (self.hbar / T::of(2.0)).sinh()
    }

    /// `q^x`.
    pub fn qpow(&self, x: T) -> T {
        (x * self.hbar / T::of(2.0)).exp()
    }
}

/// Basis data of the spin-j space: `|m⟩`, m = −j..j ascending.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HilbertMeta {
    pub spin: Spin,
    pub hbar: f64,
    /// `N = 2j + 1`
    pub dim: usize,
    /// `M ∈ {0, 1}`, zero iff N is odd.
    pub parity: u8,
    /// `r = Nħ/2`
    pub r: f64,
}

pub fn hilbert(spin: Spin, hbar: f64) -> Result<HilbertMeta, RepqError> {
    if !hbar.is_finite() || hbar <= 0.0 {
        return Err(RepqError::Hbar(hbar));
    }
    let dim = spin.dim();
    Ok(HilbertMeta {
        spin,
        hbar,
        dim,
        parity: ((dim + 1) % 2) as u8,
        r: dim as f64 * hbar / 2.0,
    })
}

impl HilbertMeta {
    pub fn m_values(&self) -> Vec<f64> {
        let j = self.spin.value();
        (0..self.dim).map(|i| -j + i as f64).collect()
    }

    /// Integer Fourier labels `k = m + M/2`.
    pub fn momenta(&self) -> Vec<i64> {
        let half_m = self.parity as f64 / 2.0;
        self.m_values().iter().map(|m| (m + half_m) as i64).collect()
    }

    /// `J_m = ħ m`.
    pub fn j_lattice(&self) -> Vec<f64> {
        self.m_values().iter().map(|m| self.hbar * m).collect()
    }

    pub fn radius<T: Real>(&self) -> T {
        T::of(self.dim as f64) * T::of(self.hbar) / T::of(2.0)
    }

    pub fn context<T: Real>(&self) -> QContext<T> {
        QContext::new(self.hbar).expect("validated hbar")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leaf::{pole_loop_phase, Pole, ThetaForm};

    #[test]
    fn spin_validation() {
        assert_eq!(Spin::new(0.5).unwrap().dim(), 2);
        assert_eq!(Spin::new(5.0).unwrap().twice(), 10);
        assert!(Spin::new(0.3).is_err());
        assert!(Spin::new(0.0).is_err());
        assert!(Spin::new(-1.0).is_err());
    }

    #[test]
    fn hilbert_examples() {
        let h = hilbert(Spin::new(0.5).unwrap(), 0.5).unwrap();
        assert_eq!((h.dim, h.parity, h.r), (2, 1, 0.5));
        assert_eq!(h.m_values(), vec![-0.5, 0.5]);
        assert_eq!(h.momenta(), vec![0, 1]);
        let h = hilbert(Spin::new(1.0).unwrap(), 0.5).unwrap();
        assert_eq!((h.dim, h.parity, h.r), (3, 0, 0.75));
        assert_eq!(h.momenta(), vec![-1, 0, 1]);
    }

    #[test]
    fn hilbert_radius_is_admissible() {
        for tj in 1..12 {
            for hbar in [0.05, 0.5, 1.386294] {
                let h = hilbert(Spin::from_twice(tj).unwrap(), hbar).unwrap();
                let th = ThetaForm::new(h.parity, hbar);
                for pole in [Pole::North, Pole::South] {
                    assert_eq!(pole_loop_phase(&th, h.r, hbar, pole).re, -1.0);
                }
                let top = h.j_lattice().last().copied().unwrap();
                assert!(top <= h.r - hbar / 2.0 + 1e-12);
            }
        }
    }

    #[test]
    fn qnumbers() {
        let ctx = QContext::<f64>::new(2.0 * 2f64.ln()).unwrap();
        assert!((ctx.q - 2.0).abs() < 1e-15);
        assert!((ctx.lambda - 1.5).abs() < 1e-15);
        assert!((ctx.qnum(2.0) - 2.5).abs() < 1e-14);
        assert!((ctx.qnum(1.0) - 1.0).abs() < 1e-15);
    }
}
