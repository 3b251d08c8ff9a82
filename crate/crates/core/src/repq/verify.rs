use super::{build_rep, hilbert, ladder_x_plus, weyl_quantize, HilbertMeta, RepSet, RepqError, Spin};
use crate::leaf::LeafFunction;
use crate::numkit::{AuxLeg, BlockOp2, Complex, DenseMatrix, NumError, Real};
use crate::rmatrix::{quantum_r, Sign};

fn norm<T: Real>(m: &DenseMatrix<T>) -> T {
    m.frobenius_norm()
}

fn max_of<T: Real>(xs: impl IntoIterator<Item = T>) -> T {
    xs.into_iter().fold(T::zero(), |a, b| a.max(b))
}

fn diag_fn<T: Real>(meta: &HilbertMeta, f: impl Fn(f64) -> T) -> DenseMatrix<T> {
    let v: Vec<_> = meta.m_values().iter().map(|&m| Complex::new(f(m), T::zero())).collect();
    DenseMatrix::diag(&v)
}

/// `χ₊a = q aχ₊`, `χ₋a = q⁻¹aχ₋`, `qχ₊χ₋ − q⁻¹χ₋χ₊ = λ(a⁻⁴ − 1)`.
pub fn verify_chi_algebra<T: Real>(rep: &RepSet<T>, q: T) -> T {
    let (a, cp, cm) = (&rep.a, &rep.chi_plus, &rep.chi_minus);
    let qi = T::one() / q;
    let lambda = q - qi;
    let r1 = norm(&(&(cp * a) - &(a * cp).scale_real(q)));
    let r2 = norm(&(&(cm * a) - &(a * cm).scale_real(qi)));
    let ai2 = &rep.a_inv * &rep.a_inv;
    let rhs = (&(&ai2 * &ai2) - &DenseMatrix::identity(rep.meta.dim)).scale_real(lambda);
    let lhs = &(cp * cm).scale_real(q) - &(cm * cp).scale_real(qi);
    let r3 = norm(&(&lhs - &rhs));
    max_of([r1, r2, r3])
}

/// `[H, X±] = ±2X±`, `[X₊, X₋] = (q^H − q^{−H})/(q − q⁻¹)`.
pub fn verify_jimbo_drinfeld<T: Real>(rep: &RepSet<T>, q: T) -> T {
    let two = T::of(2.0);
    let (h, xp, xm) = (&rep.h, &rep.x_plus, &rep.x_minus);
    let r1 = norm(&(&h.commutator(xp).unwrap() - &xp.scale_real(two)));
    let r2 = norm(&(&h.commutator(xm).unwrap() + &xm.scale_real(two)));
    let ln_q = q.ln();
    let qh = diag_fn(&rep.meta, |m| (T::of(2.0 * m) * ln_q).exp());
    let qmh = diag_fn(&rep.meta, |m| (T::of(-2.0 * m) * ln_q).exp());
    let rhs = (&qh - &qmh).scale_real(T::one() / (q - T::one() / q));
    let r3 = norm(&(&xp.commutator(xm).unwrap() - &rhs));
    max_of([r1, r2, r3])
}

/// `[X̃₊, X̃₋] = ħH̃`, `[H̃, X̃±] = ±2ħX̃±`.
pub fn verify_classical_su2<T: Real>(rep: &RepSet<T>) -> T {
    let hb = rep.ctx.hbar;
    let two_h = T::of(2.0) * hb;
    let (h, xp, xm) = (&rep.h_tilde, &rep.xt_plus, &rep.xt_minus);
    let r1 = norm(&(&xp.commutator(xm).unwrap() - &h.scale_real(hb)));
    let r2 = norm(&(&h.commutator(xp).unwrap() - &xp.scale_real(two_h)));
    let r3 = norm(&(&h.commutator(xm).unwrap() + &xm.scale_real(two_h)));
    max_of([r1, r2, r3])
}

/// `aχ₊ = q^{−1/2} λ X₊`: the L⁺ off-diagonal block against the
/// Jimbo–Drinfeld raising operator.
pub fn verify_isomorphism<T: Real>(rep: &RepSet<T>) -> T {
    let s = (T::one() / rep.ctx.q.sqrt()) * rep.ctx.lambda;
    norm(&(&(&rep.a * &rep.chi_plus) - &rep.x_plus.scale_real(s)))
}

/// Largest entrywise gap between the inserted X₊ and the q-ladder formula.
pub fn verify_ladder<T: Real>(rep: &RepSet<T>) -> T {
    (&rep.x_plus - &ladder_x_plus(&rep.meta)).max_abs()
}

fn aux<T: Real>(r: &DenseMatrix<T>, n: usize) -> DenseMatrix<T> {
    r.kron(&DenseMatrix::identity(n))
}

/// Max residual of the four exchange relations `R L₁ L₂ = L₂ L₁ R`.
pub fn rll_residual<T: Real>(l_plus: &BlockOp2<T>, l_minus: &BlockOp2<T>, q: T) -> T {
    let n = l_plus.dim();
    let rp = aux(&quantum_r(Sign::Plus, q), n);
    let rm = aux(&quantum_r(Sign::Minus, q), n);
    let (p1, p2) = (l_plus.embed_aux(AuxLeg::One), l_plus.embed_aux(AuxLeg::Two));
    let (m1, m2) = (l_minus.embed_aux(AuxLeg::One), l_minus.embed_aux(AuxLeg::Two));
    let rel = |r: &DenseMatrix<T>, x1: &DenseMatrix<T>, y2: &DenseMatrix<T>| {
        let lhs = &(r * x1) * y2;
        let rhs = &(y2 * x1) * r;
        norm(&(&lhs - &rhs))
    };
    max_of([
        rel(&rp, &p1, &p2),
        rel(&rm, &m1, &m2),
        rel(&rp, &p1, &m2),
        rel(&rm, &m1, &p2),
    ])
}

pub fn verify_rll<T: Real>(rep: &RepSet<T>, q: T) -> T {
    rll_residual(&rep.l_plus, &rep.l_minus, q)
}

/// `‖R₊⁻¹ L₁ R₊ L₂ − L₂ R₋⁻¹ L₁ R₋‖`.
pub fn reflection_residual<T: Real>(l: &BlockOp2<T>, q: T) -> Result<T, NumError> {
    let n = l.dim();
    let rp = aux(&quantum_r(Sign::Plus, q), n);
    let rm = aux(&quantum_r(Sign::Minus, q), n);
    let (rpi, rmi) = (rp.inverse()?, rm.inverse()?);
    let (l1, l2) = (l.embed_aux(AuxLeg::One), l.embed_aux(AuxLeg::Two));
    let lhs = &(&(&rpi * &l1) * &rp) * &l2;
    let rhs = &(&(&l2 * &rmi) * &l1) * &rm;
    Ok(norm(&(&lhs - &rhs)))
}

pub fn verify_reflection<T: Real>(rep: &RepSet<T>, q: T) -> Result<T, NumError> {
    reflection_residual(&rep.l, q)
}

/// `tr_q L = q⁻¹ L₁₁ + q L₂₂`.
pub fn q_trace<T: Real>(rep: &RepSet<T>, q: T) -> DenseMatrix<T> {
    &rep.l.block(0, 0).scale_real(T::one() / q) + &rep.l.block(1, 1).scale_real(q)
}

/// Unweighted auxiliary trace `L₁₁ + L₂₂`; not central for q ≠ 1.
pub fn naive_trace<T: Real>(rep: &RepSet<T>) -> DenseMatrix<T> {
    rep.l.block(0, 0) + rep.l.block(1, 1)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirResiduals<T: Real = f64> {
    /// `‖C − (q^N + q^{−N}) I‖`
    pub eigenvalue: T,
    /// `max ‖[C, X±]‖`
    pub central: T,
}

pub fn casimir_residuals<T: Real>(c: &DenseMatrix<T>, rep: &RepSet<T>, q: T) -> CasimirResiduals<T> {
    let n = rep.meta.dim;
    let nn = T::of(n as f64);
    let ln_q = q.ln();
    let value = (nn * ln_q).exp() + (-nn * ln_q).exp();
    let eigenvalue = norm(&(c - &DenseMatrix::identity(n).scale_real(value)));
    let central = max_of([
        norm(&c.commutator(&rep.x_plus).unwrap()),
        norm(&c.commutator(&rep.x_minus).unwrap()),
    ]);
    CasimirResiduals { eigenvalue, central }
}

/// The q-trace Casimir; errors if it misses `(q^N + q^{−N}) I` or fails to
/// commute with X± by more than 1e-10.
pub fn casimir<T: Real>(rep: &RepSet<T>, q: T) -> Result<DenseMatrix<T>, RepqError> {
    let c = q_trace(rep, q);
    let res = casimir_residuals(&c, rep, q);
    let worst = res.eigenvalue.max(res.central).to_f64();
    if !(worst <= 1e-10) {
        return Err(RepqError::CentralityViolation(worst));
    }
    Ok(c)
}

/// `‖weyl(δ) − L₂₂‖`: mid-point quantization of `δ = 2cosh r − e^{−J}`
/// against the assembled block.
pub fn delta_gap<T: Real>(rep: &RepSet<T>) -> Result<T, RepqError> {
    let r = rep.meta.radius::<T>();
    let d = weyl_quantize(|j| LeafFunction::Delta.profile(j, r), 0, &rep.meta)?;
    Ok(norm(&(&d - rep.l.block(1, 1))))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitRow {
    pub dim: usize,
    pub hbar: f64,
    /// `‖[χ₊,a]/(−ħ) − (−½ aχ₊)‖ / ‖½ aχ₊‖`: commutator against the
    /// quantized bracket `{χ₊, a} = −½ aχ₊`.
    pub eps: f64,
    /// `‖χ₊a − aχ₊ − (ħ/2)aχ₊‖ / ‖aχ₊‖`
    pub linear_residual: f64,
    /// `‖χ₊a − q aχ₊‖`
    pub exact_residual: f64,
}

/// Fixed leaf radius, `ħ_N = 2r/N` for each requested dimension.
pub fn classical_limit_scan(r: f64, dims: &[usize]) -> Result<Vec<LimitRow>, RepqError> {
    dims.iter()
        .map(|&n| {
            if n < 2 {
                return Err(RepqError::Spin((n as f64 - 1.0) / 2.0));
            }
            let hbar = 2.0 * r / n as f64;
            let meta = hilbert(Spin::from_twice(n as u32 - 1)?, hbar)?;
            let rep = build_rep::<f64>(&meta)?;
            let (a, c) = (&rep.a, &rep.chi_plus);
            let ac = a * c;
            let ca = c * a;
            let comm = &ca - &ac;
            let half_ac = ac.scale_real(0.5);
            let eps = norm(&(&comm.scale_real(-1.0 / hbar) + &half_ac)) / norm(&half_ac);
            let linear_residual = norm(&(&comm - &ac.scale_real(hbar / 2.0))) / norm(&ac);
            let exact_residual = norm(&(&ca - &ac.scale_real(rep.ctx.q)));
            Ok(LimitRow {
                dim: n,
                hbar,
                eps,
                linear_residual,
                exact_residual,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::{Extended, Shape};

    fn rep(j: f64, hbar: f64) -> RepSet {
        build_rep(&hilbert(Spin::new(j).unwrap(), hbar).unwrap()).unwrap()
    }

    fn q2() -> f64 {
        2.0 * 2f64.ln()
    }

    #[test]
    fn chi_algebra() {
        let r = rep(0.5, q2());
        assert!(verify_chi_algebra(&r, r.ctx.q) < 1e-12);
        let r = rep(5.0, 0.05);
        assert!(verify_chi_algebra(&r, r.ctx.q) < 1e-10);
        // q → 1: the relations degenerate to commutativity
        let r = rep(1.0, 1e-8);
        assert!(norm(&r.chi_plus.commutator(&r.a).unwrap()) < 1e-7);
        assert!(verify_chi_algebra(&r, 1.0) < 1e-7);
    }

    #[test]
    fn jimbo_drinfeld() {
        let r = rep(0.5, q2());
        assert!(verify_jimbo_drinfeld(&r, r.ctx.q) < 1e-12);
        let r = rep(3.0, 2.0 * 1.2f64.ln());
        assert!(verify_jimbo_drinfeld(&r, r.ctx.q) < 1e-10);
        assert!(verify_classical_su2(&r) < 1e-12);
        assert!(verify_isomorphism(&r) < 1e-12);
    }

    #[test]
    fn rll_examples() {
        let r = rep(0.5, q2());
        assert!(verify_rll(&r, r.ctx.q) < 1e-11);
        let r = rep(2.0, 0.6);
        assert!(verify_rll(&r, r.ctx.q) < 1e-10);
        let id = BlockOp2::<f64>::identity(3);
        assert_eq!(rll_residual(&id, &id, 1.0), 0.0);
        // wrong q is detected
        assert!(verify_rll(&r, 1.5) > 1e-3);
    }

    #[test]
    fn reflection_examples() {
        let r = rep(0.5, q2());
        assert!(verify_reflection(&r, r.ctx.q).unwrap() < 1e-11);
        let r = rep(1.5, 2.0 * 1.4f64.ln());
        assert!(verify_reflection(&r, r.ctx.q).unwrap() < 1e-10);
        let diag = BlockOp2::<f64>::new([
            [DenseMatrix::identity(2).scale_real(2.0), DenseMatrix::zeros(2, 2)],
            [DenseMatrix::zeros(2, 2), DenseMatrix::identity(2).scale_real(0.5)],
        ])
        .unwrap();
        assert_eq!(reflection_residual(&diag, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn casimir_goldens() {
        for (j, expect) in [(0.5, 4.25), (1.0, 8.125)] {
            let r = rep(j, q2());
            let c = casimir(&r, r.ctx.q).unwrap();
            let n = r.meta.dim;
            assert!(c.distance(&DenseMatrix::identity(n).scale_real(expect)).unwrap() < 1e-12);
            let classical = 2.0 * r.meta.r.cosh();
            assert!((c.get(0, 0).re - classical).abs() < 1e-12);
        }
    }

    #[test]
    fn naive_trace_not_central() {
        let r = rep(0.5, q2());
        let t = naive_trace(&r);
        assert!(norm(&t.commutator(&r.x_plus).unwrap()) > 1e-3);
        assert!(delta_gap(&r).unwrap() > 1e-3);
    }

    #[test]
    fn ladder_consistency() {
        for tj in 1..=10 {
            for hbar in [0.05, 0.5, 1.386294] {
                let r = build_rep::<f64>(&hilbert(Spin::from_twice(tj).unwrap(), hbar).unwrap()).unwrap();
                assert!(verify_ladder(&r) < 1e-12);
            }
        }
    }

    #[test]
    fn limit_scan_rates() {
        let rows = classical_limit_scan(1.0, &[8, 16, 32, 64]).unwrap();
        for w in rows.windows(2) {
            let ratio = w[1].eps / w[0].eps;
            assert!((0.375..=0.625).contains(&ratio), "{ratio}");
            assert!(w[1].eps < w[0].eps);
        }
        assert!(rows.iter().all(|r| r.exact_residual < 1e-10));
    }

    #[test]
    fn extended_reflection_large_spin() {
        let meta = hilbert(Spin::new(5.0).unwrap(), 1.386294).unwrap();
        let r = build_rep::<Extended>(&meta).unwrap();
        let q = r.ctx.q;
        assert!(verify_reflection(&r, q).unwrap().to_f64() < 1e-10);
        assert!(verify_chi_algebra(&r, q).to_f64() < 1e-10);
        let inv = crate::numkit::block_inverse_triangular(&r.l_minus, Shape::Lower).unwrap();
        assert!(r.l_minus.matmul(&inv).unwrap().distance(&BlockOp2::identity(11)).unwrap().to_f64() < 1e-20);
    }
}
