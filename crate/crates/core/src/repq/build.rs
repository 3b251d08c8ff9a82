use num_traits::Zero;

use super::{HilbertMeta, QContext, RepqError};
use crate::leaf::LeafFunction;
use crate::numkit::{block_inverse_triangular, BlockOp2, Complex, DenseMatrix, Real, Shape};

/// `(O)_{m'm} = F((m' − p/2)ħ) δ_{m'−p, m}`.
pub fn weyl_quantize<T: Real>(
    f: impl Fn(T) -> T,
    p: i32,
    meta: &HilbertMeta,
) -> Result<DenseMatrix<T>, RepqError> {
    if p.abs() > 1 {
        return Err(RepqError::Winding(p));
    }
    let n = meta.dim;
    let hbar = T::of(meta.hbar);
    let m = meta.m_values();
    let mut out = DenseMatrix::zeros(n, n);
    for (row, &mp) in m.iter().enumerate() {
        let col = row as i64 - p as i64;
        if col < 0 || col >= n as i64 {
            continue;
        }
        let j = T::of(mp - p as f64 / 2.0) * hbar;
        let v = f(j);
        if !v.is_finite() {
            return Err(RepqError::NonFiniteAt(j.to_f64()));
        }
        out.set(row, col as usize, Complex::new(v, T::zero()));
    }
    Ok(out)
}

fn quantize<T: Real>(f: LeafFunction, meta: &HilbertMeta) -> Result<DenseMatrix<T>, RepqError> {
    let r = meta.radius::<T>();
    weyl_quantize(|j| f.profile(j, r), f.winding(), meta)
}

/// Operator content of one (j, ħ) representation, basis m ascending.
#[derive(Debug, Clone)]
pub struct RepSet<T: Real = f64> {
    pub meta: HilbertMeta,
    pub ctx: QContext<T>,
    pub a: DenseMatrix<T>,
    pub a_inv: DenseMatrix<T>,
    pub chi_plus: DenseMatrix<T>,
    pub chi_minus: DenseMatrix<T>,
    pub h: DenseMatrix<T>,
    pub x_plus: DenseMatrix<T>,
    pub x_minus: DenseMatrix<T>,
    pub h_tilde: DenseMatrix<T>,
    pub xt_plus: DenseMatrix<T>,
    pub xt_minus: DenseMatrix<T>,
    pub l_plus: BlockOp2<T>,
    pub l_minus: BlockOp2<T>,
    pub l: BlockOp2<T>,
}

pub fn build_rep<T: Real>(meta: &HilbertMeta) -> Result<RepSet<T>, RepqError> {
    let ctx = meta.context::<T>();
    let hbar = meta.hbar;
    let a = quantize(LeafFunction::A, meta)?;
    let a_inv = weyl_quantize(|j: T| (j / T::of(2.0)).exp(), 0, meta)?;
    let chi_plus = quantize(LeafFunction::ChiPlus, meta)?;
    let chi_minus = quantize(LeafFunction::ChiMinus, meta)?;
    let h = quantize(LeafFunction::HInsert { hbar }, meta)?;
    let x_plus = quantize(LeafFunction::XPlusInsert { hbar }, meta)?;
    let x_minus = quantize(LeafFunction::XMinusInsert { hbar }, meta)?;
    let h_tilde = h.scale_real(ctx.hbar);
    let xt_plus = quantize(LeafFunction::XTildePlus, meta)?;
    let xt_minus = quantize(LeafFunction::XTildeMinus, meta)?;

    let n = meta.dim;
    let zero = DenseMatrix::zeros(n, n);
    let id = DenseMatrix::identity(n);
    // operator order exactly as written: diagonal factor first
    let diag_p = BlockOp2::new([[a.clone(), zero.clone()], [zero.clone(), a_inv.clone()]])?;
    let upper = BlockOp2::new([[id.clone(), chi_plus.clone()], [zero.clone(), id.clone()]])?;
    let l_plus = diag_p.matmul(&upper)?;
    let diag_m = BlockOp2::new([[a_inv.clone(), zero.clone()], [zero.clone(), a.clone()]])?;
    let lower = BlockOp2::new([[id.clone(), zero.clone()], [-&chi_minus, id]])?;
    let l_minus = diag_m.matmul(&lower)?;
    let l = block_inverse_triangular(&l_minus, Shape::Lower)?.matmul(&l_plus)?;

    Ok(RepSet {
        meta: *meta,
        ctx,
        a,
        a_inv,
        chi_plus,
        chi_minus,
        h,
        x_plus,
        x_minus,
        h_tilde,
        xt_plus,
        xt_minus,
        l_plus,
        l_minus,
        l,
    })
}

/// `(X₊)_{m+1,m} = sqrt([j−m]_q [j+m+1]_q)`.
pub fn ladder_x_plus<T: Real>(meta: &HilbertMeta) -> DenseMatrix<T> {
    let ctx = meta.context::<T>();
    let j = meta.spin.value();
    let m = meta.m_values();
    DenseMatrix::from_fn(meta.dim, meta.dim, |row, col| {
        if row == col + 1 {
            let mm = m[col];
            let v = ctx.qnum(T::of(j - mm)) * ctx.qnum(T::of(j + mm + 1.0));
            Complex::new(v.sqrt(), T::zero())
        } else {
            Complex::zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::super::{hilbert, Spin};
    use super::*;
    use crate::numkit::{c64, Extended};

    fn meta(j: f64, hbar: f64) -> HilbertMeta {
        hilbert(Spin::new(j).unwrap(), hbar).unwrap()
    }

    fn q2() -> f64 {
        2.0 * 2f64.ln()
    }

    #[test]
    fn weyl_identity_and_alpha() {
        let m = meta(1.5, 0.3);
        let id = weyl_quantize(|_: f64| 1.0, 0, &m).unwrap();
        assert_eq!(id, DenseMatrix::identity(4));
        let al = weyl_quantize(|j: f64| (-j).exp(), 0, &meta(0.5, q2())).unwrap();
        assert!((al.get(0, 0).re - 2.0).abs() < 1e-15);
        assert!((al.get(1, 1).re - 0.5).abs() < 1e-15);
        assert!(weyl_quantize(|_: f64| 1.0, 2, &m).is_err());
        assert!(weyl_quantize(|j: f64| j.ln(), 0, &m).is_err());
    }

    #[test]
    fn chi_single_entry() {
        let rep = build_rep::<f64>(&meta(0.5, q2())).unwrap();
        let c = &rep.chi_plus;
        assert!((c.get(1, 0).re - 1.5).abs() < 1e-14);
        assert_eq!(c.get(0, 1), c64(0.0, 0.0));
        assert_eq!(c.get(0, 0), c64(0.0, 0.0));
        assert_eq!(rep.chi_minus, rep.chi_plus.adjoint());
    }

    #[test]
    fn cartan_and_raising_examples() {
        let rep = build_rep::<f64>(&meta(0.5, q2())).unwrap();
        assert_eq!(rep.h, DenseMatrix::diag(&[c64(-1.0, 0.0), c64(1.0, 0.0)]));
        assert!((rep.x_plus.get(1, 0).re - 1.0).abs() < 1e-14);
        let rep = build_rep::<f64>(&meta(1.0, q2())).unwrap();
        for (r, c) in [(1, 0), (2, 1)] {
            assert!((rep.x_plus.get(r, c).re - 2.5f64.sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn classical_generators_small_hbar() {
        let hbar = 1e-3;
        let rep = build_rep::<f64>(&meta(1.0, hbar)).unwrap();
        for (col, m) in [-1.0f64, 0.0].iter().enumerate() {
            let expect = hbar * (1.5f64.powi(2) - (m + 0.5).powi(2)).sqrt();
            assert!((rep.xt_plus.get(col + 1, col).re - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn ladder_termination_and_unitarity() {
        let rep = build_rep::<f64>(&meta(2.0, 0.7)).unwrap();
        let n = rep.meta.dim;
        for i in 0..n {
            assert_eq!(rep.chi_plus.get(i, n - 1), c64(0.0, 0.0));
            assert_eq!(rep.chi_minus.get(i, 0), c64(0.0, 0.0));
        }
        assert_eq!(rep.x_minus, rep.x_plus.adjoint());
        assert_eq!(rep.xt_minus, rep.xt_plus.adjoint());
        assert!(rep.a.entries().iter().all(|z| z.im == 0.0 && z.re >= 0.0));
    }

    #[test]
    fn l_blocks_match_hand_assembly() {
        let rep = build_rep::<f64>(&meta(1.0, 0.4)).unwrap();
        let (a, ai, cp, cm) = (&rep.a, &rep.a_inv, &rep.chi_plus, &rep.chi_minus);
        let l11 = a * a;
        let l12 = &(a * a) * cp;
        let l21 = &(cm * a) * a;
        let l22 = &(&l21 * cp) + &(ai * ai);
        let l = &rep.l;
        assert!(l.block(0, 0).distance(&l11).unwrap() < 1e-14);
        assert!(l.block(0, 1).distance(&l12).unwrap() < 1e-14);
        assert!(l.block(1, 0).distance(&l21).unwrap() < 1e-14);
        assert!(l.block(1, 1).distance(&l22).unwrap() < 1e-13);
    }

    #[test]
    fn extended_agrees_with_f64() {
        let m = meta(2.5, 0.5);
        let lo = build_rep::<f64>(&m).unwrap();
        let hi = build_rep::<Extended>(&m).unwrap();
        assert!(hi.l.block(1, 1).to_f64().distance(lo.l.block(1, 1)).unwrap() < 1e-12);
        assert!(hi.x_plus.to_f64().distance(&lo.x_plus).unwrap() < 1e-13);
    }
}
