//! Dense complex linear algebra: matrices, 2×2 operator-block matrices,
//! tensor embeddings and quadrature grids.

mod block;
mod matrix;
mod quadrature;
mod real;

pub use block::{block_inverse_triangular, AuxLeg, BlockOp2, Shape};
pub use matrix::DenseMatrix;
pub use quadrature::{gauss_legendre, trapezoid};
pub use real::{Extended, Real};

pub type Complex<T = f64> = num_complex::Complex<T>;

pub fn c64(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumError {
    #[error("{op}: shape mismatch {left:?} vs {right:?}")]
    Shape {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{op}: non-finite entry")]
    NonFinite { op: &'static str },
    #[error("singular matrix (no usable pivot in column {pivot})")]
    Singular { pivot: usize },
    #[error("block matrix is not triangular in the requested shape")]
    NotTriangular,
    #[error("invalid quadrature grid: n={n} on [{lo}, {hi}]")]
    BadGrid { n: usize, lo: f64, hi: f64 },
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn mat(n: usize, m: usize) -> impl Strategy<Value = DenseMatrix> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * m).prop_map(move |v| {
            DenseMatrix::new(n, m, v.into_iter().map(|(a, b)| c64(a, b)).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn matmul_associative((a, b, c) in (1usize..5).prop_flat_map(|n| (mat(n, n), mat(n, n), mat(n, n)))) {
            let l = &(&a * &b) * &c;
            let r = &a * &(&b * &c);
            prop_assert!(l.distance(&r).unwrap() < 1e-12);
        }

        #[test]
        fn kron_mixed_product(
            (a, b, c, d) in (1usize..5, 1usize..5).prop_flat_map(|(n, m)| (mat(n, n), mat(m, m), mat(n, n), mat(m, m)))
        ) {
            let l = &a.kron(&b) * &c.kron(&d);
            let r = (&a * &c).kron(&(&b * &d));
            prop_assert!(l.distance(&r).unwrap() < 1e-12);
        }

        #[test]
        fn scalar_blocks_commute_across_legs(
            s in prop::array::uniform4((-2.0f64..2.0, -2.0f64..2.0)),
            t in prop::array::uniform4((-2.0f64..2.0, -2.0f64..2.0)),
            n in 1usize..4,
        ) {
            let blk = |v: [(f64, f64); 4]| {
                let i = DenseMatrix::identity(n);
                BlockOp2::new([
                    [i.scale(c64(v[0].0, v[0].1)), i.scale(c64(v[1].0, v[1].1))],
                    [i.scale(c64(v[2].0, v[2].1)), i.scale(c64(v[3].0, v[3].1))],
                ]).unwrap()
            };
            let a = blk(s).embed_aux(AuxLeg::One);
            let b = blk(t).embed_aux(AuxLeg::Two);
            prop_assert!(a.commutator(&b).unwrap().frobenius_norm() < 1e-13);
        }
    }
}
