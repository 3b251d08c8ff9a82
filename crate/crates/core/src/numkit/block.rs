use super::{Complex, DenseMatrix, NumError, Real};

/// Which off-diagonal block is required to vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `[[A, 0], [C, D]]`
    Lower,
    /// `[[A, B], [0, D]]`
    Upper,
}

/// 2×2 matrix whose entries are N×N operators.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockOp2<T: Real = f64> {
    blocks: [[DenseMatrix<T>; 2]; 2],
    dim: usize,
}

impl<T: Real> BlockOp2<T> {
    pub fn new(blocks: [[DenseMatrix<T>; 2]; 2]) -> Result<Self, NumError> {
        let dim = blocks[0][0].rows();
        for row in &blocks {
            for b in row {
                if b.rows() != dim || b.cols() != dim {
                    return Err(NumError::Shape {
                        op: "BlockOp2::new",
                        left: (dim, dim),
                        right: (b.rows(), b.cols()),
                    });
                }
            }
        }
        Ok(Self { blocks, dim })
    }

    pub fn identity(dim: usize) -> Self {
        let i = DenseMatrix::identity(dim);
        let z = DenseMatrix::zeros(dim, dim);
        Self {
            blocks: [[i.clone(), z.clone()], [z, i]],
            dim,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn block(&self, i: usize, j: usize) -> &DenseMatrix<T> {
        &self.blocks[i][j]
    }

    /// Block product `(m·m')_{ij} = Σ_k m_{ik} m'_{kj}` with operator order kept.
    pub fn matmul(&self, other: &Self) -> Result<Self, NumError> {
        if self.dim != other.dim {
            return Err(NumError::Shape {
                op: "BlockOp2::matmul",
                left: (self.dim, self.dim),
                right: (other.dim, other.dim),
            });
        }
        let entry = |i: usize, j: usize| -> Result<DenseMatrix<T>, NumError> {
            let a = self.blocks[i][0].matmul(&other.blocks[0][j])?;
            let b = self.blocks[i][1].matmul(&other.blocks[1][j])?;
            a.try_add(&b)
        };
        Ok(Self {
            blocks: [[entry(0, 0)?, entry(0, 1)?], [entry(1, 0)?, entry(1, 1)?]],
            dim: self.dim,
        })
    }

    /// The 2N×2N matrix `[[m00, m01], [m10, m11]]`.
    pub fn to_dense(&self) -> DenseMatrix<T> {
        let n = self.dim;
        DenseMatrix::from_fn(2 * n, 2 * n, |r, c| self.blocks[r / n][c / n].get(r % n, c % n))
    }

    /// Frobenius distance between two block operators.
    pub fn distance(&self, other: &Self) -> Result<T, NumError> {
        let mut acc = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                let d = self.blocks[i][j].distance(&other.blocks[i][j])?;
                acc += d * d;
            }
        }
        Ok(acc.sqrt())
    }

    /// Embeds into `C² ⊗ C² ⊗ C^N` with the 2×2 structure on auxiliary leg
    /// 1 or 2: `Σ E_ij ⊗ I₂ ⊗ m_ij` or `Σ I₂ ⊗ E_ij ⊗ m_ij`.
    pub fn embed_aux(&self, leg: AuxLeg) -> DenseMatrix<T> {
        let n = self.dim;
        let i2 = DenseMatrix::<T>::identity(2);
        let mut out = DenseMatrix::zeros(4 * n, 4 * n);
        for i in 0..2 {
            for j in 0..2 {
                let e = DenseMatrix::from_fn(2, 2, |r, c| {
                    if r == i && c == j {
                        Complex::new(T::one(), T::zero())
                    } else {
                        Complex::new(T::zero(), T::zero())
                    }
                });
                let aux = match leg {
                    AuxLeg::One => e.kron(&i2),
                    AuxLeg::Two => i2.kron(&e),
                };
                let term = aux.kron(&self.blocks[i][j]);
                out = &out + &term;
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuxLeg {
    One,
    Two,
}

/// Inverse of a block-triangular operator matrix.
///
/// `[[A,0],[C,D]]⁻¹ = [[A⁻¹,0],[−D⁻¹CA⁻¹,D⁻¹]]` and the mirrored formula
/// for the upper shape.
pub fn block_inverse_triangular<T: Real>(
    m: &BlockOp2<T>,
    shape: Shape,
) -> Result<BlockOp2<T>, NumError> {
    let (zero_block, fill) = match shape {
        Shape::Lower => ((0, 1), (1, 0)),
        Shape::Upper => ((1, 0), (0, 1)),
    };
    let z = m.block(zero_block.0, zero_block.1);
    let scale = m.block(0, 0).max_abs().max(m.block(1, 1).max_abs());
    if z.max_abs() > scale * T::of(1e-14) {
        return Err(NumError::NotTriangular);
    }
    let a_inv = m.block(0, 0).inverse()?;
    let d_inv = m.block(1, 1).inverse()?;
    let off = m.block(fill.0, fill.1);
    // lower: −D⁻¹ C A⁻¹ ; upper: −A⁻¹ B D⁻¹
    let corner = match shape {
        Shape::Lower => d_inv.matmul(off)?.matmul(&a_inv)?,
        Shape::Upper => a_inv.matmul(off)?.matmul(&d_inv)?,
    };
    let corner = -&corner;
    let zero = DenseMatrix::zeros(m.dim(), m.dim());
    let blocks = match shape {
        Shape::Lower => [[a_inv, zero], [corner, d_inv]],
        Shape::Upper => [[a_inv, corner], [zero, d_inv]],
    };
    BlockOp2::new(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::c64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(rng: &mut ChaCha8Rng, n: usize) -> DenseMatrix {
        DenseMatrix::from_fn(n, n, |_, _| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    fn e(i: usize, j: usize, n: usize) -> DenseMatrix {
        DenseMatrix::from_fn(n, n, |r, c| if r == i && c == j { c64(1.0, 0.0) } else { c64(0.0, 0.0) })
    }

    #[test]
    fn identity_inverts_to_identity() {
        let id = BlockOp2::<f64>::identity(3);
        for shape in [Shape::Lower, Shape::Upper] {
            assert_eq!(block_inverse_triangular(&id, shape).unwrap(), id);
        }
    }

    #[test]
    fn lower_example_multiplies_back() {
        let n = 2;
        let i = DenseMatrix::<f64>::identity(n);
        let m = BlockOp2::new([
            [i.scale_real(2.0), DenseMatrix::zeros(n, n)],
            [e(0, 1, n), i.scale_real(0.5)],
        ])
        .unwrap();
        let inv = block_inverse_triangular(&m, Shape::Lower).unwrap();
        let id = BlockOp2::identity(n);
        assert!(m.matmul(&inv).unwrap().distance(&id).unwrap() < 1e-13);
        assert!(inv.matmul(&m).unwrap().distance(&id).unwrap() < 1e-13);
    }

    #[test]
    fn upper_random_multiplies_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let n = 3;
        let shift = DenseMatrix::identity(n).scale_real(3.0);
        let m = BlockOp2::new([
            [&random(&mut rng, n) + &shift, random(&mut rng, n)],
            [DenseMatrix::zeros(n, n), &random(&mut rng, n) + &shift],
        ])
        .unwrap();
        let inv = block_inverse_triangular(&m, Shape::Upper).unwrap();
        assert!(m.matmul(&inv).unwrap().distance(&BlockOp2::identity(n)).unwrap() < 1e-12);
    }

    #[test]
    fn wrong_shape_rejected() {
        let n = 2;
        let i = DenseMatrix::<f64>::identity(n);
        let m = BlockOp2::new([[i.clone(), DenseMatrix::zeros(n, n)], [e(1, 0, n), i]]).unwrap();
        assert!(matches!(
            block_inverse_triangular(&m, Shape::Upper),
            Err(NumError::NotTriangular)
        ));
    }

    #[test]
    fn singular_diagonal_rejected() {
        let n = 2;
        let z = DenseMatrix::<f64>::zeros(n, n);
        let m = BlockOp2::new([[z.clone(), z.clone()], [z.clone(), DenseMatrix::identity(n)]]).unwrap();
        assert!(matches!(
            block_inverse_triangular(&m, Shape::Lower),
            Err(NumError::Singular { .. })
        ));
    }

    #[test]
    fn mismatched_blocks_rejected() {
        let r = BlockOp2::<f64>::new([
            [DenseMatrix::identity(2), DenseMatrix::zeros(2, 2)],
            [DenseMatrix::zeros(2, 2), DenseMatrix::identity(3)],
        ]);
        assert!(r.is_err());
    }

    #[test]
    fn embed_identity_is_identity() {
        for leg in [AuxLeg::One, AuxLeg::Two] {
            assert_eq!(BlockOp2::<f64>::identity(3).embed_aux(leg), DenseMatrix::identity(12));
        }
    }

    #[test]
    fn diagonal_blocks_commute_across_legs() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let n = 2;
        // diagonal N×N blocks commute with each other, so the legs commute
        let d = |rng: &mut ChaCha8Rng| {
            let v: Vec<_> = (0..n).map(|_| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            DenseMatrix::diag(&v)
        };
        let z = DenseMatrix::zeros(n, n);
        let m = BlockOp2::new([[d(&mut rng), z.clone()], [z.clone(), d(&mut rng)]]).unwrap();
        let m2 = BlockOp2::new([[d(&mut rng), z.clone()], [z, d(&mut rng)]]).unwrap();
        let a = m.embed_aux(AuxLeg::One);
        let b = m2.embed_aux(AuxLeg::Two);
        assert!(a.commutator(&b).unwrap().frobenius_norm() < 1e-14);
    }

    #[test]
    fn embed_product_matches_index_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let n = 2;
        let blocks = |rng: &mut ChaCha8Rng| {
            [
                [random(rng, n), random(rng, n)],
                [random(rng, n), random(rng, n)],
            ]
        };
        let (b1, b2) = (blocks(&mut rng), blocks(&mut rng));
        let m = BlockOp2::new(b1.clone()).unwrap();
        let m2 = BlockOp2::new(b2.clone()).unwrap();
        let p = &m.embed_aux(AuxLeg::One) * &m2.embed_aux(AuxLeg::Two);
        // row (i,k,α), col (j,l,β) = Σ_γ m_ij[α,γ] m'_kl[γ,β]
        for i in 0..2 {
            for k in 0..2 {
                for j in 0..2 {
                    for l in 0..2 {
                        for al in 0..n {
                            for be in 0..n {
                                let mut s = c64(0.0, 0.0);
                                for g in 0..n {
                                    s += b1[i][j].get(al, g) * b2[k][l].get(g, be);
                                }
                                let r = (i * 2 + k) * n + al;
                                let c = (j * 2 + l) * n + be;
                                assert!((p.get(r, c) - s).norm() < 1e-14);
                            }
                        }
                    }
                }
            }
        }
    }
}
