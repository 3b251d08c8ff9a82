//! Classical r± and quantum R± matrices for sl₂ and the bialgebra identities
//! they satisfy.
//!
//! Basis order is (H, X₊, X₋) with H = diag(1,−1), X₊ = E₁₂, X₋ = E₂₁.
//! Tensor legs follow `kron`: the first factor is the slow index.

use crate::numkit::{c64, Complex, DenseMatrix, NumError, Real};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RMatrixError {
    #[error("input must be traceless (trace {0:.3e})")]
    NotTraceless(f64),
    #[error("expansion residual {0:.3e} exceeds 1e-10: not in sl2 ⊗ sl2")]
    OutsideSpan(f64),
    #[error(transparent)]
    Num(#[from] NumError),
}

fn real<T: Real>(x: f64) -> Complex<T> {
    Complex::new(T::of(x), T::zero())
}

/// `[H, X₊, X₋]` in the fundamental representation.
pub fn sl2_basis() -> [DenseMatrix; 3] {
    let m = |v: [f64; 4]| DenseMatrix::from_real(2, 2, &v).expect("basis");
    [
        m([1.0, 0.0, 0.0, -1.0]),
        m([0.0, 1.0, 0.0, 0.0]),
        m([0.0, 0.0, 1.0, 0.0]),
    ]
}

/// Flip `σ(u ⊗ v) = v ⊗ u` on C² ⊗ C².
pub fn swap4<T: Real>() -> DenseMatrix<T> {
    DenseMatrix::from_fn(4, 4, |row, col| {
        let (i, k) = (row / 2, row % 2);
        if col == k * 2 + i {
            real(1.0)
        } else {
            real(0.0)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalR {
    pub plus: DenseMatrix,
    pub minus: DenseMatrix,
}

impl Default for ClassicalR {
    fn default() -> Self {
        Self::new()
    }
}

impl ClassicalR {
    /// `r₊ = ¼ H⊗H + X₊⊗X₋`, `r₋ = −σ r₊ σ`.
    pub fn new() -> Self {
        #[rustfmt::skip]
        let plus = DenseMatrix::from_real(4, 4, &[
            0.25, 0.0, 0.0, 0.0,
            0.0, -0.25, 1.0, 0.0,
            0.0, 0.0, -0.25, 0.0,
            0.0, 0.0, 0.0, 0.25,
        ]).expect("r+");
        let s = swap4();
        let minus = -&(&(&s * &plus) * &s);
        Self { plus, minus }
    }

    pub fn get(&self, sign: Sign) -> &DenseMatrix {
        match sign {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }

    /// `I = r + σ(r)` for `r = r₊`.
    pub fn symmetric_part(&self) -> DenseMatrix {
        let s = swap4();
        &self.plus + &(&(&s * &self.plus) * &s)
    }
}

/// `R₊(q) = q^{−1/2}[[q,0,0,0],[0,1,λ,0],[0,0,1,0],[0,0,0,q]]`.
pub fn quantum_r<T: Real>(sign: Sign, q: T) -> DenseMatrix<T> {
    let one = T::one();
    let lambda = q - one / q;
    let z = T::zero();
    let (pref, rows) = match sign {
        Sign::Plus => (
            one / q.sqrt(),
            [[q, z, z, z], [z, one, lambda, z], [z, z, one, z], [z, z, z, q]],
        ),
        Sign::Minus => {
            let qi = one / q;
            (
                q.sqrt(),
                [[qi, z, z, z], [z, one, z, z], [z, -lambda, one, z], [z, z, z, qi]],
            )
        }
    };
    DenseMatrix::from_fn(4, 4, |i, j| Complex::new(pref * rows[i][j], z))
}

/// `(‖R₊ − I − ħ r₊‖, ‖R₋ − I − ħ r₋‖)` at `q = e^{ħ/2}`.
pub fn semiclassical_residual(hbar: f64) -> (f64, f64) {
    let q = (hbar / 2.0).exp();
    let cr = ClassicalR::new();
    let id = DenseMatrix::identity(4);
    let res = |sign| {
        let lin = &id + &cr.get(sign).scale_real(hbar);
        quantum_r(sign, q).distance(&lin).expect("4x4")
    };
    (res(Sign::Plus), res(Sign::Minus))
}

/// `(x₁₂, x₁₃, x₂₃)` on C² ⊗ C² ⊗ C².
pub fn legs<T: Real>(x: &DenseMatrix<T>) -> [DenseMatrix<T>; 3] {
    let i2 = DenseMatrix::<T>::identity(2);
    let x12 = x.kron(&i2);
    let x23 = i2.kron(x);
    let p23 = i2.kron(&swap4());
    let x13 = &(&p23 * &x12) * &p23;
    [x12, x13, x23]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YbeKind {
    Classical,
    Quantum,
}

/// Classical: `‖[r₁₂,r₁₃] + [r₁₂,r₂₃] + [r₁₃,r₂₃]‖`; quantum:
/// `‖R₁₂R₁₃R₂₃ − R₂₃R₁₃R₁₂‖`. `q` is ignored for the classical kind.
pub fn ybe_residual(kind: YbeKind, sign: Sign, q: f64) -> f64 {
    match kind {
        YbeKind::Classical => {
            let [a, b, c] = legs(ClassicalR::new().get(sign));
            let s = &(&a.commutator(&b).unwrap() + &a.commutator(&c).unwrap()) + &b.commutator(&c).unwrap();
            s.frobenius_norm()
        }
        YbeKind::Quantum => {
            let [a, b, c] = legs(&quantum_r(sign, q));
            let l = &(&a * &b) * &c;
            let r = &(&c * &b) * &a;
            l.distance(&r).unwrap()
        }
    }
}

/// `Δ(x) = x⊗1 + 1⊗x`.
pub fn coproduct(x: &DenseMatrix) -> DenseMatrix {
    let i2 = DenseMatrix::identity(2);
    &x.kron(&i2) + &i2.kron(x)
}

/// `max_x ‖[m, Δ(x)]‖` over the sl₂ basis.
pub fn invariance_residual(m: &DenseMatrix) -> f64 {
    sl2_basis()
        .iter()
        .map(|x| m.commutator(&coproduct(x)).unwrap().frobenius_norm())
        .fold(0.0, f64::max)
}

/// Adjoint invariance of `I = r₊ + σ(r₊)`.
pub fn adjoint_invariance_residual() -> f64 {
    invariance_residual(&ClassicalR::new().symmetric_part())
}

/// `δ(x) = [r₊, Δ(x)]` for traceless `x`.
pub fn cocommutator(x: &DenseMatrix) -> Result<DenseMatrix, RMatrixError> {
    let tr = x.trace().norm();
    if tr > 1e-12 * x.max_abs().max(1.0) {
        return Err(RMatrixError::NotTraceless(tr));
    }
    Ok(ClassicalR::new().plus.commutator(&coproduct(x))?)
}

/// Coefficients `c[a][b]` of `m = Σ c_ab e_a ⊗ e_b` and the residual of
/// the best fit. The basis tensors are Frobenius-orthogonal, so the
/// projection is the least-squares solution.
pub fn expand_tensor(m: &DenseMatrix) -> ([[Complex; 3]; 3], f64) {
    let basis = sl2_basis();
    let mut coef = [[c64(0.0, 0.0); 3]; 3];
    let mut fit = DenseMatrix::zeros(4, 4);
    for a in 0..3 {
        for b in 0..3 {
            let e = basis[a].kron(&basis[b]);
            let num: Complex = e.entries().iter().zip(m.entries()).map(|(u, v)| u.conj() * v).sum();
            let den: f64 = e.entries().iter().map(|z| z.norm_sqr()).sum();
            coef[a][b] = num / den;
            fit = &fit + &e.scale(coef[a][b]);
        }
    }
    (coef, fit.distance(m).unwrap())
}

/// Coefficients of a 2×2 matrix in (H, X₊, X₋) and the fit residual.
pub fn expand_sl2(m: &DenseMatrix) -> ([Complex; 3], f64) {
    let basis = sl2_basis();
    let mut coef = [c64(0.0, 0.0); 3];
    let mut fit = DenseMatrix::zeros(2, 2);
    for (a, e) in basis.iter().enumerate() {
        let num: Complex = e.entries().iter().zip(m.entries()).map(|(u, v)| u.conj() * v).sum();
        let den: f64 = e.entries().iter().map(|z| z.norm_sqr()).sum();
        coef[a] = num / den;
        fit = &fit + &e.scale(coef[a]);
    }
    (coef, fit.distance(m).unwrap())
}

/// `f[i][j][k] = f_{ij}^k` and `ft[a][b][c] = f̃^{ab}_c`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    pub f: [[[f64; 3]; 3]; 3],
    pub ft: [[[f64; 3]; 3]; 3],
}

impl StructureConstants {
    /// sl₂ brackets and the cobracket induced by `r₊`; `f̃` is the
    /// antisymmetrised tensor coefficient `(c_ab − c_ba)/2`.
    pub fn sl2() -> Result<Self, RMatrixError> {
        let basis = sl2_basis();
        let mut f = [[[0.0; 3]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let (c, res) = expand_sl2(&basis[i].commutator(&basis[j])?);
                if res > 1e-10 {
                    return Err(RMatrixError::OutsideSpan(res));
                }
                for k in 0..3 {
                    f[i][j][k] = c[k].re;
                }
            }
        }
        let mut ft = [[[0.0; 3]; 3]; 3];
        for (c, e) in basis.iter().enumerate() {
            let (coef, res) = expand_tensor(&cocommutator(e)?);
            if res > 1e-10 {
                return Err(RMatrixError::OutsideSpan(res));
            }
            for a in 0..3 {
                for b in 0..3 {
                    ft[a][b][c] = 0.5 * (coef[a][b].re - coef[b][a].re);
                }
            }
        }
        Ok(Self { f, ft })
    }

    /// Largest violation of the bialgebra cocycle condition over all free
    /// indices.
    pub fn cocycle_residual(&self) -> f64 {
        let (f, ft) = (&self.f, &self.ft);
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for a in 0..3 {
                    for b in 0..3 {
                        let mut t = 0.0;
                        for s in 0..3 {
                            t += f[i][j][s] * ft[a][b][s] - f[i][s][a] * ft[s][b][j]
                                + f[i][s][b] * ft[s][a][j]
                                - f[j][s][b] * ft[s][a][i]
                                + f[j][s][a] * ft[s][b][i];
                        }
                        worst = worst.max(t.abs());
                    }
                }
            }
        }
        worst
    }
}

pub fn verify_cocycle() -> Result<f64, RMatrixError> {
    Ok(StructureConstants::sl2()?.cocycle_residual())
}

/// Coordinates of `T = [[a, b], [c, d]]`.
pub const TT_NAMES: [&str; 4] = ["a", "b", "c", "d"];

/// Tabulated brackets `{T_u, T_v}` for u, v indexing (a, b, c, d).
/// `literal_ad` selects the printed `{a,d} = cd` instead of `bc`.
pub fn tt_table(t: &DenseMatrix, u: usize, v: usize, literal_ad: bool) -> Complex {
    let x = [t.get(0, 0), t.get(0, 1), t.get(1, 0), t.get(1, 1)];
    let (a, b, c, d) = (x[0], x[1], x[2], x[3]);
    let upper = |u: usize, v: usize| -> Complex {
        match (u, v) {
            (0, 1) => a * b * 0.5,
            (0, 2) => a * c * 0.5,
            (0, 3) => {
                if literal_ad {
                    c * d
                } else {
                    b * c
                }
            }
            (1, 2) => c64(0.0, 0.0),
            (1, 3) => b * d * 0.5,
            (2, 3) => c * d * 0.5,
            _ => unreachable!(),
        }
    };
    match u.cmp(&v) {
        std::cmp::Ordering::Equal => c64(0.0, 0.0),
        std::cmp::Ordering::Less => upper(u, v),
        std::cmp::Ordering::Greater => -upper(v, u),
    }
}

/// `{T_u, T_v}` read off `[r₊, T⊗T]`: entry (i·2+k, j·2+l) is `{T_ij, T_kl}`.
pub fn rtt_brackets(t: &DenseMatrix) -> [[Complex; 4]; 4] {
    let c = ClassicalR::new().plus.commutator(&t.kron(t)).expect("4x4");
    let mut out = [[c64(0.0, 0.0); 4]; 4];
    for (u, row) in out.iter_mut().enumerate() {
        for (v, slot) in row.iter_mut().enumerate() {
            let (i, j) = (u / 2, u % 2);
            let (k, l) = (v / 2, v % 2);
            *slot = c.get(i * 2 + k, j * 2 + l);
        }
    }
    out
}

/// Largest deviation between `[r₊, T⊗T]` and the tabulated brackets.
pub fn rtt_check(t: &DenseMatrix, literal_ad: bool) -> f64 {
    let got = rtt_brackets(t);
    let mut worst: f64 = 0.0;
    for (u, row) in got.iter().enumerate() {
        for (v, g) in row.iter().enumerate() {
            worst = worst.max((g - tt_table(t, u, v, literal_ad)).norm());
        }
    }
    worst
}
