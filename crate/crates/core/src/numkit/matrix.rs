use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Complex, NumError, Real};

/// Dense row-major complex matrix.
///
/// Shape is fixed at construction. Every public constructor and product
/// rejects non-finite entries so NaN/Inf never travel silently downstream.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix<T: Real = f64> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self, NumError> {
        if data.len() != rows * cols {
            return Err(NumError::Shape {
                op: "new",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        let m = Self { rows, cols, data };
        m.check_finite("new")?;
        Ok(m)
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self, NumError> {
        let data = data.iter().map(|&x| Complex::new(T::of(x), T::zero())).collect();
        Self::new(rows, cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex::one();
        }
        m
    }

    pub fn diag(values: &[Complex<T>]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m.data[i * n + i] = *v;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        self.data[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    fn check_finite(&self, op: &'static str) -> Result<(), NumError> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(NumError::NonFinite { op })
        }
    }

    fn same_shape(&self, other: &Self, op: &'static str) -> Result<(), NumError> {
        if self.rows == other.rows && self.cols == other.cols {
            Ok(())
        } else {
            Err(NumError::Shape {
                op,
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            })
        }
    }

    /// Matrix product with ascending-index summation.
    pub fn matmul(&self, other: &Self) -> Result<Self, NumError> {
        if self.cols != other.rows {
            return Err(NumError::Shape {
                op: "matmul",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let (n, m, p) = (self.rows, self.cols, other.cols);
        let mut out = Self::zeros(n, p);
        for i in 0..n {
            for j in 0..p {
                let mut acc = Complex::<T>::zero();
                for k in 0..m {
                    acc = acc + self.data[i * m + k] * other.data[k * p + j];
                }
                out.data[i * p + j] = acc;
            }
        }
        out.check_finite("matmul")?;
        Ok(out)
    }

    /// Kronecker product: `(a ⊗ b)[i*b.rows + k, j*b.cols + l] = a[i,j] * b[k,l]`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.data[i * self.cols + j];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let r = i * other.rows + k;
                        let c = j * other.cols + l;
                        out.data[r * cols + c] = a * other.data[k * other.cols + l];
                    }
                }
            }
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, NumError> {
        self.same_shape(other, "add")?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, NumError> {
        self.same_shape(other, "sub")?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Self {
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.map(|z| Complex::new(z.re * s, z.im * s))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn trace(&self) -> Complex<T> {
        let n = self.rows.min(self.cols);
        (0..n).fold(Complex::zero(), |acc, i| acc + self.get(i, i))
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Result<Self, NumError> {
        let ab = self.matmul(other)?;
        let ba = other.matmul(self)?;
        ab.try_sub(&ba)
    }

    pub fn frobenius_norm(&self) -> T {
        let mut acc = T::zero();
        for z in &self.data {
            acc += z.re * z.re + z.im * z.im;
        }
        acc.sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .map(|z| (z.re * z.re + z.im * z.im).sqrt())
            .fold(T::zero(), |a, b| a.max(b))
    }

    /// Frobenius distance `‖self − other‖_F`.
    pub fn distance(&self, other: &Self) -> Result<T, NumError> {
        Ok(self.try_sub(other)?.frobenius_norm())
    }

    /// Inverse by Gauss–Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Self, NumError> {
        if !self.is_square() {
            return Err(NumError::Shape {
                op: "inverse",
                left: (self.rows, self.cols),
                right: (self.rows, self.cols),
            });
        }
        let n = self.rows;
        let scale = self.max_abs();
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let mut pivot = col;
            let mut best = modulus(a.get(col, col));
            for r in col + 1..n {
                let v = modulus(a.get(r, col));
                if v > best {
                    best = v;
                    pivot = r;
                }
            }
            if best <= scale * T::of(1e-14) || best.is_zero() {
                return Err(NumError::Singular { pivot: col });
            }
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a.get(col, col);
            for j in 0..n {
                a.set(col, j, a.get(col, j) / p);
                inv.set(col, j, inv.get(col, j) / p);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col);
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, a.get(r, j) - f * a.get(col, j));
                    inv.set(r, j, inv.get(r, j) - f * inv.get(col, j));
                }
            }
        }
        inv.check_finite("inverse")?;
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Rounds every entry to `f64`.
    pub fn to_f64(&self) -> DenseMatrix<f64> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|z| Complex::new(z.re.to_f64(), z.im.to_f64()))
                .collect(),
        }
    }
}

impl DenseMatrix<f64> {
    /// Lifts an `f64` matrix to any other scalar type exactly.
    pub fn lift<T: Real>(&self) -> DenseMatrix<T> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| Complex::new(T::of(z.re), T::of(z.im))).collect(),
        }
    }
}

pub(crate) fn modulus<T: Real>(z: Complex<T>) -> T {
    (z.re * z.re + z.im * z.im).sqrt()
}

// Operator forms panic on shape mismatch; use `matmul`/`try_add` when the
// shapes are not known to agree.
impl<T: Real> Mul for &DenseMatrix<T> {
    type Output = DenseMatrix<T>;
    fn mul(self, rhs: Self) -> DenseMatrix<T> {
        self.matmul(rhs).expect("matrix product")
    }
}

impl<T: Real> Add for &DenseMatrix<T> {
    type Output = DenseMatrix<T>;
    fn add(self, rhs: Self) -> DenseMatrix<T> {
        self.try_add(rhs).expect("matrix sum")
    }
}

impl<T: Real> Sub for &DenseMatrix<T> {
    type Output = DenseMatrix<T>;
    fn sub(self, rhs: Self) -> DenseMatrix<T> {
        self.try_sub(rhs).expect("matrix difference")
    }
}

impl<T: Real> Neg for &DenseMatrix<T> {
    type Output = DenseMatrix<T>;
    fn neg(self) -> DenseMatrix<T> {
        self.map(|z| -z)
    }
}

impl<T: Real> fmt::Debug for DenseMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix<{}> {}x{} [", T::NAME, self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:+.6e}{:+.6e}i ", z.re.to_f64(), z.im.to_f64())?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::c64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(rng: &mut ChaCha8Rng, r: usize, c: usize) -> DenseMatrix {
        DenseMatrix::from_fn(r, c, |_, _| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    #[test]
    fn identity_times_x() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = random(&mut rng, 2, 2);
        let y = DenseMatrix::identity(2).matmul(&x).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn unit_product() {
        let e12 = DenseMatrix::<f64>::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        let e21 = DenseMatrix::<f64>::from_real(2, 2, &[0.0, 0.0, 1.0, 0.0]).unwrap();
        let e11 = DenseMatrix::<f64>::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(e12.matmul(&e21).unwrap(), e11);
    }

    #[test]
    fn matmul_against_triple_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random(&mut rng, 3, 3);
        let b = random(&mut rng, 3, 3);
        // hand-rolled oracle on raw arrays
        let mut raw_a = [[c64(0.0, 0.0); 3]; 3];
        let mut raw_b = [[c64(0.0, 0.0); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                raw_a[i][j] = a.get(i, j);
                raw_b[i][j] = b.get(i, j);
            }
        }
        let c = a.matmul(&b).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = c64(0.0, 0.0);
                for k in 0..3 {
                    s += raw_a[i][k] * raw_b[k][j];
                }
                assert!((s - c.get(i, j)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let a = DenseMatrix::<f64>::zeros(2, 3);
        let b = DenseMatrix::<f64>::zeros(2, 3);
        assert!(matches!(a.matmul(&b), Err(NumError::Shape { .. })));
        assert!(a.try_add(&DenseMatrix::zeros(3, 2)).is_err());
    }

    #[test]
    fn non_finite_rejected() {
        let r = DenseMatrix::<f64>::from_real(1, 2, &[1.0, f64::NAN]);
        assert!(matches!(r, Err(NumError::NonFinite { .. })));
        let big = DenseMatrix::<f64>::from_real(1, 1, &[1e200]).unwrap();
        assert!(matches!(big.matmul(&big), Err(NumError::NonFinite { .. })));
    }

    #[test]
    fn kron_examples() {
        let i2 = DenseMatrix::<f64>::identity(2);
        assert_eq!(i2.kron(&i2), DenseMatrix::identity(4));
        let d = DenseMatrix::<f64>::from_real(2, 2, &[1.0, 0.0, 0.0, 2.0]).unwrap();
        let expect = DenseMatrix::diag(&[c64(1.0, 0.0), c64(1.0, 0.0), c64(2.0, 0.0), c64(2.0, 0.0)]);
        assert_eq!(d.kron(&i2), expect);
    }

    #[test]
    fn kron_mixed_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (a, b, c, d) = (
            random(&mut rng, 2, 2),
            random(&mut rng, 2, 2),
            random(&mut rng, 2, 2),
            random(&mut rng, 2, 2),
        );
        let lhs = &a.kron(&b) * &c.kron(&d);
        let rhs = (&a * &c).kron(&(&b * &d));
        assert!(lhs.distance(&rhs).unwrap() < 1e-13);
    }

    #[test]
    fn inverse_round_trip_and_singular() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random(&mut rng, 4, 4);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).distance(&DenseMatrix::identity(4)).unwrap() < 1e-12);
        let s = DenseMatrix::<f64>::from_real(2, 2, &[1.0, 2.0, 2.0, 4.0]).unwrap();
        assert!(matches!(s.inverse(), Err(NumError::Singular { .. })));
    }

    #[test]
    fn extended_matches_f64_to_rounding() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random(&mut rng, 3, 3);
        let b = random(&mut rng, 3, 3);
        let ext = a.lift::<crate::numkit::Extended>().matmul(&b.lift()).unwrap().to_f64();
        assert!(ext.distance(&(&a * &b)).unwrap() < 1e-15);
    }
}
