//! Symplectic leaves of SU(2)*: the spheres `tr L = 2 cosh r` inside the
//! positive unimodular hermitian 2×2 matrices.
//!
//! Points are stored in Darboux coordinates `(J, φ)` with
//! `e^{-J} = cosh r + sinh r·n₃` and `n₁ − i n₂ = (1−n₃²)^{1/2} e^{iφ}`,
//! so that `L₁₁ = e^{-J}` and `φ = arg L₁₂`.

use std::f64::consts::{PI, TAU};

use crate::numkit::{c64, Complex, DenseMatrix, NumError, Real};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LeafError {
    #[error("leaf radius must be finite and positive, got {0}")]
    Radius(f64),
    #[error("J = {j} outside the open interval (-{r}, {r})")]
    OutOfRange { j: f64, r: f64 },
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("phi chart degenerates at the {0:?} pole")]
    AtPole(Pole),
    #[error("bracket undefined on the zero-radius leaf")]
    AtOrigin,
    #[error("finite-difference stencil leaves the leaf at J = {0}")]
    Stencil(f64),
    #[error("stereographic chart {0:?} is singular at this point")]
    ChartSingular(Chart),
    #[error("dressing matrix is not in SU(2) (residual {0:.3e})")]
    NotSpecialUnitary(f64),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// `North` is `n₃ = +1` (`J = −r`), `South` is `n₃ = −1` (`J = +r`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pole {
    North,
    South,
}

impl Pole {
    pub fn j(self, r: f64) -> f64 {
        match self {
            Pole::North => -r,
            Pole::South => r,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Site {
    Regular,
    Pole(Pole),
    /// The one-point leaf `L = I` (r = 0).
    Origin,
}

/// Stereographic charts: `z = n₋/(1−n₃)` (singular at the north pole) and
/// `w = −1/z` (singular at the south pole).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    Z,
    W,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeafPoint {
    r: f64,
    j: f64,
    phi: f64,
    site: Site,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Darboux {
    pub j: f64,
    pub phi: f64,
    pub pole: Option<Pole>,
}

fn check_radius(r: f64) -> Result<(), LeafError> {
    if r.is_finite() && r > 0.0 {
        Ok(())
    } else {
        Err(LeafError::Radius(r))
    }
}

fn wrap_phi(phi: f64) -> f64 {
    let p = phi.rem_euclid(TAU);
    if p >= TAU {
        0.0
    } else {
        p
    }
}

impl LeafPoint {
    pub fn from_darboux(r: f64, j: f64, phi: f64) -> Result<Self, LeafError> {
        check_radius(r)?;
        if !j.is_finite() || !phi.is_finite() {
            return Err(LeafError::NonFinite);
        }
        if j.abs() >= r {
            return Err(LeafError::OutOfRange { j, r });
        }
        Ok(Self {
            r,
            j,
            phi: wrap_phi(phi),
            site: Site::Regular,
        })
    }

    pub fn pole(r: f64, pole: Pole) -> Result<Self, LeafError> {
        check_radius(r)?;
        Ok(Self {
            r,
            j: pole.j(r),
            phi: 0.0,
            site: Site::Pole(pole),
        })
    }

    pub fn origin() -> Self {
        Self {
            r: 0.0,
            j: 0.0,
            phi: 0.0,
            site: Site::Origin,
        }
    }

    /// Exponential chart `L = exp(x·σ)`, radius `|x|`.
    pub fn from_exp(x: [f64; 3]) -> Result<Self, LeafError> {
        if x.iter().any(|v| !v.is_finite()) {
            return Err(LeafError::NonFinite);
        }
        let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        if r == 0.0 {
            return Ok(Self::origin());
        }
        let (n1, n2, n3) = (x[0] / r, x[1] / r, x[2] / r);
        let s2 = n1 * n1 + n2 * n2;
        if s2 == 0.0 {
            let pole = if n3 > 0.0 { Pole::North } else { Pole::South };
            return Self::pole(r, pole);
        }
        // cosh r + sinh r·n₃, rewritten to avoid cancellation when n₃ → −1
        let e = if n3 >= 0.0 {
            r.cosh() + r.sinh() * n3
        } else {
            (-r).exp() + r.sinh() * s2 / (1.0 - n3)
        };
        let j = -e.ln();
        if j.abs() >= r {
            let pole = if j < 0.0 { Pole::North } else { Pole::South };
            return Self::pole(r, pole);
        }
        Self::from_darboux(r, j, (-n2).atan2(n1))
    }

    /// Stereographic chart `z = n₋/(1−n₃)`; `z = 0` is the south pole.
    pub fn from_stereo(r: f64, z: Complex) -> Result<Self, LeafError> {
        check_radius(r)?;
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(LeafError::NonFinite);
        }
        let rho2 = z.norm_sqr();
        if rho2 == 0.0 {
            return Self::pole(r, Pole::South);
        }
        let e = (r.exp() * rho2 + (-r).exp()) / (1.0 + rho2);
        Self::from_j_or_pole(r, -e.ln(), z.arg())
    }

    /// Chart `w = −1/z` around the north pole; `w = 0` is the north pole.
    pub fn from_stereo_w(r: f64, w: Complex) -> Result<Self, LeafError> {
        check_radius(r)?;
        if !w.re.is_finite() || !w.im.is_finite() {
            return Err(LeafError::NonFinite);
        }
        let w2 = w.norm_sqr();
        if w2 == 0.0 {
            return Self::pole(r, Pole::North);
        }
        let e = (r.exp() + (-r).exp() * w2) / (1.0 + w2);
        Self::from_j_or_pole(r, -e.ln(), (-w.conj()).arg())
    }

    fn from_j_or_pole(r: f64, j: f64, phi: f64) -> Result<Self, LeafError> {
        if j <= -r {
            Self::pole(r, Pole::North)
        } else if j >= r {
            Self::pole(r, Pole::South)
        } else {
            Self::from_darboux(r, j, phi)
        }
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn site(&self) -> Site {
        self.site
    }

    pub fn to_darboux(&self) -> Darboux {
        Darboux {
            j: self.j,
            phi: self.phi,
            pole: match self.site {
                Site::Pole(p) => Some(p),
                _ => None,
            },
        }
    }

    pub fn n3(&self) -> f64 {
        match self.site {
            Site::Origin => 0.0,
            Site::Pole(Pole::North) => 1.0,
            Site::Pole(Pole::South) => -1.0,
            Site::Regular => ((-self.j).exp() - self.r.cosh()) / self.r.sinh(),
        }
    }

    /// `|L₁₂| = sinh r·(1−n₃²)^{1/2}`.
    pub fn offdiag_modulus(&self) -> f64 {
        match self.site {
            Site::Regular => g_radicand(self.j, self.r).max(0.0).sqrt(),
            _ => 0.0,
        }
    }

    /// Unit-sphere direction `n`.
    pub fn direction(&self) -> [f64; 3] {
        if self.site == Site::Origin {
            return [0.0, 0.0, 0.0];
        }
        let s = self.offdiag_modulus() / self.r.sinh();
        [s * self.phi.cos(), -s * self.phi.sin(), self.n3()]
    }

    pub fn to_exp(&self) -> [f64; 3] {
        self.direction().map(|n| self.r * n)
    }

    /// `None` at the north pole.
    pub fn to_stereo(&self) -> Option<Complex> {
        match self.site {
            Site::Pole(Pole::North) | Site::Origin => None,
            Site::Pole(Pole::South) => Some(c64(0.0, 0.0)),
            Site::Regular => {
                let u = (-self.j).exp();
                let rho2 = (u - (-self.r).exp()) / (self.r.exp() - u);
                Some(Complex::from_polar(rho2.sqrt(), self.phi))
            }
        }
    }

    /// `None` at the south pole.
    pub fn to_stereo_w(&self) -> Option<Complex> {
        match self.site {
            Site::Pole(Pole::South) | Site::Origin => None,
            Site::Pole(Pole::North) => Some(c64(0.0, 0.0)),
            Site::Regular => self.to_stereo().map(|z| -z.inv()),
        }
    }

    /// `L = cosh r + sinh r·n·σ`, written in Darboux form.
    pub fn l_matrix(&self) -> DenseMatrix {
        if self.site == Site::Origin {
            return DenseMatrix::identity(2);
        }
        let alpha = (-self.j).exp();
        let beta = Complex::from_polar(self.offdiag_modulus(), self.phi);
        let delta = 2.0 * self.r.cosh() - alpha;
        DenseMatrix::new(2, 2, vec![c64(alpha, 0.0), beta, beta.conj(), c64(delta, 0.0)])
            .expect("finite leaf matrix")
    }

    fn require_regular(&self) -> Result<(), LeafError> {
        match self.site {
            Site::Regular => Ok(()),
            Site::Pole(p) => Err(LeafError::AtPole(p)),
            Site::Origin => Err(LeafError::AtOrigin),
        }
    }
}

/// `sinh²r·(1−n₃²) = (e^r − e^{−J})(e^{−J} − e^{−r})`.
fn g_radicand(j: f64, r: f64) -> f64 {
    let u = (-j).exp();
    (r.exp() - u) * (u - (-r).exp())
}

fn clamped_sqrt<T: Real>(x: T) -> T {
    if x >= T::zero() {
        x.sqrt()
    } else if x > T::of(-1e-12) {
        T::zero()
    } else {
        T::of(f64::NAN)
    }
}

/// Named leaf functions of the form `F(J)·e^{ipφ}`.
///
/// The `*Insert` variants carry ħ because their normalisation depends on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LeafFunction {
    Alpha,
    Beta,
    Gamma,
    Delta,
    A,
    ChiPlus,
    ChiMinus,
    HTilde,
    XTildePlus,
    XTildeMinus,
    HInsert { hbar: f64 },
    XPlusInsert { hbar: f64 },
    XMinusInsert { hbar: f64 },
}

impl LeafFunction {
    pub const CLASSICAL: [LeafFunction; 4] = [Self::Alpha, Self::Beta, Self::Gamma, Self::Delta];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Alpha => "alpha",
            Self::Beta => "beta",
            Self::Gamma => "gamma",
            Self::Delta => "delta",
            Self::A => "a",
            Self::ChiPlus => "chi+",
            Self::ChiMinus => "chi-",
            Self::HTilde => "H~",
            Self::XTildePlus => "X~+",
            Self::XTildeMinus => "X~-",
            Self::HInsert { .. } => "H",
            Self::XPlusInsert { .. } => "X+",
            Self::XMinusInsert { .. } => "X-",
        }
    }

    pub fn winding(&self) -> i32 {
        match self {
            Self::Beta | Self::ChiPlus | Self::XTildePlus | Self::XPlusInsert { .. } => 1,
            Self::Gamma | Self::ChiMinus | Self::XTildeMinus | Self::XMinusInsert { .. } => -1,
            _ => 0,
        }
    }

    /// `F(J)` on the closed interval `[−r, r]`; radicands within 1e-12 of
    /// zero are clamped, clearly negative ones give NaN.
    pub fn profile<T: Real>(&self, j: T, r: T) -> T {
        let two = T::of(2.0);
        let half = T::of(0.5);
        match *self {
            Self::Alpha => (-j).exp(),
            Self::Delta => two * r.cosh() - (-j).exp(),
            Self::Beta | Self::Gamma => {
                let u = (-j).exp();
                clamped_sqrt((r.exp() - u) * (u - (-r).exp()))
            }
            Self::A => (-half * j).exp(),
            Self::ChiPlus | Self::ChiMinus => {
                // e^J (2cosh r − 2cosh J) = 4 e^J sinh((r−J)/2) sinh((r+J)/2)
                let s = ((r - j) * half).sinh() * ((r + j) * half).sinh();
                clamped_sqrt(T::of(4.0) * j.exp() * s)
            }
            Self::HTilde => two * j,
            Self::XTildePlus | Self::XTildeMinus => clamped_sqrt((r - j) * (r + j)),
            Self::HInsert { hbar } => two * j / T::of(hbar),
            Self::XPlusInsert { hbar } | Self::XMinusInsert { hbar } => {
                let lambda = two * (T::of(hbar) * half).sinh();
                let s = ((r - j) * half).sinh() * ((r + j) * half).sinh();
                two * clamped_sqrt(s) / lambda
            }
        }
    }

    /// `F'(J)`, valid strictly inside the leaf.
    pub fn profile_derivative(&self, j: f64, r: f64) -> f64 {
        let f = self.profile(j, r);
        match *self {
            Self::Alpha => -(-j).exp(),
            Self::Delta => (-j).exp(),
            Self::Beta | Self::Gamma => {
                (2.0 * (-2.0 * j).exp() - 2.0 * r.cosh() * (-j).exp()) / (2.0 * f)
            }
            Self::A => -0.5 * (-0.5 * j).exp(),
            Self::ChiPlus | Self::ChiMinus => {
                (2.0 * r.cosh() * j.exp() - 2.0 * (2.0 * j).exp()) / (2.0 * f)
            }
            Self::HTilde => 2.0,
            Self::XTildePlus | Self::XTildeMinus => -j / f,
            Self::HInsert { hbar } => 2.0 / hbar,
            Self::XPlusInsert { hbar } | Self::XMinusInsert { hbar } => {
                let lambda = 2.0 * (0.5 * hbar).sinh();
                -2.0 * j.sinh() / (lambda * lambda) / (2.0 * f)
            }
        }
    }
}

/// Anything that can be evaluated and differentiated on a leaf.
pub trait LeafObservable {
    fn eval(&self, p: &LeafPoint) -> Result<Complex, LeafError>;

    /// `(∂_J f, ∂_φ f)`; central differences with step `1e-6·max(1,|J|)`.
    fn partials(&self, p: &LeafPoint) -> Result<(Complex, Complex), LeafError> {
        p.require_regular()?;
        let (r, j, phi) = (p.r, p.j, p.phi);
        let h = 1e-6 * j.abs().max(1.0);
        if j - h <= -r || j + h >= r {
            return Err(LeafError::Stencil(j));
        }
        let at = |jj: f64, pp: f64| LeafPoint {
            r,
            j: jj,
            phi: pp,
            site: Site::Regular,
        };
        let dj = (self.eval(&at(j + h, phi))? - self.eval(&at(j - h, phi))?) / (2.0 * h);
        let dphi = (self.eval(&at(j, phi + h))? - self.eval(&at(j, phi - h))?) / (2.0 * h);
        Ok((dj, dphi))
    }
}

impl LeafObservable for LeafFunction {
    fn eval(&self, p: &LeafPoint) -> Result<Complex, LeafError> {
        let f = self.profile(p.j, p.r);
        Ok(Complex::from_polar(f, self.winding() as f64 * p.phi))
    }

    fn partials(&self, p: &LeafPoint) -> Result<(Complex, Complex), LeafError> {
        p.require_regular()?;
        let phase = Complex::from_polar(1.0, self.winding() as f64 * p.phi);
        let f = self.profile(p.j, p.r);
        let df = self.profile_derivative(p.j, p.r);
        Ok((phase * df, phase * c64(0.0, self.winding() as f64 * f)))
    }
}

/// Adapts a plain function of `(J, φ)` into an observable differentiated by
/// finite differences. The stored `phi` is not wrapped, so the function must
/// be 2π-periodic itself.
pub struct Sampled<F>(pub F);

impl<F: Fn(f64, f64) -> Complex> LeafObservable for Sampled<F> {
    fn eval(&self, p: &LeafPoint) -> Result<Complex, LeafError> {
        p.require_regular()?;
        Ok((self.0)(p.j, p.phi))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// `∂_J f ∂_φ h − ∂_φ f ∂_J h`
    Realtime,
    /// `i` times the realtime bracket; reproduces the α, β, γ, δ table.
    Euclidean,
}

pub fn bracket(
    f: &dyn LeafObservable,
    h: &dyn LeafObservable,
    p: &LeafPoint,
    convention: Convention,
) -> Result<Complex, LeafError> {
    let (fj, fphi) = f.partials(p)?;
    let (hj, hphi) = h.partials(p)?;
    let rt = fj * hphi - fphi * hj;
    Ok(match convention {
        Convention::Realtime => rt,
        Convention::Euclidean => c64(0.0, 1.0) * rt,
    })
}

/// Closed form of the Minkowski bracket `{z̄, z}` (chart Z) or `{w̄, w}`
/// (chart W) at `p`.
pub fn stereo_bracket(p: &LeafPoint, chart: Chart) -> Result<Complex, LeafError> {
    let coth = 1.0 / p.r.tanh();
    let (u, sign) = match chart {
        Chart::Z => (p.to_stereo().ok_or(LeafError::ChartSingular(chart))?, 1.0),
        Chart::W => (p.to_stereo_w().ok_or(LeafError::ChartSingular(chart))?, -1.0),
    };
    if p.site == Site::Origin {
        return Err(LeafError::AtOrigin);
    }
    let u2 = u.norm_sqr();
    let v = 0.5 * (1.0 + u2).powi(2) * (sign * (u2 - 1.0) / (u2 + 1.0) + coth);
    Ok(c64(0.0, v))
}

/// The round-sphere approximation `(i/2) coth r (1+zz̄)²` valid for small r.
pub fn stereo_bracket_round(p: &LeafPoint) -> Result<Complex, LeafError> {
    let z = p.to_stereo().ok_or(LeafError::ChartSingular(Chart::Z))?;
    Ok(c64(0.0, 0.5 / p.r.tanh() * (1.0 + z.norm_sqr()).powi(2)))
}

/// Dressing action `L ↦ T⁻¹ L T` for `T ∈ SU(2)`.
pub fn dress(p: &LeafPoint, t: &DenseMatrix) -> Result<LeafPoint, LeafError> {
    if t.rows() != 2 || t.cols() != 2 {
        return Err(NumError::Shape {
            op: "dress",
            left: (2, 2),
            right: (t.rows(), t.cols()),
        }
        .into());
    }
    let td = t.adjoint();
    let unit = (&td * t).distance(&DenseMatrix::identity(2))?;
    let det = t.get(0, 0) * t.get(1, 1) - t.get(0, 1) * t.get(1, 0);
    let resid = unit.max((det - 1.0).norm());
    if resid > 1e-10 {
        return Err(LeafError::NotSpecialUnitary(resid));
    }
    if p.site == Site::Origin {
        return Ok(*p);
    }
    let l = &(&td * &p.l_matrix()) * t;
    let r = p.r;
    let l11 = l.get(0, 0).re;
    let l12 = l.get(0, 1);
    if l12.norm() <= 1e-14 * r.exp() {
        let pole = if l11 > r.cosh() { Pole::North } else { Pole::South };
        return LeafPoint::pole(r, pole);
    }
    LeafPoint::from_j_or_pole(r, -l11.ln(), l12.arg())
}

/// Poincaré 1-form `Θ = (J + c) dφ` with `c = M ħ/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaForm {
    pub m: u8,
    pub c: f64,
}

impl ThetaForm {
    pub fn new(m: u8, hbar: f64) -> Self {
        Self {
            m,
            c: m as f64 * hbar / 2.0,
        }
    }
}

/// `exp(i/ħ ∮Θ)` around an infinitesimal loop at a pole: `e^{2πi(J_pole+c)/ħ}`.
///
/// The phase is reduced to half-turns first, so integer half-turn counts
/// (up to a few ulps) give exactly ±1.
pub fn pole_loop_phase(theta: &ThetaForm, r: f64, hbar: f64, pole: Pole) -> Complex {
    let half_turns = 2.0 * (pole.j(r) + theta.c) / hbar;
    let n = half_turns.round();
    let mut f = half_turns - n;
    if f.abs() <= 8.0 * f64::EPSILON * half_turns.abs().max(1.0) {
        f = 0.0;
    }
    let sign = if (n as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let base = if f == 0.0 {
        c64(1.0, 0.0)
    } else {
        Complex::from_polar(1.0, PI * f)
    };
    base * sign
}

/// Residuals of the six α, β, γ, δ brackets (euclidean convention) against
/// their closed forms, in the order αβ, αγ, αδ, βγ, βδ, γδ.
pub fn poisson_table_residuals(p: &LeafPoint) -> Result<[(&'static str, f64); 6], LeafError> {
    use LeafFunction::{Alpha, Beta, Delta, Gamma};
    let v = |f: LeafFunction| f.eval(p);
    let (al, be, ga, de) = (v(Alpha)?, v(Beta)?, v(Gamma)?, v(Delta)?);
    let table = [
        ("{alpha,beta}", Alpha, Beta, al * be),
        ("{alpha,gamma}", Alpha, Gamma, -al * ga),
        ("{alpha,delta}", Alpha, Delta, c64(0.0, 0.0)),
        ("{beta,gamma}", Beta, Gamma, al * (al - de)),
        ("{beta,delta}", Beta, Delta, al * be),
        ("{gamma,delta}", Gamma, Delta, -al * ga),
    ];
    let mut out = [("", 0.0); 6];
    for (slot, (name, f, h, expect)) in out.iter_mut().zip(table) {
        let got = bracket(&f, &h, p, Convention::Euclidean)?;
        *slot = (name, (got - expect).norm());
    }
    Ok(out)
}

/// `|{f,{g,h}} + {g,{h,f}} + {h,{f,g}}|`; inner brackets exact, outer ones
/// by finite differences.
pub fn jacobi_residual(
    f: LeafFunction,
    g: LeafFunction,
    h: LeafFunction,
    p: &LeafPoint,
) -> Result<f64, LeafError> {
    let r = p.r;
    let inner = |a: LeafFunction, b: LeafFunction| {
        Sampled(move |j: f64, phi: f64| {
            let q = LeafPoint {
                r,
                j,
                phi,
                site: Site::Regular,
            };
            bracket(&a, &b, &q, Convention::Euclidean).unwrap_or(c64(f64::NAN, f64::NAN))
        })
    };
    let e = Convention::Euclidean;
    let s = bracket(&f, &inner(g, h), p, e)? + bracket(&g, &inner(h, f), p, e)? + bracket(&h, &inner(f, g), p, e)?;
    Ok(s.norm())
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn point() -> impl Strategy<Value = LeafPoint> {
        (0.2f64..2.5, -0.95f64..0.95, 0.0f64..TAU)
            .prop_map(|(r, t, phi)| LeafPoint::from_darboux(r, t * r, phi).unwrap())
    }

    proptest! {
        #[test]
        fn poisson_table_holds(p in point()) {
            for (name, res) in poisson_table_residuals(&p).unwrap() {
                prop_assert!(res < 1e-9, "{} {}", name, res);
            }
        }

        #[test]
        fn l11_is_alpha(p in point()) {
            prop_assert!((p.l_matrix().get(0, 0).re - (-p.j()).exp()).abs() < 1e-12);
        }

        #[test]
        fn chi_radicand_nonnegative(r in 0.05f64..4.0, t in -1.0f64..1.0) {
            let j = t * r;
            let u = j.exp();
            let rad = -1.0 + 2.0 * r.cosh() * u - u * u;
            prop_assert!(rad >= -1e-12 * r.cosh() * u);
            let f = LeafFunction::ChiPlus.profile(j, r);
            prop_assert!((f * f - rad.max(0.0)).abs() < 1e-10 * r.cosh() * u);
        }
    }
}
