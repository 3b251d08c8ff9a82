//! Sliced phase-space path integral on a quantized leaf.
//!
//! Intermediate angles are integrated over the covering line, which forces
//! every slice onto the same J; what remains per matrix element is one J
//! integral (Gauss–Legendre), a truncated winding sum (Dirichlet or Fejér
//! weights) and two angular overlaps against the Fourier modes
//! `e^{ikφ}`, `k = m + M/2` (trapezoid on a uniform grid).

use std::f64::consts::TAU;

use rayon::prelude::*;

use crate::leaf::{pole_loop_phase, LeafFunction, Pole, ThetaForm};
use crate::numkit::{c64, gauss_legendre, trapezoid, Complex, DenseMatrix, NumError};
use crate::repq::{build_rep, weyl_quantize, HilbertMeta, RepqError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PathError {
    #[error("invalid lattice configuration: {0}")]
    Config(String),
    #[error("quadrature error estimate {estimate:.3e} exceeds tolerance {tolerance:.3e}")]
    ConfigTooCoarse { estimate: f64, tolerance: f64 },
    #[error("prescription {0:?} does not apply to this integrand")]
    Prescription(Prescription),
    #[error("winding {0} outside [-1, 1]")]
    Winding(i32),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Repq(#[from] RepqError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    Dirichlet,
    Fejer,
}

impl Kernel {
    /// Weight of winding pair ±n, `1 ≤ n ≤ W`.
    fn weight(self, n: usize, w: usize) -> f64 {
        match self {
            Kernel::Dirichlet => 1.0,
            Kernel::Fejer => 1.0 - n as f64 / (w as f64 + 1.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathLatticeConfig {
    /// time slices P
    pub slices: usize,
    /// J quadrature nodes
    pub nj: usize,
    /// windings summed over n ∈ [−W, W]
    pub windings: usize,
    pub kernel: Kernel,
    /// angular grid panels
    pub nphi: usize,
    /// if set, fail when the self-estimated quadrature error exceeds it
    pub tolerance: Option<f64>,
}

impl Default for PathLatticeConfig {
    /// The calibrated configuration.
    fn default() -> Self {
        Self {
            slices: 1,
            nj: 2000,
            windings: 200,
            kernel: Kernel::Fejer,
            nphi: 512,
            tolerance: None,
        }
    }
}

impl PathLatticeConfig {
    pub fn validate(&self) -> Result<(), PathError> {
        if self.slices == 0 {
            return Err(PathError::Config("slices must be >= 1".into()));
        }
        if self.nj < 8 {
            return Err(PathError::Config(format!("nj = {} < 8", self.nj)));
        }
        if self.nphi == 0 {
            return Err(PathError::Config("nphi must be >= 1".into()));
        }
        if let Some(t) = self.tolerance {
            if !(t > 0.0) {
                return Err(PathError::Config(format!("tolerance {t} must be positive")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prescription {
    /// `F(J_i) e^{ip(φ_i + φ_{i−1})/2}`
    MidpointPhi,
    /// `F((J_i + J_{i−1})/2) e^{ipφ_i}`
    MidpointJ,
    /// two-J integrand evaluated at `(J_{i−1}, J_i)`
    GaussOrdered,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Profile {
    Leaf(LeafFunction),
    /// `e^{−J_i/2}(−1 + 2cosh r e^{(J_i+J_{i−1})/2} − e^{J_i+J_{i−1}})^{1/2} e^{iφ}`,
    /// the off-diagonal entry of L⁺ split across one time step.
    GaussLPlus,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Insertion {
    pub profile: Profile,
    pub prescription: Prescription,
}

impl Insertion {
    pub fn new(profile: Profile, prescription: Prescription) -> Result<Self, PathError> {
        let ok = matches!(
            (profile, prescription),
            (Profile::Leaf(_), Prescription::MidpointPhi | Prescription::MidpointJ)
                | (Profile::GaussLPlus, Prescription::GaussOrdered)
        );
        if !ok {
            return Err(PathError::Prescription(prescription));
        }
        Ok(Self { profile, prescription })
    }

    pub fn winding(&self) -> i32 {
        match self.profile {
            Profile::Leaf(f) => f.winding(),
            Profile::GaussLPlus => 1,
        }
    }
}

fn gauss_split(jprev: f64, jnext: f64, r: f64) -> f64 {
    let s = 0.5 * (jprev + jnext);
    // e^{s}(2cosh r − 2cosh s) in factored form
    let rad = 4.0 * s.exp() * (0.5 * (r - s)).sinh() * (0.5 * (r + s)).sinh();
    (-0.5 * jnext).exp() * rad.max(0.0).sqrt()
}

/// One-slice integrand in collapsed form: `F_eff(J)` on `[lo, hi]` with the
/// winding phase evaluated at `θ + s_out` and the outgoing/incoming angular
/// overlaps shifted by `s_out`, `s_in`.
struct Collapsed<F> {
    eff: F,
    lo: f64,
    hi: f64,
    s_out: f64,
    s_in: f64,
}

/// Sum over quadrature nodes; per-node work runs in parallel and is reduced
/// in node order.
fn evaluate<F: Fn(f64) -> Complex + Sync>(
    c: &Collapsed<F>,
    meta: &HilbertMeta,
    cfg: &PathLatticeConfig,
    modes: &[i64],
    nj: usize,
) -> Result<DenseMatrix, PathError> {
    let hbar = meta.hbar;
    let shift = meta.parity as f64 * hbar / 2.0;
    let nodes = gauss_legendre(nj, c.lo, c.hi)?;
    let grid = trapezoid(cfg.nphi, 0.0, TAU)?;
    let w = cfg.windings;
    let nm = modes.len();
    let overlap = |y: f64| -> Complex {
        grid.iter().map(|&(phi, wt)| Complex::from_polar(wt, y * phi)).sum()
    };
    let per_node: Vec<Vec<Complex>> = nodes
        .par_iter()
        .map(|&(j, wj)| {
            let theta = (j + shift) / hbar;
            let th_out = theta + c.s_out;
            let th_in = theta + c.s_in;
            let mut s = 1.0;
            for n in 1..=w {
                s += 2.0 * cfg.kernel.weight(n, w) * (TAU * n as f64 * th_out).cos();
            }
            let pref = (c.eff)(j) * (wj * s);
            let b_out: Vec<Complex> = modes.iter().map(|&k| overlap(th_out - k as f64)).collect();
            let b_in: Vec<Complex> = modes.iter().map(|&k| overlap(th_in - k as f64)).collect();
            let mut out = Vec::with_capacity(nm * nm);
            for bo in &b_out {
                for bi in &b_in {
                    out.push(pref * bo * bi.conj());
                }
            }
            out
        })
        .collect();
    let norm = 1.0 / (TAU * TAU * hbar);
    let mut acc = vec![c64(0.0, 0.0); nm * nm];
    for contrib in &per_node {
        for (a, v) in acc.iter_mut().zip(contrib) {
            *a += v;
        }
    }
    Ok(DenseMatrix::new(nm, nm, acc.into_iter().map(|z| z * norm).collect())?)
}

fn collapse_insertion(
    ins: &Insertion,
    meta: &HilbertMeta,
) -> Result<Collapsed<Box<dyn Fn(f64) -> Complex + Sync>>, PathError> {
    let p = ins.winding();
    if p.abs() > 1 {
        return Err(PathError::Winding(p));
    }
    let (r, hbar) = (meta.r, meta.hbar);
    let pf = p as f64;
    // J and J + pħ must both lie on the leaf for the J-shifted forms
    let (lo, hi) = ((-r).max(-r - pf * hbar), r.min(r - pf * hbar));
    Ok(match (ins.profile, ins.prescription) {
        (Profile::Leaf(f), Prescription::MidpointPhi) => Collapsed {
            eff: Box::new(move |j| c64(f.profile(j, r), 0.0)),
            lo: -r,
            hi: r,
            s_out: pf / 2.0,
            s_in: -pf / 2.0,
        },
        (Profile::Leaf(f), Prescription::MidpointJ) => Collapsed {
            eff: Box::new(move |j| c64(f.profile(j + pf * hbar / 2.0, r), 0.0)),
            lo,
            hi,
            s_out: pf,
            s_in: 0.0,
        },
        (Profile::GaussLPlus, Prescription::GaussOrdered) => Collapsed {
            eff: Box::new(move |j| c64(gauss_split(j, j + hbar, r), 0.0)),
            lo,
            hi,
            s_out: 1.0,
            s_in: 0.0,
        },
        _ => return Err(PathError::Prescription(ins.prescription)),
    })
}

fn with_estimate<F: Fn(f64) -> Complex + Sync>(
    c: &Collapsed<F>,
    meta: &HilbertMeta,
    cfg: &PathLatticeConfig,
    modes: &[i64],
) -> Result<DenseMatrix, PathError> {
    cfg.validate()?;
    let m = evaluate(c, meta, cfg, modes, cfg.nj)?;
    if let Some(tol) = cfg.tolerance {
        let coarse = evaluate(c, meta, cfg, modes, 3 * cfg.nj / 4)?;
        let estimate = relative_error(&coarse, &m);
        if estimate > tol {
            return Err(PathError::ConfigTooCoarse {
                estimate,
                tolerance: tol,
            });
        }
    }
    Ok(m)
}

/// Single-slice insertion (H = 0) projected on the given Fourier modes.
pub fn matrix_element_modes(
    ins: &Insertion,
    meta: &HilbertMeta,
    cfg: &PathLatticeConfig,
    modes: &[i64],
) -> Result<DenseMatrix, PathError> {
    let c = collapse_insertion(ins, meta)?;
    with_estimate(&c, meta, cfg, modes)
}

/// Single-slice insertion on the N surviving states `k = m + M/2`.
pub fn matrix_element_lattice(
    ins: &Insertion,
    meta: &HilbertMeta,
    cfg: &PathLatticeConfig,
) -> Result<DenseMatrix, PathError> {
    matrix_element_modes(ins, meta, cfg, &meta.momenta())
}

/// What the lattice should converge to: the Weyl-quantized leaf function,
/// or `a·χ₊` for the split L⁺ integrand.
pub fn insertion_oracle(ins: &Insertion, meta: &HilbertMeta) -> Result<DenseMatrix, PathError> {
    Ok(match ins.profile {
        Profile::Leaf(f) => weyl_quantize(|j: f64| f.profile(j, meta.r), f.winding(), meta)?,
        Profile::GaussLPlus => {
            let rep = build_rep::<f64>(meta)?;
            &rep.a * &rep.chi_plus
        }
    })
}

/// `diag(e^{−(i/ħ) H(J_m) T})`.
pub fn propagator_exact(hfun: impl Fn(f64) -> f64, t: f64, meta: &HilbertMeta) -> DenseMatrix {
    let v: Vec<Complex> = meta
        .j_lattice()
        .iter()
        .map(|&j| Complex::from_polar(1.0, -hfun(j) * t / meta.hbar))
        .collect();
    DenseMatrix::diag(&v)
}

/// P-slice propagator on the given modes. The slices collapse onto a single
/// J, so the action accumulates `Σ_i H(J) T/P`.
pub fn propagator_modes(
    hfun: &(dyn Fn(f64) -> f64 + Sync),
    t: f64,
    meta: &HilbertMeta,
    cfg: &PathLatticeConfig,
    modes: &[i64],
) -> Result<DenseMatrix, PathError> {
    let p = cfg.slices;
    let dt = t / p as f64;
    let hbar = meta.hbar;
    let c = Collapsed {
        eff: move |j: f64| {
            let action: f64 = (0..p).map(|_| hfun(j) * dt).sum();
            Complex::from_polar(1.0, -action / hbar)
        },
        lo: -meta.r,
        hi: meta.r,
        s_out: 0.0,
        s_in: 0.0,
    };
    with_estimate(&c, meta, cfg, modes)
}

pub fn propagator_lattice(
    hfun: &(dyn Fn(f64) -> f64 + Sync),
    t: f64,
    meta: &HilbertMeta,
    cfg: &PathLatticeConfig,
) -> Result<DenseMatrix, PathError> {
    propagator_modes(hfun, t, meta, cfg, &meta.momenta())
}

/// Largest entrywise relative deviation; entries of `oracle` below
/// `1e-12·max|oracle|` are compared against `max|oracle|` instead.
pub fn relative_error(lattice: &DenseMatrix, oracle: &DenseMatrix) -> f64 {
    let scale = oracle.max_abs().max(f64::MIN_POSITIVE);
    lattice
        .entries()
        .iter()
        .zip(oracle.entries())
        .map(|(l, o)| {
            let d = (l - o).norm();
            if o.norm() > 1e-12 * scale {
                d / o.norm()
            } else {
                d / scale
            }
        })
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub r: f64,
    /// `r = Nħ/2` for a positive integer N
    pub admissible: bool,
    pub dim: Option<u64>,
    pub parity: Option<u8>,
    /// pole loop phase with `c = Mħ/2` (−1 on admissible radii)
    pub phase: Complex,
    /// the alternative `+1` condition with `c = 0`
    pub afs_admissible: bool,
    pub afs_phase: Complex,
}

/// Radius quantization verdicts: the `−1` pole-loop condition with parity
/// chosen from N, next to the `+1` condition with `c = 0`.
pub fn quantization_scan(hbar: f64, r_grid: &[f64]) -> Vec<ScanRow> {
    r_grid
        .iter()
        .map(|&r| {
            let x = 2.0 * r / hbar;
            let n = x.round();
            let integral = n >= 1.0 && (x - n).abs() <= 1e-9 * x.abs().max(1.0);
            let (dim, parity) = if integral {
                let n = n as u64;
                (Some(n), Some(((n + 1) % 2) as u8))
            } else {
                (None, None)
            };
            let theta = ThetaForm::new(parity.unwrap_or(0), hbar);
            let phase = pole_loop_phase(&theta, r, hbar, Pole::North);
            let afs_phase = pole_loop_phase(&ThetaForm::new(0, hbar), r, hbar, Pole::North);
            ScanRow {
                r,
                admissible: integral && phase == c64(-1.0, 0.0),
                dim,
                parity,
                phase,
                afs_admissible: r > 0.0 && afs_phase == c64(1.0, 0.0),
                afs_phase,
            }
        })
        .collect()
}
