use std::f64::consts::PI;

use super::NumError;

/// Gauss–Legendre nodes and weights on `[lo, hi]`.
///
/// Roots of P_n are found by Newton iteration from the Chebyshev-like
/// initial guess; weights follow from P_n'.
pub fn gauss_legendre(n: usize, lo: f64, hi: f64) -> Result<Vec<(f64, f64)>, NumError> {
    if n == 0 || !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(NumError::BadGrid { n, lo, hi });
    }
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    let mut out = vec![(0.0, 0.0); n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = (mid - half * x, half * w);
        out[n - 1 - i] = (mid + half * x, half * w);
    }
    Ok(out)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Closed trapezoid grid on `[lo, hi]` with `n` panels (n+1 points).
pub fn trapezoid(n: usize, lo: f64, hi: f64) -> Result<Vec<(f64, f64)>, NumError> {
    if n == 0 || !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(NumError::BadGrid { n, lo, hi });
    }
    let h = (hi - lo) / n as f64;
    Ok((0..=n)
        .map(|a| {
            let w = if a == 0 || a == n { 0.5 * h } else { h };
            (lo + a as f64 * h, w)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn integrate(rule: &[(f64, f64)], f: impl Fn(f64) -> f64) -> f64 {
        rule.iter().map(|&(x, w)| w * f(x)).sum()
    }

    #[test]
    fn gauss_exact_for_polynomials() {
        let rule = gauss_legendre(5, -1.0, 2.0).unwrap();
        // degree 9 is exact for 5 nodes
        let exact = (2f64.powi(10) - 1.0) / 10.0;
        assert!((integrate(&rule, |x| x.powi(9)) - exact).abs() < 1e-12);
        assert!((integrate(&rule, |_| 1.0) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn gauss_large_n_smooth_function() {
        let rule = gauss_legendre(400, 0.0, PI).unwrap();
        assert!((integrate(&rule, f64::sin) - 2.0).abs() < 1e-13);
        let nodes: Vec<f64> = rule.iter().map(|p| p.0).collect();
        assert!(nodes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn trapezoid_periodic_spectral() {
        let rule = trapezoid(16, 0.0, 2.0 * PI).unwrap();
        let v = integrate(&rule, |x| (3.0 * x).cos().powi(2));
        assert!((v - PI).abs() < 1e-13);
    }

    #[test]
    fn bad_grids_rejected() {
        assert!(gauss_legendre(0, 0.0, 1.0).is_err());
        assert!(gauss_legendre(4, 1.0, 1.0).is_err());
        assert!(trapezoid(4, 0.0, f64::NAN).is_err());
    }
}
