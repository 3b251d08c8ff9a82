use std::time::Instant;

use qleaf_core::leaf::{jacobi_residual, poisson_table_residuals, LeafFunction};
use qleaf_core::numkit::{c64, DenseMatrix, Extended, Real};
use qleaf_core::repq::{
    build_rep, casimir_residuals, classical_limit_scan, naive_trace, q_trace, verify_chi_algebra,
    verify_classical_su2, verify_isomorphism, verify_jimbo_drinfeld, verify_ladder,
    verify_reflection, verify_rll, HilbertMeta, RepSet,
};
use qleaf_core::rmatrix::{
    adjoint_invariance_residual, rtt_check, verify_cocycle, ybe_residual, Sign, YbeKind,
};

use super::leaf::sample_points;
use super::{meta, print_json};
use crate::report::RunReport;
use crate::{CliError, Precision, Suite, VerifyArgs};

const ALGEBRA_TOL: f64 = 1e-10;

fn wants(suite: Suite, s: Suite) -> bool {
    suite == Suite::All || suite == s
}

fn poisson(m: &HilbertMeta, report: &mut RunReport) -> Result<(), CliError> {
    let pts = sample_points(m.r, 50)?;
    let mut table = 0.0f64;
    let mut jacobi = 0.0f64;
    use LeafFunction::{Alpha, Beta, Delta, Gamma};
    let triples = [(Alpha, Beta, Gamma), (Alpha, Beta, Delta), (Alpha, Gamma, Delta), (Beta, Gamma, Delta)];
    for (i, p) in pts.iter().enumerate() {
        for (_, res) in poisson_table_residuals(p)? {
            table = table.max(res);
        }
        if i % 5 == 0 {
            for &(f, g, h) in &triples {
                jacobi = jacobi.max(jacobi_residual(f, g, h, p)?);
            }
        }
    }
    report.check("poisson.table", table, 1e-9);
    report.check("poisson.jacobi", jacobi, 1e-7);
    Ok(())
}

/// Fixed SL(2,C) sample points for the rTT check.
fn sl2c_points() -> Vec<DenseMatrix> {
    (0..20)
        .map(|k| {
            let t = k as f64;
            let a = c64(1.0 + 0.4 * (1.3 * t).cos(), 0.5 * (0.7 * t).sin());
            let b = c64(0.8 * (0.9 * t + 0.2).sin(), 0.3 * (1.9 * t).cos());
            let c = c64(-0.6 * (0.4 * t).cos(), 0.7 * (1.1 * t + 0.5).sin());
            DenseMatrix::new(2, 2, vec![a, b, c, (1.0 + b * c) / a]).expect("2x2")
        })
        .collect()
}

fn rmatrix(q: f64, report: &mut RunReport) -> Result<(), CliError> {
    let mut qybe = 0.0f64;
    let mut cybe = 0.0f64;
    for s in [Sign::Plus, Sign::Minus] {
        qybe = qybe.max(ybe_residual(YbeKind::Quantum, s, q));
        cybe = cybe.max(ybe_residual(YbeKind::Classical, s, q));
    }
    report.check("rmatrix.qybe", qybe, 1e-12);
    report.check("rmatrix.cybe", cybe, 1e-13);
    report.check("rmatrix.adjoint_invariance", adjoint_invariance_residual(), 1e-13);
    report.check("rmatrix.cocycle", verify_cocycle()?, 1e-10);
    let rtt = sl2c_points().iter().map(|t| rtt_check(t, false)).fold(0.0, f64::max);
    report.check("rmatrix.rtt", rtt, 1e-11);
    Ok(())
}

fn representation<T: Real>(args: &VerifyArgs, m: &HilbertMeta, report: &mut RunReport) -> Result<(), CliError> {
    let rep: RepSet<T> = build_rep(m)?;
    let q = rep.ctx.q;
    if wants(args.suite, Suite::Algebra) {
        report.check("algebra.chi", verify_chi_algebra(&rep, q).to_f64(), ALGEBRA_TOL);
        report.check("algebra.jimbo_drinfeld", verify_jimbo_drinfeld(&rep, q).to_f64(), ALGEBRA_TOL);
        report.check("algebra.classical_su2", verify_classical_su2(&rep).to_f64(), 1e-12);
        report.check("algebra.isomorphism", verify_isomorphism(&rep).to_f64(), ALGEBRA_TOL);
        report.check("algebra.ladder", verify_ladder(&rep).to_f64(), 1e-12);
    }
    if wants(args.suite, Suite::Rll) {
        report.check("rll", verify_rll(&rep, q).to_f64(), ALGEBRA_TOL);
    }
    if wants(args.suite, Suite::Reflection) {
        report.check("reflection", verify_reflection(&rep, q)?.to_f64(), ALGEBRA_TOL);
    }
    if wants(args.suite, Suite::Casimir) {
        let c = if args.naive_trace { naive_trace(&rep) } else { q_trace(&rep, q) };
        let res = casimir_residuals(&c, &rep, q);
        report.check("casimir.eigenvalue", res.eigenvalue.to_f64(), ALGEBRA_TOL);
        report.check("casimir.central", res.central.to_f64(), ALGEBRA_TOL);
    }
    Ok(())
}

fn limit(r: f64, report: &mut RunReport) -> Result<(), CliError> {
    let rows = classical_limit_scan(r, &[8, 16, 32])?;
    for w in rows.windows(2) {
        let ratio = w[1].eps / w[0].eps;
        report.check(format!("limit.ratio_{}_{}", w[1].dim, w[0].dim), (ratio - 0.5).abs(), 0.125);
    }
    let exact = rows.iter().map(|r| r.exact_residual).fold(0.0, f64::max);
    report.check("limit.exact", exact, 1e-10);
    Ok(())
}

pub fn verify(args: &VerifyArgs, timing: bool) -> Result<bool, CliError> {
    let start = Instant::now();
    let m = meta(args.spin, args.hbar)?;
    let mut report = RunReport::new("verify", args);
    if wants(args.suite, Suite::Poisson) {
        poisson(&m, &mut report)?;
    }
    if wants(args.suite, Suite::Rmatrix) {
        rmatrix(m.context::<f64>().q, &mut report)?;
    }
    let needs_rep = [Suite::Algebra, Suite::Rll, Suite::Reflection, Suite::Casimir]
        .iter()
        .any(|&s| wants(args.suite, s));
    if needs_rep {
        match args.precision {
            Precision::Double => representation::<f64>(args, &m, &mut report)?,
            Precision::Extended => representation::<Extended>(args, &m, &mut report)?,
        }
    }
    if wants(args.suite, Suite::Limit) {
        limit(m.r, &mut report)?;
    }
    report.finish(start, timing);
    print_json(&serde_json::to_value(&report)?)?;
    Ok(report.passed())
}
