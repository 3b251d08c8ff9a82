use std::f64::consts::PI;
use std::time::Instant;

use qleaf_core::leaf::{poisson_table_residuals, stereo_bracket, Chart, LeafPoint};
use serde::Serialize;
use serde_json::json;

use super::{emit, pretty, usage};
use crate::report::RunReport;
use crate::{CliError, Format, LeafArgs};

/// Equator point along x1, then a Fibonacci lattice on the sphere.
pub(crate) fn sample_points(r: f64, n: usize) -> Result<Vec<LeafPoint>, CliError> {
    let golden = PI * (3.0 - 5f64.sqrt());
    let mut pts = Vec::with_capacity(n);
    if n > 0 {
        pts.push(LeafPoint::from_exp([r, 0.0, 0.0])?);
    }
    let rest = n.saturating_sub(1);
    for i in 0..rest {
        let n3 = 1.0 - (2 * i + 1) as f64 / rest as f64;
        let s = (1.0 - n3 * n3).sqrt();
        let t = golden * i as f64;
        pts.push(LeafPoint::from_exp([r * s * t.cos(), r * s * t.sin(), r * n3])?);
    }
    Ok(pts)
}

#[derive(Serialize)]
struct Row {
    j: f64,
    phi: f64,
    x1: f64,
    x2: f64,
    x3: f64,
    n3: f64,
    z_re: Option<f64>,
    z_im: Option<f64>,
    poisson_residual: f64,
    stereo_bracket_re: Option<f64>,
    stereo_bracket_im: Option<f64>,
}

fn row(p: &LeafPoint) -> Result<Row, CliError> {
    let x = p.to_exp();
    let z = p.to_stereo();
    let sb = stereo_bracket(p, Chart::Z).ok();
    let residual = poisson_table_residuals(p)?.iter().map(|(_, v)| *v).fold(0.0, f64::max);
    Ok(Row {
        j: p.j(),
        phi: p.phi(),
        x1: x[0],
        x2: x[1],
        x3: x[2],
        n3: p.n3(),
        z_re: z.map(|z| z.re),
        z_im: z.map(|z| z.im),
        poisson_residual: residual,
        stereo_bracket_re: sb.map(|b| b.re),
        stereo_bracket_im: sb.map(|b| b.im),
    })
}

pub fn leaf(args: &LeafArgs, timing: bool) -> Result<bool, CliError> {
    let start = Instant::now();
    if !(args.radius > 0.0 && args.radius.is_finite()) {
        return Err(usage(format!("radius must be positive, got {}", args.radius)));
    }
    if args.samples == 0 {
        return Err(usage("samples must be at least 1"));
    }
    let rows = sample_points(args.radius, args.samples)?
        .iter()
        .map(row)
        .collect::<Result<Vec<_>, _>>()?;
    let mut report = RunReport::new("leaf", args);
    let worst = rows.iter().map(|r| r.poisson_residual).fold(0.0, f64::max);
    report.check("leaf.poisson_table", worst, 1e-9);
    report.put("samples", json!(rows));
    report.finish(start, timing);

    let payload = match args.format {
        Format::Json => pretty(&report)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &rows {
                w.serialize(r)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))?)
                .map_err(anyhow::Error::from)?
        }
    };
    emit(&report, &payload, args.out.as_deref())?;
    Ok(report.passed())
}
