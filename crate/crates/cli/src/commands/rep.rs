use std::time::Instant;

use qleaf_core::numkit::{DenseMatrix, Extended, Real};
use qleaf_core::repq::{build_rep, casimir, casimir_residuals, q_trace, HilbertMeta};
use serde_json::{json, Map, Value};

use super::{emit, meta, pretty};
use crate::report::{matrix, RunReport};
use crate::{CliError, Format, Precision, RepArgs};

struct Dump {
    names: Vec<&'static str>,
    mats: Vec<DenseMatrix>,
    q: f64,
    eigenvalue: f64,
    central: f64,
}

fn collect<T: Real>(m: &HilbertMeta) -> Result<Dump, CliError> {
    let rep = build_rep::<T>(m)?;
    let q = rep.ctx.q;
    let res = casimir_residuals(&q_trace(&rep, q), &rep, q);
    let c = casimir(&rep, q)?;
    let pairs = [
        ("a", rep.a.to_f64()),
        ("a_inv", rep.a_inv.to_f64()),
        ("chi_plus", rep.chi_plus.to_f64()),
        ("chi_minus", rep.chi_minus.to_f64()),
        ("h", rep.h.to_f64()),
        ("x_plus", rep.x_plus.to_f64()),
        ("x_minus", rep.x_minus.to_f64()),
        ("h_tilde", rep.h_tilde.to_f64()),
        ("xt_plus", rep.xt_plus.to_f64()),
        ("xt_minus", rep.xt_minus.to_f64()),
        ("l_plus", rep.l_plus.to_dense().to_f64()),
        ("l_minus", rep.l_minus.to_dense().to_f64()),
        ("l", rep.l.to_dense().to_f64()),
        ("casimir", c.to_f64()),
    ];
    let (names, mats) = pairs.into_iter().unzip();
    Ok(Dump {
        names,
        mats,
        q: q.to_f64(),
        eigenvalue: c.get(0, 0).re.to_f64(),
        central: res.central.to_f64(),
    })
}

pub fn rep(args: &RepArgs, timing: bool) -> Result<bool, CliError> {
    let start = Instant::now();
    let m = meta(args.spin, args.hbar)?;
    let d = match args.precision {
        Precision::Double => collect::<f64>(&m)?,
        Precision::Extended => collect::<Extended>(&m)?,
    };
    let mut report = RunReport::new("rep", args);
    report.check("casimir.central", d.central, 1e-10);
    report.put(
        "meta",
        json!({
            "spin": m.spin.value(),
            "hbar": m.hbar,
            "dim": m.dim,
            "parity": m.parity,
            "r": m.r,
            "q": d.q,
        }),
    );
    report.put("casimir_eigenvalue", json!(d.eigenvalue));
    let mut mats = Map::new();
    for (n, mat) in d.names.iter().zip(&d.mats) {
        mats.insert((*n).to_owned(), matrix(mat));
    }
    report.put("matrices", Value::Object(mats));
    report.finish(start, timing);

    let payload = match args.format {
        Format::Json => pretty(&report)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["matrix", "row", "col", "re", "im"])?;
            for (n, mat) in d.names.iter().zip(&d.mats) {
                for i in 0..mat.rows() {
                    for j in 0..mat.cols() {
                        let z = mat.get(i, j);
                        w.serialize((n, i, j, z.re, z.im))?;
                    }
                }
            }
            String::from_utf8(w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))?)
                .map_err(anyhow::Error::from)?
        }
    };
    emit(&report, &payload, args.out.as_deref())?;
    Ok(report.passed())
}
