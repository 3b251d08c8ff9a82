use std::time::Instant;

use qleaf_core::leaf::LeafFunction;
use qleaf_core::pathint::{
    insertion_oracle, matrix_element_lattice, relative_error, Insertion, Kernel,
    PathLatticeConfig, Prescription, Profile,
};
use serde::Serialize;
use serde_json::json;

use super::{meta, print_json, usage};
use crate::report::{matrix, RunReport};
use crate::{CliError, Insert, KernelArg, MidpointArg, PathintArgs};

#[derive(Serialize)]
struct Row {
    kernel: &'static str,
    windings: usize,
    max_rel_err: f64,
}

fn insertion(args: &PathintArgs) -> Result<Insertion, CliError> {
    let hbar = args.hbar;
    let f = match args.insert {
        Insert::A => LeafFunction::A,
        Insert::ChiPlus => LeafFunction::ChiPlus,
        Insert::ChiMinus => LeafFunction::ChiMinus,
        Insert::H => LeafFunction::HInsert { hbar },
        Insert::XPlus => LeafFunction::XPlusInsert { hbar },
        Insert::XMinus => LeafFunction::XMinusInsert { hbar },
        Insert::GaussLPlus => {
            return Ok(Insertion::new(Profile::GaussLPlus, Prescription::GaussOrdered)?);
        }
    };
    let pr = match args.midpoint {
        MidpointArg::Phi => Prescription::MidpointPhi,
        MidpointArg::J => Prescription::MidpointJ,
    };
    Ok(Insertion::new(Profile::Leaf(f), pr)?)
}

/// W, W/2, W/4, W/8 in ascending order, without repeats.
fn ladder(w: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..4).map(|k| w >> k).filter(|&x| x > 0 || w == 0).collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn kernel_name(k: Kernel) -> &'static str {
    match k {
        Kernel::Fejer => "fejer",
        Kernel::Dirichlet => "dirichlet",
    }
}

pub fn pathint(args: &PathintArgs, timing: bool) -> Result<bool, CliError> {
    let start = Instant::now();
    let m = meta(args.spin, args.hbar)?;
    let kernel = match args.kernel {
        KernelArg::Fejer => Kernel::Fejer,
        KernelArg::Dirichlet => Kernel::Dirichlet,
    };
    let cfg = PathLatticeConfig {
        nj: args.nj,
        windings: args.windings,
        kernel,
        nphi: args.nphi,
        ..PathLatticeConfig::default()
    };
    cfg.validate().map_err(|e| usage(e.to_string()))?;
    let tol = args.tol.unwrap_or(match args.insert {
        Insert::A | Insert::GaussLPlus => 2e-2,
        _ => 1e-2,
    });
    if !(tol > 0.0) {
        return Err(usage(format!("tolerance must be positive, got {tol}")));
    }

    let ins = insertion(args)?;
    let oracle = insertion_oracle(&ins, &m)?;
    let lattice = matrix_element_lattice(&ins, &m, &cfg)?;
    let err = relative_error(&lattice, &oracle);

    let mut table = Vec::new();
    let mut rates = serde_json::Map::new();
    for k in [Kernel::Fejer, Kernel::Dirichlet] {
        let ws = ladder(args.windings);
        let mut errs = Vec::new();
        for &w in &ws {
            let e = if k == kernel && w == args.windings {
                err
            } else {
                let c = PathLatticeConfig { windings: w, kernel: k, ..cfg };
                relative_error(&matrix_element_lattice(&ins, &m, &c)?, &oracle)
            };
            log::debug!("{} W={w} err={e:.3e}", kernel_name(k));
            errs.push(e);
            table.push(Row { kernel: kernel_name(k), windings: w, max_rel_err: e });
        }
        // mean error reduction per doubling of W
        if errs.len() > 1 {
            let f = (errs[0] / errs[errs.len() - 1]).powf(1.0 / (errs.len() - 1) as f64);
            rates.insert(kernel_name(k).to_owned(), json!(f));
        }
    }

    let mut report = RunReport::new("pathint", args);
    report.check(format!("pathint.{}", ins_name(args.insert)), err, tol);
    report.put("lattice", matrix(&lattice));
    report.put("oracle", matrix(&oracle));
    report.put("max_rel_err", json!(err));
    report.put("convergence", json!(table));
    report.put("improvement_per_doubling", json!(rates));
    report.finish(start, timing);
    print_json(&serde_json::to_value(&report)?)?;
    Ok(report.passed())
}

fn ins_name(i: Insert) -> String {
    serde_json::to_value(i).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
}
