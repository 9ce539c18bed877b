use std::io::Write;
use std::path::Path;

use kapteyn_core::catalog::{
    catalog, eval_k2_pos, find_identity, k2_family, nielsen_rhs, xi, NielsenKind, Params,
};
use kapteyn_core::Error;
use rayon::prelude::*;
use serde_json::json;

use crate::table::{Cell, Table};
use crate::{
    exit, CheckArgs, Command, EvalArgs, Failure, Format, PqArgs, RunConfig, Source, SubcommandKind,
    SweepArgs,
};

pub(crate) fn dispatch(
    command: &Command,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    match command {
        Command::Eval(a) => eval(a, out, err),
        Command::Check(a) => check(a, out, err),
        Command::Sweep(a) => sweep(a, out),
        Command::Pq(a) => pq(a, out),
    }
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    let res = match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display()))
        }
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write output: {e}")),
    };
    res.map_err(Failure::usage)
}

fn describe(p: &Params) -> String {
    p.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn eval(args: &EvalArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = RunConfig::from_eval(args)?;
    let source = cfg.source.as_ref().expect("eval always has a source");
    let report = source.evaluate(&cfg.budget)?;
    let label = match source {
        Source::Identity(identity, p) => format!("{} [{}]", identity.id, describe(p)),
        Source::Spec(_) => "spec".to_string(),
    };
    let text = match cfg.format {
        Format::Text => format!(
            "series       {label}\nvalue        {}\nerr_estimate {:.3e}\nterms_used   {}\naccelerated  {}\nconverged    {}\n",
            crate::fmt_float(report.value),
            report.err_estimate,
            report.terms_used,
            report.accelerated,
            report.converged
        ),
        format => {
            let mut t = Table::new(["series", "value", "err_estimate", "terms_used", "accelerated", "converged"]);
            t.push(vec![
                label.into(),
                report.value.into(),
                report.err_estimate.into(),
                (report.terms_used as i64).into(),
                report.accelerated.into(),
                report.converged.into(),
            ]);
            t.render(format)
        }
    };
    emit(cfg.out.as_deref(), &text, out)?;
    if report.converged {
        Ok(exit::OK)
    } else {
        let _ = writeln!(
            err,
            "error: series did not converge within {} terms",
            report.terms_used
        );
        Ok(exit::NO_CONVERGENCE)
    }
}

fn check(args: &CheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = RunConfig::new(SubcommandKind::Check, &args.common, Format::Csv)?;
    let mut jobs = Vec::new();
    match &args.id {
        Some(id) => {
            let identity = find_identity(id)?;
            if args.params.is_empty() {
                jobs.extend(identity.default_params().into_iter().map(|p| (identity, p)));
            } else {
                jobs.push((
                    identity,
                    identity.resolve_params(&args.params.iter().cloned().collect())?,
                ));
            }
        }
        None => {
            for identity in catalog() {
                jobs.extend(identity.default_params().into_iter().map(|p| (identity, p)));
            }
        }
    }
    let results: Vec<_> = jobs
        .par_iter()
        .map(|(identity, p)| identity.check(p, &cfg.budget))
        .collect();

    let mut t = Table::new(["id", "params", "lhs", "rhs", "gap", "pass", "note"]);
    let mut failed = 0;
    for ((identity, p), res) in jobs.iter().zip(results) {
        let row: Vec<Cell> = match res {
            Ok(r) => {
                failed += usize::from(!r.pass);
                vec![
                    r.id.into(),
                    describe(&r.params).into(),
                    r.lhs.into(),
                    r.rhs.into(),
                    r.gap.into(),
                    if r.pass { "pass" } else { "fail" }.into(),
                    r.note.unwrap_or_default().into(),
                ]
            }
            Err(e) => {
                failed += 1;
                vec![
                    identity.id.into(),
                    describe(p).into(),
                    f64::NAN.into(),
                    f64::NAN.into(),
                    f64::NAN.into(),
                    "fail".into(),
                    e.to_string().into(),
                ]
            }
        };
        t.push(row);
    }
    emit(cfg.out.as_deref(), &t.render(cfg.format), out)?;
    if failed == 0 {
        Ok(exit::OK)
    } else {
        let _ = writeln!(err, "{failed} of {} checks failed", jobs.len());
        Ok(exit::USAGE)
    }
}

fn grid<T: Send>(n: usize, f: impl Fn(usize) -> Result<T, Error> + Sync) -> Result<Vec<T>, Error> {
    (0..n).into_par_iter().map(&f).collect()
}

fn sweep_table(args: &SweepArgs, cfg: &RunConfig) -> Result<Table, Failure> {
    let allowed: &[&str] = if matches!(args.figure, 1 | 2) {
        &["x"]
    } else {
        &[]
    };
    if let Some((bad, _)) = args
        .params
        .iter()
        .find(|(k, _)| !allowed.contains(&k.as_str()))
    {
        return Err(Failure::usage(format!(
            "figure {} takes no parameter `{bad}`",
            args.figure
        )));
    }
    let budget = &cfg.budget;
    let table = match args.figure {
        1 | 2 => {
            let x = args
                .params
                .iter()
                .rev()
                .find(|(k, _)| k == "x")
                .map_or(0.45, |&(_, v)| v);
            let kind = if args.figure == 1 {
                NielsenKind::Even
            } else {
                NielsenKind::Odd
            };
            // ν from −10 to 10 in steps of 0.05
            let rows = grid(401, |i| {
                let nu = (i as f64 - 200.0) / 20.0;
                Ok(vec![nu.into(), nielsen_rhs(kind, nu, x, budget)?.into()])
            })?;
            Table {
                header: vec!["nu".into(), "value".into()],
                rows,
            }
        }
        3 => {
            // p from 1 to 6 in steps of 0.02
            let rows = grid(251, |i| {
                let p = (i + 50) as f64 / 50.0;
                let mut row = vec![Cell::Float(p)];
                for k in 2..=5 {
                    row.push(xi(k, p)?.into());
                }
                Ok(row)
            })?;
            Table {
                header: ["p", "xi2", "xi3", "xi4", "xi5"].map(String::from).to_vec(),
                rows,
            }
        }
        4 => {
            k2_family(4)?;
            // z from 0 to 0.49 in steps of 0.005
            let rows = grid(99, |i| {
                let z = i as f64 / 200.0;
                let mut row = vec![Cell::Float(z)];
                for q in 1..=4 {
                    row.push(eval_k2_pos(q, z)?.into());
                }
                Ok(row)
            })?;
            Table {
                header: ["z", "q1", "q2", "q3", "q4"].map(String::from).to_vec(),
                rows,
            }
        }
        f => {
            return Err(Failure::usage(format!(
                "unknown figure {f}, expected 1, 2, 3 or 4"
            )))
        }
    };
    Ok(table)
}

fn sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = RunConfig::new(SubcommandKind::Sweep, &args.common, Format::Csv)?;
    let table = sweep_table(args, &cfg)?;
    emit(cfg.out.as_deref(), &table.render(cfg.format), out)?;
    Ok(exit::OK)
}

fn pq(args: &PqArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = RunConfig::new(SubcommandKind::Pq, &args.common, Format::Text)?;
    if !(1..=64).contains(&args.q) {
        return Err(Failure::usage(format!(
            "--q must lie in 1..=64, got {}",
            args.q
        )));
    }
    let q = args.q as u32;
    let fam = k2_family(q)?;
    let poly = fam.numerator().expect("q >= 1 has a numerator");
    let coeffs: Vec<String> = poly.coeffs().iter().map(ToString::to_string).collect();
    let exponent = fam.radical_exponent().to_string();
    let text = match cfg.format {
        Format::Text => format!(
            "P_{q} = {}\nexponent = {exponent}\nK2(z, {q}) = {}\n",
            coeffs.join(", "),
            fam.symbolic()
        ),
        Format::Json => {
            let v = json!({
                "q": q,
                "coefficients": coeffs,
                "exponent": exponent,
                "expression": fam.symbolic().to_string(),
            });
            serde_json::to_string_pretty(&v).expect("plain values serialize") + "\n"
        }
        Format::Csv => {
            let mut t = Table::new(["power", "coefficient"]);
            for (i, c) in coeffs.into_iter().enumerate() {
                t.push(vec![(i as i64).into(), c.into()]);
            }
            t.to_csv()
        }
    };
    emit(cfg.out.as_deref(), &text, out)?;
    Ok(exit::OK)
}
