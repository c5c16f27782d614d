use std::collections::BTreeMap;

use clap::{Args, ValueEnum};
use gammafactor::finite::torus::character_orbits;
use gammafactor::finite::{gl2_character_table, torus_gamma, verify_finite_main, AdditiveCharacter, FiniteTorus, FiniteTorusCharacter};
use gammafactor::par::Exec;
use serde_json::{json, Value};

use crate::report::{Output, RunReport, Summary, Table};
use crate::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Gamma,
    Verify,
    Table,
}

#[derive(Debug, Args)]
pub struct FiniteArgs {
    #[arg(long)]
    q: u64,
    #[arg(long, value_enum, default_value = "gamma")]
    mode: Mode,
    /// Rank of GL(n) for gamma mode.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Cycle type of w, e.g. "2" or "1,1".
    #[arg(long)]
    cycle_type: Option<String>,
    /// Exponents of θ against the generators of the torus components.
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> CliResult<Vec<T>> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| CliError::Usage(format!("bad {what} entry {x:?}"))))
        .collect()
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn gamma_entry(torus: &FiniteTorus, th: &FiniteTorusCharacter, psi: &AdditiveCharacter) -> CliResult<Value> {
    let g = torus_gamma(torus, th, psi)?;
    let z = g.to_complex();
    Ok(json!({
        "w_cycle_type": torus.cycle_type(),
        "theta_exponents": th.exponents(),
        "regular": th.is_regular(),
        "gamma": g,
        "value": g.render(),
        "complex": [z.re, z.im],
    }))
}

pub fn run(a: &FiniteArgs, exec: Exec) -> CliResult<Output> {
    if ![3, 5, 7, 9].contains(&a.q) {
        return Err(CliError::Usage(format!("q = {} is outside {{3, 5, 7, 9}}", a.q)));
    }
    let mut params = BTreeMap::new();
    params.insert("q".into(), json!(a.q));
    params.insert("mode".into(), json!(format!("{:?}", a.mode).to_lowercase()));
    match a.mode {
        Mode::Gamma => {
            if a.n == 0 || a.n > 3 {
                return Err(CliError::Usage("n must be 1, 2 or 3".into()));
            }
            params.insert("n".into(), json!(a.n));
            let psi = AdditiveCharacter::standard(a.q)?;
            let types: Vec<Vec<usize>> = match &a.cycle_type {
                Some(s) => vec![parse_list(s, "cycle type")?],
                None => partitions(a.n, a.n),
            };
            let mut entries = Vec::new();
            for ct in &types {
                let torus = FiniteTorus::new(a.q, ct)?;
                match &a.theta {
                    Some(t) => {
                        let ex: Vec<i64> = parse_list(t, "theta")?;
                        let th = FiniteTorusCharacter::new(&torus, &ex)?;
                        entries.push(gamma_entry(&torus, &th, &psi)?);
                    }
                    None => {
                        for th in character_orbits(&torus) {
                            entries.push(gamma_entry(&torus, &th, &psi)?);
                        }
                    }
                }
            }
            if let Some(c) = &a.cycle_type {
                params.insert("cycle_type".into(), json!(c));
            }
            if let Some(t) = &a.theta {
                params.insert("theta".into(), json!(t));
            }
            let table = Table {
                header: vec!["w_cycle_type".into(), "theta".into(), "gamma".into()],
                rows: entries
                    .iter()
                    .map(|e| {
                        vec![
                            e["w_cycle_type"].to_string(),
                            e["theta_exponents"].to_string(),
                            e["value"].as_str().unwrap_or_default().to_string(),
                        ]
                    })
                    .collect(),
            };
            let n = entries.len();
            let report = RunReport::new("finite gamma", params, &["torus-gamma-sum"], json!(entries), Summary::from_checks(n, 0));
            Ok(Output { report, table: Some(table) })
        }
        Mode::Verify => {
            let r = verify_finite_main(a.q, exec)?;
            let summary = Summary::from_checks(r.checks.len(), r.failures.len());
            let results = serde_json::to_value(&r).expect("serializable");
            Ok(Output::json(RunReport::new(
                "finite verify",
                params,
                &["finite-main", "torus-gamma-sum", "group-gamma"],
                results,
                summary,
            )))
        }
        Mode::Table => {
            let t = gl2_character_table(a.q)?;
            let tab = &t.table;
            let ok = tab.check_orthogonality().is_ok();
            let mut header = vec!["irrep".to_string(), "dim".to_string()];
            header.extend(tab.classes.iter().map(|c| c.label.clone()));
            let rows = tab
                .rows
                .iter()
                .map(|r| {
                    let mut v = vec![r.label.clone(), r.dim.to_string()];
                    v.extend(r.values.iter().map(|x| x.to_string()));
                    v
                })
                .collect();
            let results = json!({ "table": tab, "orthogonality": ok });
            let report = RunReport::new("finite table", params, &["gl2-character-table"], results, Summary::from_checks(1, usize::from(!ok)));
            Ok(Output { report, table: Some(Table { header, rows }) })
        }
    }
}
