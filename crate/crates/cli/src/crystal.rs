use std::collections::BTreeMap;

use clap::Args;
use gammafactor::crystal::{two_by_two_identity, verify_weyl_action};
use gammafactor::par::Exec;
use serde_json::json;

use crate::report::{Output, RunReport, Summary};
use crate::{CliError, CliResult};

#[derive(Debug, Args)]
pub struct CrystalArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 25)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also check the symbolic two-by-two identity (2x2 only).
    #[arg(long)]
    symbolic: bool,
}

pub fn run(a: &CrystalArgs, exec: Exec) -> CliResult<Output> {
    if !(1..=4).contains(&a.m) || !(1..=4).contains(&a.n) {
        return Err(CliError::Usage(format!("shape {}x{} outside 1..=4", a.m, a.n)));
    }
    if a.symbolic && (a.m, a.n) != (2, 2) {
        return Err(CliError::Usage("symbolic mode needs --m 2 --n 2".into()));
    }
    let mut params = BTreeMap::new();
    params.insert("m".into(), json!(a.m));
    params.insert("n".into(), json!(a.n));
    params.insert("trials".into(), json!(a.trials));
    params.insert("symbolic".into(), json!(a.symbolic));
    let r = verify_weyl_action(a.m, a.n, a.trials, a.seed, exec)?;
    let mut failures = r.failures.len();
    let mut checks = a.trials;
    let mut results = json!({ "weyl": r });
    if a.symbolic {
        let ok = two_by_two_identity()?;
        results["two_by_two_identity"] = json!(ok);
        checks += 1;
        failures += usize::from(!ok);
    }
    let report = RunReport::new(
        "crystal",
        params,
        &["tau-form", "weyl-relations", "two-by-two"],
        results,
        Summary::from_checks(checks, failures),
    )
    .with_seed(a.seed);
    Ok(Output::json(report))
}
