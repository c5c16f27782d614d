use std::collections::BTreeMap;
use std::str::FromStr;

use clap::{Args, Subcommand};
use gammafactor::algebra::rational::{format_rational, parse_rational, Rational};
use gammafactor::padic::fourier::{fourier_rho, same_lattice_function};
use gammafactor::padic::{
    basic_function_oracle, basic_function_satake, calibrate, gamma_rho_torus, l_rho, mellin, monomial_fiber_volume,
    oscillatory_oracle, partition_c_rho, schwartz_membership, torus_lifting_data, unramified_satake_lift,
    LatticeFunction, PAdicCharacter,
};
use gammafactor::par::Exec;
use gammafactor::WeightList;
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::report::{Output, RunReport, Summary, Table};
use crate::{CliError, CliResult, Fixture};

const ORACLE_TOLERANCE: f64 = 1e-6;
const STABILIZATION_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Args)]
pub struct PadicArgs {
    #[arg(long, default_value_t = 3)]
    p: u64,
    #[command(subcommand)]
    command: PadicCommand,
}

#[derive(Debug, Args, Clone)]
pub struct CharacterArgs {
    /// Weights as "1,0;0,1;1,1".
    #[arg(long, allow_hyphen_values = true)]
    weights: String,
    /// Unramified values z_j, one per coordinate, e.g. "1.0,0.7+0.2i".
    #[arg(long, allow_hyphen_values = true)]
    theta_unram: Option<String>,
    /// Exponents of the ramified parts against the least primitive root.
    #[arg(long, allow_hyphen_values = true)]
    theta_exp: Option<String>,
}

#[derive(Debug, Subcommand)]
enum PadicCommand {
    /// Closed-form gamma factor against the truncated oscillatory sum.
    Gamma {
        #[command(flatten)]
        chars: CharacterArgs,
        #[arg(long, default_value = "1.3", allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 8)]
        radius: u32,
        #[arg(long, default_value_t = 8)]
        level: u32,
    },
    /// The L-factor as a rational function of X = q^-s.
    #[command(name = "L")]
    L {
        #[command(flatten)]
        chars: CharacterArgs,
    },
    /// Ordered character data of the lift and the unramified Satake lift.
    Lift {
        #[command(flatten)]
        chars: CharacterArgs,
        /// Satake parameter, one complex entry per coordinate.
        #[arg(long, allow_hyphen_values = true)]
        satake: Option<String>,
    },
    /// Mellin image, Schwartz membership and the Fourier transform.
    Mellin {
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        /// Points as "1,0=2;0,-1=1/2"; defaults to C_rho.
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
        /// Treat the points as base points of a C_rho tail.
        #[arg(long)]
        tail: bool,
    },
    /// Coefficients of the basic function.
    Basic {
        #[arg(long)]
        rank: usize,
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
        #[arg(long)]
        degree: u32,
        /// Compare with the lattice-counting oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Exact volume of a monomial fiber.
    Volume {
        /// Exponents n_1, ..., n_k of the monomial.
        #[arg(long)]
        exponents: String,
        /// Exponents m_2, ..., m_k of the form on the free coordinates.
        #[arg(long, default_value = "")]
        form: String,
        #[arg(long)]
        v: u32,
        #[arg(long, default_value_t = 1)]
        unit: u64,
        #[arg(long, default_value_t = 4)]
        level: u32,
    },
    /// Re-derive the normalization constants and compare with the fixture.
    Calibrate,
}

fn usage(m: impl Into<String>) -> CliError {
    CliError::Usage(m.into())
}

fn parse_complex(s: &str) -> CliResult<Complex64> {
    Complex64::from_str(s.trim()).map_err(|_| usage(format!("bad complex number {s:?}")))
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn weights_with_grading(s: &str) -> CliResult<WeightList> {
    let w = WeightList::parse(s)?;
    w.grading()?;
    Ok(w)
}

fn characters(p: u64, a: &CharacterArgs, rank: usize) -> CliResult<Vec<PAdicCharacter>> {
    let zs: Vec<Complex64> = match &a.theta_unram {
        Some(s) => s.split(',').map(parse_complex).collect::<CliResult<_>>()?,
        None => vec![Complex64::new(1.0, 0.0); rank],
    };
    let es: Vec<i64> = match &a.theta_exp {
        Some(s) => s.split(',').map(|x| x.trim().parse().map_err(|_| usage(format!("bad exponent {x:?}")))).collect::<CliResult<_>>()?,
        None => vec![0; rank],
    };
    if zs.len() != rank || es.len() != rank {
        return Err(usage(format!("character data must have {rank} entries")));
    }
    zs.into_iter().zip(es).map(|(z, e)| PAdicCharacter::new(p, z, e).map_err(CliError::from)).collect()
}

fn char_json(c: &PAdicCharacter) -> Value {
    json!({ "z": complex_json(c.z), "modulus": c.modulus(), "conductor": c.conductor, "exponent": c.exponent })
}

fn params_from(p: u64, a: &CharacterArgs) -> BTreeMap<String, Value> {
    let mut m = BTreeMap::new();
    m.insert("p".into(), json!(p));
    m.insert("weights".into(), json!(a.weights));
    m.insert("theta_unram".into(), json!(a.theta_unram));
    m.insert("theta_exp".into(), json!(a.theta_exp));
    m
}

fn parse_points(s: &str, rank: usize) -> CliResult<Vec<(Vec<i64>, Rational)>> {
    s.split(';')
        .filter(|x| !x.trim().is_empty())
        .map(|item| {
            let (mu, c) = item.split_once('=').ok_or_else(|| usage(format!("point {item:?} lacks '='")))?;
            let mu: Vec<i64> = mu.split(',').map(|x| x.trim().parse().map_err(|_| usage(format!("bad point {item:?}")))).collect::<CliResult<_>>()?;
            if mu.len() != rank {
                return Err(usage(format!("point {item:?} is not of rank {rank}")));
            }
            Ok((mu, parse_rational(c)?))
        })
        .collect()
}

pub fn run(a: &PadicArgs, fixture: &Fixture, fixture_label: &str, exec: Exec) -> CliResult<Output> {
    let p = a.p;
    let norm = fixture.normalization();
    match &a.command {
        PadicCommand::Gamma { chars, s, radius, level } => {
            let rho = weights_with_grading(&chars.weights)?;
            let th = characters(p, chars, rho.rank())?;
            let s_val = parse_complex(s)?;
            if *radius < 3 || *level < 3 {
                return Err(usage("radius and level must be at least 3"));
            }
            let closed = gamma_rho_torus(&rho, &th, s_val, &norm)?;
            let oracle = oscillatory_oracle(&rho, &th, s_val, *radius, *level, exec)?;
            let previous = oscillatory_oracle(&rho, &th, s_val, radius - 2, level - 2, exec)?;
            let diff = (closed - oracle).norm();
            let inc = (oracle - previous).norm();
            let mut params = params_from(p, chars);
            params.insert("s".into(), json!(s));
            params.insert("radius".into(), json!(radius));
            params.insert("level".into(), json!(level));
            params.insert("fixtures".into(), json!(fixture_label));
            let results = json!({
                "closed_form": complex_json(closed),
                "oracle": complex_json(oracle),
                "difference": diff,
                "oracle_previous": complex_json(previous),
                "stabilization_increment": inc,
                "tolerance": ORACLE_TOLERANCE,
                "stabilization_tolerance": STABILIZATION_TOLERANCE,
                "characters": th.iter().map(char_json).collect::<Vec<_>>(),
            });
            let failures = usize::from(diff >= ORACLE_TOLERANCE) + usize::from(inc >= STABILIZATION_TOLERANCE);
            Ok(Output::json(RunReport::new(
                "padic gamma",
                params,
                &["tate-gamma", "oscillatory-sum", "direct-sum"],
                results,
                Summary::from_checks(2, failures),
            )))
        }
        PadicCommand::L { chars } => {
            let rho = weights_with_grading(&chars.weights)?;
            let th = characters(p, chars, rho.rank())?;
            let l = l_rho(&rho, &th)?;
            let results = json!({
                "rational_function": l.to_string(),
                "denominator": l.denominator().into_iter().map(complex_json).collect::<Vec<_>>(),
                "numerator": l.numerator().into_iter().map(complex_json).collect::<Vec<_>>(),
                "factors": l.factors.len(),
            });
            Ok(Output::json(RunReport::new("padic L", params_from(p, chars), &["L-product"], results, Summary::from_checks(0, 0))))
        }
        PadicCommand::Lift { chars, satake } => {
            let rho = weights_with_grading(&chars.weights)?;
            let th = characters(p, chars, rho.rank())?;
            let data = torus_lifting_data(&th, &rho)?;
            let mut results = json!({ "characters": data.iter().map(char_json).collect::<Vec<_>>() });
            let mut params = params_from(p, chars);
            if let Some(sv) = satake {
                let s: Vec<Complex64> = sv.split(',').map(parse_complex).collect::<CliResult<_>>()?;
                let lift = unramified_satake_lift(&s, &rho)?;
                results["satake_lift"] = json!(lift.into_iter().map(complex_json).collect::<Vec<_>>());
                params.insert("satake".into(), json!(sv));
            }
            Ok(Output::json(RunReport::new("padic lift", params, &["unramified-lift", "lift-ordering"], results, Summary::from_checks(0, 0))))
        }
        PadicCommand::Mellin { weights, points, tail } => {
            let rho = WeightList::parse(weights)?;
            rho.require_sigma()?;
            let is_c_rho = points.is_none();
            let phi = match points {
                None => LatticeFunction::c_rho(&rho),
                Some(s) => {
                    let pts = parse_points(s, rho.rank())?;
                    if *tail {
                        LatticeFunction::with_tail(&rho, pts)?
                    } else {
                        LatticeFunction::plain(rho.rank(), pts)?
                    }
                }
            };
            let m = mellin(&phi);
            let member = schwartz_membership(&m, &rho);
            let mut results = json!({ "mellin": m.to_string(), "schwartz_membership": member });
            let mut checks = 0;
            let mut failures = 0;
            if member {
                let f = fourier_rho(&phi, &rho, p, &norm)?;
                let ff = fourier_rho(&f, &rho, p, &norm)?;
                let involution = same_lattice_function(&ff, &phi);
                results["fourier"] = json!(mellin(&f).to_string());
                results["fourier_involution"] = json!(involution);
                checks += 1;
                failures += usize::from(!involution);
                if is_c_rho {
                    let fixed = same_lattice_function(&f, &phi);
                    results["fourier_fixes_c_rho"] = json!(fixed);
                    checks += 2;
                    failures += usize::from(!fixed) + usize::from(!member);
                }
            } else if is_c_rho {
                checks += 1;
                failures += 1;
            }
            let mut params = BTreeMap::new();
            params.insert("p".into(), json!(p));
            params.insert("weights".into(), json!(weights));
            params.insert("points".into(), json!(points));
            params.insert("tail".into(), json!(tail));
            params.insert("fixtures".into(), json!(fixture_label));
            Ok(Output::json(RunReport::new(
                "padic mellin",
                params,
                &["mellin", "torus-membership", "fourier-fixed-point"],
                results,
                Summary::from_checks(checks, failures),
            )))
        }
        PadicCommand::Basic { rank, weights, degree, oracle } => {
            let rho = match weights {
                Some(w) => WeightList::parse(w)?,
                None => WeightList::standard(*rank),
            };
            if rho.rank() != *rank {
                return Err(usage(format!("weights have rank {}, expected {rank}", rho.rank())));
            }
            let b = basic_function_satake(&rho, p, *degree)?;
            let mut checks = 0;
            let mut failures = 0;
            let mut results = json!({
                "coefficients": b.coefficients.iter().map(|(l, c)| json!({"lambda": l, "c": format_rational(c)})).collect::<Vec<_>>(),
                "asymmetric_degrees": b.asymmetric_degrees,
            });
            if *rank == 1 {
                let ok = b.coefficients.iter().all(|(l, c)| partition_c_rho(&rho, l).map(|k| *c == Rational::from_integer(k.into())).unwrap_or(false));
                results["matches_partition_count"] = json!(ok);
                checks += 1;
                failures += usize::from(!ok);
            }
            if *oracle {
                let o = basic_function_oracle(&rho, p, *degree)?;
                let ok = o == b.coefficients;
                results["matches_oracle"] = json!(ok);
                checks += 1;
                failures += usize::from(!ok);
            }
            let table = Table {
                header: vec!["lambda".into(), "c".into()],
                rows: b.coefficients.iter().map(|(l, c)| vec![format!("{l:?}"), format_rational(c)]).collect(),
            };
            let mut params = BTreeMap::new();
            params.insert("p".into(), json!(p));
            params.insert("rank".into(), json!(rank));
            params.insert("weights".into(), json!(weights));
            params.insert("degree".into(), json!(degree));
            params.insert("oracle".into(), json!(oracle));
            let report = RunReport::new("padic basic", params, &["crho", "hall-littlewood-satake"], results, Summary::from_checks(checks, failures));
            Ok(Output { report, table: Some(table) })
        }
        PadicCommand::Volume { exponents, form, v, unit, level } => {
            let n: Vec<u32> = exponents.split(',').map(|x| x.trim().parse().map_err(|_| usage(format!("bad exponent {x:?}")))).collect::<CliResult<_>>()?;
            let m: Vec<u32> = if form.trim().is_empty() {
                Vec::new()
            } else {
                form.split(',').map(|x| x.trim().parse().map_err(|_| usage(format!("bad form exponent {x:?}")))).collect::<CliResult<_>>()?
            };
            let vol = monomial_fiber_volume(&n, &m, p, *v, *unit, *level)?;
            let modulus = p.pow(*level + 2);
            let mut twisted = Vec::new();
            let mut failures = 0;
            for w in (2..p + 3).filter(|w| w % p != 0).take(3) {
                let u = (*unit as u128 * (w as u128).pow(n[0]) % modulus as u128) as u64;
                let other = monomial_fiber_volume(&n, &m, p, *v, u, *level)?;
                failures += usize::from(other != vol);
                twisted.push(json!({"unit": u, "volume": format_rational(&other)}));
            }
            let results = json!({ "volume": format_rational(&vol), "twisted": twisted });
            let mut params = BTreeMap::new();
            params.insert("p".into(), json!(p));
            params.insert("exponents".into(), json!(exponents));
            params.insert("form".into(), json!(form));
            params.insert("v".into(), json!(v));
            params.insert("unit".into(), json!(unit));
            params.insert("level".into(), json!(level));
            Ok(Output::json(RunReport::new("padic volume", params, &["fiber-volume", "volume-stabilization"], results, Summary::from_checks(twisted.len(), failures))))
        }
        PadicCommand::Calibrate => {
            let rho = WeightList::parse(&fixture.oracle.fourier_weights)?;
            let mut found = Vec::new();
            let mut failures = 0;
            for &q in &fixture.oracle.primes {
                let c = calibrate(q, &rho, exec)?;
                failures += usize::from(c != norm);
                found.push(json!({"p": q, "tate_eps_normalization": c.tate_eps_q_power, "fourier_shift_exponent": c.fourier_shift_exponent}));
            }
            let mut params = BTreeMap::new();
            params.insert("fixtures".into(), json!(fixture_label));
            let results = json!({ "derived": found, "fixture": {"tate_eps_normalization": norm.tate_eps_q_power, "fourier_shift_exponent": norm.fourier_shift_exponent} });
            let n = fixture.oracle.primes.len();
            Ok(Output::json(RunReport::new("padic calibrate", params, &["tate-gamma", "fourier-fixed-point"], results, Summary::from_checks(n, failures))))
        }
    }
}
