//! Command-line front end. [`run`] returns the exit code and captured output
//! so that it can be driven from tests.

mod spec_parser;

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand};
use rand::rngs::StdRng;
use rand::seq::index::sample;
use rand::SeedableRng;
use serde_json::{json, Value};

use crate::characters::{character_table, decompose, parse_rational, ClassFunction};
use crate::cyclepoly::CharPolynomial;
use crate::error::{Error, Result};
use crate::fbmodules::{
    character_at, cycle_poly, express_x_in_e, terms_at, Budget, DEFAULT_BUDGET,
};
use crate::frobenius::{frobenius_poly, frobenius_poly_stable};
use crate::partitions::Partition;
use crate::pieri::pieri_expand;
use crate::stability::{tensor_weight_check, verify_equivalence, BoundCheck};

pub use spec_parser::parse_spec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_BOUND: i32 = 3;

/// How many degrees `rankscan --seed` re-checks.
const SAMPLED_DEGREES: usize = 3;

#[derive(Debug, Parser)]
#[command(
    name = "fbstab",
    version,
    about = "Symmetric-group characters, character polynomials and stability ranks"
)]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized sub-sampling checks
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest degree m that may be enumerated
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Character table of S_m
    Chartable { m: usize },
    /// Frobenius polynomial of a partition, or of a socle given as `socle:σ`
    Frobpoly { target: String },
    /// Horizontal-strip expansion of ν up to degree m
    Pieri { nu: String, m: usize },
    /// Decompose a class function given by its values in class order
    Decompose {
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        values: String,
    },
    /// Character polynomial E_ℓ of the ℓ-cycle module
    Cyclepoly {
        ell: usize,
        /// Print X_ℓ as a polynomial in E_1, …, E_ℓ instead
        #[arg(long)]
        inverse: bool,
    },
    /// Rank scan and bound checks for a module spec
    Rankscan {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        mmax: usize,
    },
    /// Weight of V_{λ[m]} ⊗ V_{μ[m]}
    Tensorweight {
        lambda: String,
        mu: String,
        m: usize,
    },
    /// Evaluate a polynomial on every class of S_m
    Rho {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Output::ok(text)
                }
                _ => Output {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(&cli) {
        Ok(out) => out,
        Err(e) => Output {
            code: match e {
                Error::BudgetExceeded { .. } => EXIT_BUDGET,
                _ => EXIT_USAGE,
            },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn with_schema(value: Value) -> Value {
    match value {
        Value::Object(mut map) => {
            map.insert("schema".into(), json!(1));
            Value::Object(map)
        }
        other => other,
    }
}

fn render(value: Value) -> String {
    let mut s = serde_json::to_string_pretty(&with_schema(value)).expect("JSON values serialize");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> Result<Output> {
    let budget = Budget::new(cli.budget);
    match &cli.command {
        Command::Chartable { m } => {
            budget.check(*m)?;
            Ok(Output::ok(chartable(*m, cli.json)))
        }
        Command::Frobpoly { target } => {
            let (key, label, poly) = match target.strip_prefix("socle:") {
                Some(rest) => {
                    let sigma: Partition = rest.parse()?;
                    ("socle", sigma.to_string(), frobenius_poly_stable(&sigma))
                }
                None => {
                    let lambda: Partition = target.parse()?;
                    ("partition", lambda.to_string(), frobenius_poly(&lambda)?)
                }
            };
            Ok(Output::ok(if cli.json {
                render(
                    json!({ key: label, "poly": poly.to_string(), "weight": poly.weighted_degree().finite() }),
                )
            } else {
                format!("{poly}\n")
            }))
        }
        Command::Pieri { nu, m } => {
            let nu: Partition = nu.parse()?;
            let terms = pieri_expand(&nu, *m)?;
            Ok(Output::ok(if cli.json {
                render(json!({
                    "nu": nu.to_string(),
                    "m": m,
                    "terms": terms.iter().map(Partition::to_string).collect::<Vec<_>>(),
                }))
            } else {
                terms.iter().map(|p| format!("{p}\n")).collect()
            }))
        }
        Command::Decompose { m, values } => {
            budget.check(*m)?;
            let values = values
                .split(',')
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()?;
            let d = decompose(&ClassFunction::new(*m, values)?)?;
            Ok(Output::ok(if cli.json {
                render(d.to_json())
            } else {
                format!("{d}\n")
            }))
        }
        Command::Cyclepoly { ell, inverse } => {
            let poly = if *inverse {
                express_x_in_e(*ell)?.pop().expect("ell >= 1")
            } else {
                cycle_poly(*ell)?
            };
            let prefix = if *inverse { "E" } else { "X" };
            let text = poly.display_with(prefix).to_string();
            Ok(Output::ok(if cli.json {
                render(json!({ "ell": ell, "inverse": inverse, "poly": text }))
            } else {
                format!("{text}\n")
            }))
        }
        Command::Rankscan { spec, mmax } => {
            let spec = parse_spec(spec)?;
            let mut report = verify_equivalence(&spec, *mmax, &budget)?;
            if let Some(seed) = cli.seed {
                report
                    .bound_checks
                    .push(sampled_consistency(&spec, *mmax, &budget, seed)?);
            }
            let code = if report.passed() { EXIT_OK } else { EXIT_BOUND };
            let stdout = if cli.json {
                render(report.to_json())
            } else {
                report.to_string()
            };
            Ok(Output {
                code,
                stdout,
                stderr: String::new(),
            })
        }
        Command::Tensorweight { lambda, mu, m } => {
            let lambda: Partition = lambda.parse()?;
            let mu: Partition = mu.parse()?;
            let t = tensor_weight_check(&lambda, &mu, *m, &budget)?;
            let stdout = if cli.json {
                render(json!({
                    "lambda": lambda.to_string(),
                    "mu": mu.to_string(),
                    "m": m,
                    "left_weight": t.left,
                    "right_weight": t.right,
                    "product_weight": t.product,
                    "additive_range": t.additive_range,
                    "terms": t.terms.to_json(),
                    "passed": t.passed(),
                }))
            } else {
                let relation = if t.additive_range { "=" } else { "<=" };
                format!(
                    "{} {}: w = {} {relation} {} + {}\n{}\n",
                    if t.passed() { "ok  " } else { "FAIL" },
                    t.terms,
                    t.product,
                    t.left,
                    t.right,
                    if t.additive_range {
                        "additive range"
                    } else {
                        "below the additive range"
                    },
                )
            };
            Ok(Output {
                code: if t.passed() { EXIT_OK } else { EXIT_BOUND },
                stdout,
                stderr: String::new(),
            })
        }
        Command::Rho { poly, m } => {
            budget.check(*m)?;
            let p: CharPolynomial = poly.parse()?;
            let f = p.eval_rho_all(*m);
            Ok(Output::ok(if cli.json {
                render(f.to_json())
            } else {
                let mut s = String::new();
                for (t, v) in f.iter() {
                    let _ = writeln!(s, "{t}\t{v}");
                }
                s
            }))
        }
    }
}

fn chartable(m: usize, as_json: bool) -> String {
    let table = character_table(m);
    if as_json {
        return render(json!({
            "m": m,
            "classes": table.classes().iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "class_sizes": table.class_sizes().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "rows": table
                .partitions()
                .iter()
                .zip(table.rows())
                .map(|(p, r)| json!({"partition": p.to_string(), "values": r}))
                .collect::<Vec<_>>(),
        }));
    }
    let mut grid: Vec<Vec<String>> = Vec::new();
    grid.push(
        std::iter::once(String::new())
            .chain(table.classes().iter().map(|t| t.to_string()))
            .collect(),
    );
    grid.push(
        std::iter::once("size".to_string())
            .chain(table.class_sizes().iter().map(|s| s.to_string()))
            .collect(),
    );
    for (p, row) in table.partitions().iter().zip(table.rows()) {
        grid.push(
            std::iter::once(p.to_string())
                .chain(row.iter().map(|v| v.to_string()))
                .collect(),
        );
    }
    let cols = grid[0].len();
    let widths: Vec<usize> = (0..cols)
        .map(|c| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &grid {
        let mut line = format!("{:<w$}", row[0], w = widths[0]);
        for (cell, w) in row.iter().zip(&widths).skip(1) {
            let _ = write!(line, "  {cell:>w$}");
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Re-derives the terms of a few random degrees from their characters.
fn sampled_consistency(
    spec: &crate::fbmodules::FbModuleSpec,
    m_max: usize,
    budget: &Budget,
    seed: u64,
) -> Result<BoundCheck> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut ms: Vec<usize> = sample(&mut rng, m_max + 1, SAMPLED_DEGREES.min(m_max + 1)).into_vec();
    ms.sort_unstable();
    for &m in &ms {
        if decompose(&character_at(spec, m, budget)?)? != terms_at(spec, m, budget)? {
            return Ok(BoundCheck {
                name: "sampled character/terms consistency",
                passed: false,
                detail: format!("mismatch at m = {m}"),
            });
        }
    }
    Ok(BoundCheck {
        name: "sampled character/terms consistency",
        passed: true,
        detail: format!("m in {ms:?}"),
    })
}
