//! Command-line front end: catalog dumps, count runs, verification
//! suites, plethystic expansion, and the rank inductions.
//!
//! Exit codes: 0 on success, 1 when a verification check fails outright,
//! 2 on usage or input errors (bad primes, parse errors, unknown cases).

mod bracket;
mod json;
mod parallel;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dtmotive::catalog;
use dtmotive::count::{class_counts, count_by_value, CountTask};
use dtmotive::dt::{induct_delta, induct_fiber, MotiveTable, TableKind};
use dtmotive::motive::MotiveClass;
use dtmotive::pleth::{pleth_exp, pleth_log};
use dtmotive::strata::{cell_specs, fiber_spec, StratumSpec};
use dtmotive::verify::{self, CheckReport, CheckStatus};
use dtmotive::{Error, Superpotential};

use parallel::RayonRunner;

#[derive(Parser)]
#[command(
    name = "dtmotive",
    about = "Exact motivic data of cubic superpotentials, cross-checked by finite-field point counts",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Args)]
struct OutputArgs {
    /// output format
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
    /// write to a file instead of stdout
    #[arg(long)]
    out: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Stratum {
    Cell1,
    Cell2,
    Cell3,
    Fiber,
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    #[value(name = "0")]
    Zero,
    #[value(name = "1")]
    Unit,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Print the closed-form classes of one case
    Catalog {
        /// which potential: quantum or weyl
        #[arg(long)]
        case: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the verification suite (symbolic identities + point counts)
    Verify {
        /// which potential: quantum, weyl, or all
        #[arg(long)]
        case: String,
        /// primes to count over (defaults to the case's standard set)
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        /// worker threads for counting (default: all cores)
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Count points of one stratum over a finite field
    Count {
        /// which potential: quantum or weyl (alternative to --potential)
        #[arg(long, conflicts_with = "potential")]
        case: Option<String>,
        /// explicit potential, e.g. "XYZ + XZY" or "XYZ - XZY - 1/3 XXX"
        #[arg(long)]
        potential: Option<String>,
        /// which stratum to count
        #[arg(long, value_enum, default_value = "fiber")]
        stratum: Stratum,
        /// matrix rank for --stratum fiber
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// the field size (a prime)
        #[arg(long)]
        q: u64,
        /// restrict to one level of the trace
        #[arg(long, value_enum, default_value = "all")]
        lambda: Level,
        /// worker threads for counting (default: all cores)
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Plethystic exponential (or logarithm) of a bracket expression
    Exp {
        /// bracket generating function, e.g. "L*Mt/(L-1)*t/(1-t)"
        #[arg(long)]
        bracket: String,
        /// truncation order in t
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// expand the plethystic logarithm instead
        #[arg(long)]
        log: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the rank inductions against a stored or user-supplied table
    Induct {
        /// which potential: quantum or weyl (alternative to --table)
        #[arg(long, conflicts_with = "table")]
        case: Option<String>,
        /// motive table JSON file (schema: {"m": 3, "entries": [{"n", "lambda", "kind", "class"}]})
        #[arg(long)]
        table: Option<String>,
        /// rank to induct
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(output: &OutputArgs, text: String) -> Result<(), Error> {
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| Error::ParseError {
            position: 0,
            message: format!("cannot write {path}: {e}"),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn case_table(case: &str) -> Result<dtmotive::dt::MotiveTable, Error> {
    match case {
        "quantum" => Ok(catalog::quantum_table()),
        "weyl" => Ok(catalog::weyl_table()),
        other => Err(Error::ParseError {
            position: 0,
            message: format!("unknown case {other:?}; expected quantum or weyl"),
        }),
    }
}

fn case_potential(case: &str) -> Result<Superpotential, Error> {
    match case {
        "quantum" => Ok(Superpotential::quantum()),
        "weyl" => Ok(Superpotential::weyl()),
        other => Err(Error::ParseError {
            position: 0,
            message: format!("unknown case {other:?}; expected quantum or weyl"),
        }),
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Catalog { case, output } => {
            let entries = catalog::catalog_entries(&case)?;
            let text = match output.format {
                Format::Json => {
                    let items: Vec<Value> = entries
                        .iter()
                        .map(|e| {
                            json!({
                                "key": e.key,
                                "label": e.label,
                                "class": json::class_value(&e.class),
                            })
                        })
                        .collect();
                    let v = json!({ "case": case, "entries": items });
                    format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
                }
                Format::Csv => {
                    let mut wtr = csv::Writer::from_writer(Vec::new());
                    wtr.write_record(["key", "label", "class"]).expect("csv");
                    for e in &entries {
                        wtr.write_record([e.key, e.label, &json::class_text(&e.class)])
                            .expect("csv");
                    }
                    String::from_utf8(wtr.into_inner().expect("csv")).expect("utf8")
                }
                Format::Plain => {
                    let mut s = String::new();
                    for e in &entries {
                        s.push_str(&format!(
                            "{:24} {}\n    {}\n",
                            e.key,
                            e.label,
                            json::class_text(&e.class)
                        ));
                    }
                    s
                }
            };
            emit(&output, text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { case, primes, jobs, output } => {
            let cases: Vec<&str> = match case.as_str() {
                "all" => vec!["quantum", "weyl"],
                other => vec![other],
            };
            let runner = RayonRunner::new(jobs);
            let mut runs: Vec<(&str, Vec<u64>, Vec<CheckReport>)> = Vec::new();
            for c in cases {
                let ps = if primes.is_empty() {
                    verify::default_primes(c).to_vec()
                } else {
                    primes.clone()
                };
                let reports = verify::suite(c, &ps, &runner)?;
                runs.push((c, ps, reports));
            }
            let fails: usize = runs
                .iter()
                .flat_map(|(_, _, rs)| rs.iter())
                .filter(|r| r.status == CheckStatus::Fail)
                .count();
            let text = match output.format {
                Format::Json => {
                    let v = if runs.len() == 1 {
                        let (c, ps, reports) = &runs[0];
                        json!({
                            "case": c,
                            "primes": ps,
                            "checks": reports.iter().map(json::report_value).collect::<Vec<_>>(),
                            "failures": fails,
                        })
                    } else {
                        json!({
                            "case": "all",
                            "runs": runs
                                .iter()
                                .map(|(c, ps, reports)| {
                                    json!({
                                        "case": c,
                                        "primes": ps,
                                        "checks": reports
                                            .iter()
                                            .map(json::report_value)
                                            .collect::<Vec<_>>(),
                                    })
                                })
                                .collect::<Vec<_>>(),
                            "failures": fails,
                        })
                    };
                    format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
                }
                Format::Csv => {
                    let mut wtr = csv::Writer::from_writer(Vec::new());
                    wtr.write_record(["check", "status", "lhs", "rhs", "location"])
                        .expect("csv");
                    for (_, _, reports) in &runs {
                        for r in reports {
                            wtr.write_record([
                                r.name.as_str(),
                                r.status.label(),
                                r.lhs.as_str(),
                                r.rhs.as_str(),
                                r.location.as_str(),
                            ])
                            .expect("csv");
                        }
                    }
                    String::from_utf8(wtr.into_inner().expect("csv")).expect("utf8")
                }
                Format::Plain => {
                    let mut s = String::new();
                    let mut total = 0usize;
                    let mut warns = 0usize;
                    for (c, ps, reports) in &runs {
                        if runs.len() > 1 {
                            s.push_str(&format!("== {c} (primes {ps:?}) ==\n"));
                        }
                        for r in reports {
                            s.push_str(&format!(
                                "[{:4}] {} ({})\n",
                                r.status.label(),
                                r.name,
                                r.location
                            ));
                            if r.status != CheckStatus::Pass {
                                s.push_str(&format!(
                                    "       lhs: {}\n       rhs: {}\n",
                                    r.lhs, r.rhs
                                ));
                            }
                        }
                        total += reports.len();
                        warns += reports.iter().filter(|r| r.status == CheckStatus::Warn).count();
                    }
                    s.push_str(&format!(
                        "{total} checks, {warns} warnings, {fails} failures\n"
                    ));
                    s
                }
            };
            emit(&output, text)?;
            Ok(if fails > 0 { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Command::Count { case, potential, stratum, n, q, lambda, jobs, output } => {
            let w = match (case, potential) {
                (Some(c), None) => case_potential(&c)?,
                (None, Some(p)) => Superpotential::parse(&p)?,
                _ => {
                    return Err(Error::ParseError {
                        position: 0,
                        message: "exactly one of --case or --potential is required".into(),
                    })
                }
            };
            let spec: StratumSpec = match stratum {
                Stratum::Fiber => fiber_spec(&w, n, 1)?,
                Stratum::Cell1 => cell_specs(&w, 1)?[0].clone(),
                Stratum::Cell2 => cell_specs(&w, 1)?[1].clone(),
                Stratum::Cell3 => cell_specs(&w, 1)?[2].clone(),
            };
            let task = CountTask::from_spec(&spec, q)?;
            let runner = RayonRunner::new(jobs);
            let counts = count_by_value(&task, &runner)?;
            let selected: Vec<(String, u64)> = match lambda {
                Level::Zero => vec![("0".into(), counts[0])],
                Level::Unit => vec![("1".into(), counts[1])],
                Level::All => counts
                    .iter()
                    .enumerate()
                    .map(|(v, c)| (v.to_string(), *c))
                    .collect(),
            };
            let per_class = match lambda {
                Level::All => Some(class_counts(&spec.name, &counts, q)?),
                _ => None,
            };
            let text = match output.format {
                Format::Json => {
                    let v = json!({
                        "stratum": json::spec_value(&spec),
                        "q": q,
                        "counts": selected
                            .iter()
                            .map(|(v, c)| json!({ "value": v, "count": c }))
                            .collect::<Vec<_>>(),
                        "classes": per_class.as_ref().map(|pc| {
                            pc.iter()
                                .map(|(cl, c)| json!({ "class": cl.name(), "count": c }))
                                .collect::<Vec<_>>()
                        }),
                    });
                    format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
                }
                Format::Csv => {
                    let mut wtr = csv::Writer::from_writer(Vec::new());
                    wtr.write_record(["value", "count"]).expect("csv");
                    for (v, c) in &selected {
                        wtr.write_record([v.as_str(), &c.to_string()]).expect("csv");
                    }
                    String::from_utf8(wtr.into_inner().expect("csv")).expect("utf8")
                }
                Format::Plain => {
                    let mut s = format!("{} over F_{q}\n", spec.name);
                    for (v, c) in &selected {
                        s.push_str(&format!("  level {v}: {c}\n"));
                    }
                    if let Some(pc) = &per_class {
                        for (cl, c) in pc {
                            s.push_str(&format!("  class {}: {c}\n", cl.name()));
                        }
                    }
                    s
                }
            };
            emit(&output, text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Exp { bracket, order, log, output } => {
            let f = bracket::parse_series(&bracket, order)?;
            let (op, g) = if log {
                ("Log", pleth_log(&f)?)
            } else {
                ("Exp", pleth_exp(&f)?)
            };
            let text = match output.format {
                Format::Json => {
                    let v = json!({
                        "input": json::series_value(&f),
                        "operation": op,
                        "output": json::series_value(&g),
                    });
                    format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
                }
                Format::Csv => {
                    let mut wtr = csv::Writer::from_writer(Vec::new());
                    wtr.write_record(["k", "coefficient"]).expect("csv");
                    for k in 0..=g.order() {
                        wtr.write_record([k.to_string(), json::ratio_text(g.coeff(k))])
                            .expect("csv");
                    }
                    String::from_utf8(wtr.into_inner().expect("csv")).expect("utf8")
                }
                Format::Plain => {
                    let mut s = format!("{op} coefficients:\n");
                    for k in 0..=g.order() {
                        s.push_str(&format!("  t^{k}: {}\n", json::ratio_text(g.coeff(k))));
                    }
                    s
                }
            };
            emit(&output, text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Induct { case, table, n, output } => {
            let (source, table): (String, MotiveTable) = match (case, table) {
                (Some(c), None) => (c.clone(), case_table(&c)?),
                (None, Some(path)) => {
                    let text = fs::read_to_string(&path).map_err(|e| Error::ParseError {
                        position: 0,
                        message: format!("cannot read {path}: {e}"),
                    })?;
                    (path, json::table_from_json(&text)?)
                }
                _ => {
                    return Err(Error::ParseError {
                        position: 0,
                        message: "exactly one of --case or --table is required".into(),
                    })
                }
            };
            let mut rows: Vec<(String, String)> = Vec::new();
            let mut rows_json = serde_json::Map::new();
            for lambda in [0u8, 1] {
                let inducted = induct_fiber(&table, n, lambda)?;
                let key = format!("fiber-level{lambda}");
                rows.push((key.clone(), json::class_text(&inducted)));
                rows_json.insert(key.clone(), json::class_value(&inducted));
                // a user table need not carry the rank being inducted
                match table.fiber(n, lambda) {
                    Ok(stored) => {
                        let matches = &inducted == stored;
                        rows.push((format!("{key}-matches-table"), matches.to_string()));
                        rows_json.insert(format!("{key}-matches-table"), json!(matches));
                    }
                    Err(_) => {
                        rows.push((format!("{key}-matches-table"), "absent".into()));
                        rows_json.insert(format!("{key}-matches-table"), json!("absent"));
                    }
                }
            }
            let delta = induct_delta(&table, n)?;
            rows.push(("delta-over-gl".into(), json::ratio_text(&delta)));
            rows_json.insert("delta-over-gl".into(), json::ratio_value(&delta));
            let twist = -((table.letters() as i64 - 1) * (n as i64) * (n as i64));
            let un = delta.mul_class(&MotiveClass::l_pow_half(twist))?;
            rows.push((format!("u{n}"), json::ratio_text(&un)));
            rows_json.insert(format!("u{n}"), json::ratio_value(&un));
            let delta_bs = table.delta(n, TableKind::Bs)?;
            rows.push(("delta-framed".into(), json::class_text(&delta_bs)));
            rows_json.insert("delta-framed".into(), json::class_value(&delta_bs));
            let text = match output.format {
                Format::Json => {
                    let v = json!({
                        "source": source,
                        "n": n,
                        "table": json::table_value(&table),
                        "results": Value::Object(rows_json),
                    });
                    format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
                }
                Format::Csv => {
                    let mut wtr = csv::Writer::from_writer(Vec::new());
                    wtr.write_record(["name", "value"]).expect("csv");
                    for (k, v) in &rows {
                        wtr.write_record([k.as_str(), v.as_str()]).expect("csv");
                    }
                    String::from_utf8(wtr.into_inner().expect("csv")).expect("utf8")
                }
                Format::Plain => {
                    let mut s = String::new();
                    for (k, v) in &rows {
                        s.push_str(&format!("{k}: {v}\n"));
                    }
                    s
                }
            };
            emit(&output, text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
