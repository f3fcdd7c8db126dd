use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use numerositas::euclid_field::{parse_value, st_quotient, Value};
use numerositas::label_net::{count_brute, BruteConfig};
use numerositas::measure::{mu, mu_plurinterval, PlurInterval};
use numerositas::numerosity::{count_form, num, verify};
use numerositas::ordinal::eval;
use numerositas::setlang::{parse_ordinal, parse_set};
use numerositas::Error;

#[derive(Parser)]
#[command(name = "numerositas", version, about = "Exact numerosities, ordinals and counting measures")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Unit {
    Alpha,
    Beta,
}

#[derive(Subcommand)]
enum Command {
    /// Numerosity of a set, with the level from which its count form holds.
    Num { expr: String },
    /// Brute-force count of a set at one level.
    Count {
        #[arg(long)]
        level: u32,
        expr: String,
    },
    /// Compare the count form against brute-force counts.
    Verify {
        #[arg(long, default_value_t = 3)]
        max_level: u32,
        expr: String,
    },
    /// Cantor normal form of an ordinal expression.
    Ord {
        #[arg(long)]
        theta_base: Option<u32>,
        expr: String,
    },
    /// Numerosity measure of a set or plurinterval.
    Measure {
        #[arg(long, value_enum)]
        unit: Unit,
        expr: String,
    },
    /// Standard part of a value such as "(2*a+1)/(a+2)".
    St { expr: String },
}

/// Text lines and the matching JSON object.
struct Output {
    text: String,
    json: Json,
}

fn run(command: Command) -> Result<Output, Error> {
    match command {
        Command::Num { expr } => {
            let set = parse_set(&expr)?;
            if set.mentions_reals() {
                let value = num(&set)?;
                return Ok(Output {
                    text: format!("{value}\n"),
                    json: json!({ "value": value.to_string(), "threshold": null }),
                });
            }
            let cf = count_form(&set)?;
            Ok(Output {
                text: format!("{}\nthreshold {}\n", cf.form, cf.threshold),
                json: json!({ "value": cf.form.to_string(), "threshold": cf.threshold }),
            })
        }
        Command::Count { level, expr } => {
            let set = parse_set(&expr)?;
            let count = count_brute(&set, level, &BruteConfig::from_env())?;
            Ok(Output {
                text: format!("{count}\n"),
                json: json!({ "level": level, "value": count.to_string() }),
            })
        }
        Command::Verify { max_level, expr } => {
            let set = parse_set(&expr)?;
            let report = verify(&set, max_level, &BruteConfig::from_env())?;
            Ok(Output {
                text: report.to_text(),
                json: serde_json::to_value(&report).expect("report serializes"),
            })
        }
        Command::Ord { theta_base, expr } => {
            let ordinal = eval(&parse_ordinal(&expr)?)?;
            let mut text = format!("{ordinal}\n");
            let mut out = json!({ "value": ordinal.to_string() });
            if let Some(j) = theta_base {
                let form = ordinal.to_theta_base(j)?;
                text.push_str(&format!("{form}\n"));
                out["theta_base"] = json!({
                    "j": j,
                    "text": form.to_string(),
                    "digits": form
                        .digits
                        .iter()
                        .map(|(k, b)| json!({ "k": k.to_string(), "digit": b.to_string() }))
                        .collect::<Vec<_>>(),
                });
            }
            Ok(Output { text, json: out })
        }
        Command::Measure { unit, expr } => {
            let (unit_value, unit_name) = match unit {
                Unit::Alpha => (Value::alpha(), "alpha"),
                Unit::Beta => (Value::beta(), "beta"),
            };
            let measure = match parse_set(&expr) {
                Ok(set) => mu(&set, &unit_value)?,
                Err(err) => match PlurInterval::parse(&expr) {
                    Ok(p) => mu_plurinterval(&p, &unit_value)?,
                    Err(_) => return Err(err.into()),
                },
            };
            Ok(Output {
                text: format!("{measure}\n"),
                json: json!({ "measure": measure.to_string(), "unit": unit_name }),
            })
        }
        Command::St { expr } => {
            let q = parse_value(&expr)?;
            let part = st_quotient(&q);
            Ok(Output {
                text: format!("{part}\n"),
                json: json!({ "value": part.to_string(), "input": q.to_string() }),
            })
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Syntax(_) => 1,
        Error::ComplexityExceeded { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            // usage mistakes count as syntax errors
            return if err.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let written = match cli.format {
                Format::Text => stdout.write_all(out.text.as_bytes()),
                Format::Json => writeln!(stdout, "{}", out.json),
            };
            if written.is_err() {
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
