//! Argument handling and command dispatch for the `weitz` binary.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use weitzenbock::checks::{run_all, CheckConfig};
use weitzenbock::decompose::{decompose, expand, generators, GenExpr, GenKind};
use weitzenbock::derivation::apply_delta;
use weitzenbock::exactpoly::{parse_poly, RingDesc};
use weitzenbock::jordan::{kron_jordan, mu};
use weitzenbock::pathgraph::{enumerate_paths, path_counts};
use weitzenbock::Error;

#[derive(Parser, Debug)]
#[command(name = "weitz", about = "Constants of the Weitzenbock derivation with 3x3 Jordan blocks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the generators of the algebra of constants.
    Gens {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// Test whether a polynomial is a constant.
    Check {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Polynomial text, or `-` to read standard input.
        poly: String,
    },
    /// Write a constant as a polynomial in the generators.
    Decompose {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Polynomial text, or `-` to read standard input.
        poly: String,
        #[arg(long)]
        json: bool,
    },
    /// Block multiplicities of the d-th tensor power, by two recursions.
    Dims {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate the paths of length d.
    Paths {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        monomials: bool,
    },
    /// Jordan type of the product of two unipotent blocks.
    Kron {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Run the full battery of oracle checks.
    Selftest {
        #[arg(long)]
        max_d: Option<u32>,
        #[arg(long)]
        max_n: Option<u32>,
    },
}

const SYNOPSIS: &str = "usage: weitz <command> [options]
  gens --n N
  check --n N <poly|->
  decompose --n N <poly|-> [--json]
  dims --d D [--json]
  paths --d D [--monomials]
  kron --m M --n N
  selftest [--max-d D] [--max-n N]";

/// Outcome of a command: the exit code, with 1 for domain errors and 2 for
/// usage or syntax errors.
enum Failure {
    Domain(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. } | Error::SubscriptOutOfRange { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. `input` is read when a polynomial argument is `-`.
pub fn run<I, T>(args: I, input: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                let _ = writeln!(err, "error: missing command");
            } else {
                let rendered = e.to_string();
                let _ = writeln!(err, "{}", rendered.lines().next().unwrap_or("error: invalid arguments"));
            }
            let _ = writeln!(err, "{SYNOPSIS}");
            return 2;
        }
    };
    match dispatch(cli.command, input, out) {
        Ok(code) => code,
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            let _ = writeln!(err, "{SYNOPSIS}");
            2
        }
    }
}

fn read_poly(text: &str, input: &mut dyn Read) -> Result<String, Failure> {
    if text == "-" {
        let mut s = String::new();
        input.read_to_string(&mut s)?;
        Ok(s.trim().to_string())
    } else {
        Ok(text.to_string())
    }
}

fn dispatch(command: Command, input: &mut dyn Read, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Gens { n } => {
            for (g, p) in generators(n) {
                writeln!(out, "{g} = {p}")?;
            }
            Ok(0)
        }
        Command::Check { n, poly } => {
            let h = parse_poly(&read_poly(&poly, input)?, RingDesc::base(n))?;
            let dh = apply_delta(&h);
            if dh.is_zero() {
                writeln!(out, "in kernel")?;
                Ok(0)
            } else {
                writeln!(out, "NOT in kernel; Delta(h) = {dh}")?;
                Ok(1)
            }
        }
        Command::Decompose { n, poly, json } => {
            let h = parse_poly(&read_poly(&poly, input)?, RingDesc::base(n))?;
            let x = decompose(&h)?;
            let verified = expand(&x, n)? == h;
            if json {
                let doc = json!({ "terms": terms_json(&x), "verified": verified });
                writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))?;
            } else {
                writeln!(out, "{x}")?;
                writeln!(out, "verification: {}", if verified { "OK" } else { "FAILED" })?;
            }
            if verified {
                Ok(0)
            } else {
                Err(Failure::Domain("re-expansion does not reproduce the input".into()))
            }
        }
        Command::Dims { d, json } => {
            let left = mu(d);
            let right = path_counts(d);
            let keys: std::collections::BTreeSet<u64> = left.keys().chain(right.keys()).copied().collect();
            let zero = Default::default();
            let mut mismatch = false;
            let mut rows = Vec::new();
            if !json {
                writeln!(out, "{:>4} {:>12} {:>12}", "k", "mu", "nu")?;
            }
            for k in keys {
                let (a, b) = (left.get(&k).unwrap_or(&zero), right.get(&k).unwrap_or(&zero));
                mismatch |= a != b;
                if json {
                    rows.push(json!({ "k": k, "mu": big_json(a), "nu": big_json(b) }));
                } else {
                    let flag = if a != b { "  MISMATCH" } else { "" };
                    writeln!(out, "{k:>4} {a:>12} {b:>12}{flag}")?;
                }
            }
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&Value::Array(rows)).expect("serializable"))?;
            }
            Ok(i32::from(mismatch))
        }
        Command::Paths { d, monomials } => {
            let paths = enumerate_paths(d);
            for w in &paths {
                if monomials {
                    writeln!(out, "{w} {}", w.monomial().format(true))?;
                } else {
                    writeln!(out, "{w}")?;
                }
            }
            writeln!(out, "total: {}", paths.len())?;
            Ok(0)
        }
        Command::Kron { m, n } => {
            writeln!(out, "{}", kron_jordan(m, n))?;
            Ok(0)
        }
        Command::Selftest { max_d, max_n } => {
            let mut cfg = CheckConfig::default();
            if let Some(d) = max_d {
                cfg.max_d = d;
            }
            if let Some(n) = max_n {
                cfg.max_n = n;
            }
            let outcomes = run_all(&cfg);
            for o in &outcomes {
                writeln!(out, "{}", o.summary())?;
            }
            Ok(i32::from(outcomes.iter().any(|o| !o.passed)))
        }
    }
}

fn big_json(n: &num_bigint::BigUint) -> Value {
    match u64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn terms_json(x: &GenExpr) -> Vec<Value> {
    x.terms()
        .map(|(m, c)| {
            let factors: Vec<Value> = m
                .iter()
                .map(|(g, e)| {
                    let gen = match g.kind() {
                        GenKind::F => "f",
                        GenKind::G => "g",
                    };
                    json!({ "gen": gen, "idx": g.indices(), "pow": e })
                })
                .collect();
            json!({ "coeff": format!("{}/{}", c.numer(), c.denom()), "factors": factors })
        })
        .collect()
}
