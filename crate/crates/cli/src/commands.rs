//! Subcommand dispatch. Every command renders into an [`Output`] so that tests
//! can drive the CLI without spawning a process.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use moore_core::{
    canonical_couple, homotopy_classes, normalize, parse_couple, stem_table, write_couple, BigInt, Couple, Error,
    Group, Matrix, Morphism,
};
use serde_json::{json, Value};

use crate::battery::{self, Size};
use crate::expr::{format_group, parse_group};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "moore", version, about = "Stable homotopy of Moore spaces via exact couples")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Use ℤ and ⊕ in text output.
    #[arg(long, global = true)]
    pub unicode: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stable homotopy groups π_q^S(M(A, n)) for q = 0..7.
    Stems {
        group: String,
        /// Bottom cell dimension n; adds the column i = n + q.
        #[arg(long, value_parser = clap::value_parser!(i64).range(2..))]
        degree: Option<i64>,
    },
    /// The group [M(A, n), M(B, n)] with generating morphisms.
    Maps { source: String, target: String },
    /// The canonical exact couple of M(A, n) in couple file format.
    Couple { group: String },
    /// Validate a couple file and map it isomorphically to canonical form.
    Normalize {
        /// Couple file, or `-` for standard input.
        file: PathBuf,
    },
    /// Run the verification battery.
    Check {
        #[arg(long, value_enum, default_value = "small")]
        battery: Size,
    },
}

/// What a command printed and how it exits.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Self { stdout: String::new(), stderr: format!("error: {msg}\n"), code: EXIT_USAGE }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Output { stdout: String::new(), stderr: text, code: EXIT_USAGE }
            } else {
                Output::ok(text)
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Output {
    let result = match &cli.command {
        Command::Stems { group, degree } => stems(cli, group, *degree),
        Command::Maps { source, target } => maps(cli, source, target),
        Command::Couple { group } => couple(cli, group),
        Command::Normalize { file } => return normalize_file(cli, file),
        Command::Check { battery } => return check(cli, *battery),
    };
    result.unwrap_or_else(Output::usage)
}

fn group_arg(text: &str) -> Result<Group, String> {
    parse_group(text).map_err(|e| format!("{e} in `{text}`"))
}

fn number(n: &BigInt) -> Value {
    serde_json::from_str(&n.to_string()).expect("integers are valid JSON numbers")
}

fn group_json(g: &Group) -> Value {
    json!({
        "rank": g.rank(),
        "torsion": g.torsion().iter().map(number).collect::<Vec<_>>(),
    })
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(number).collect()))
            .collect(),
    )
}

fn couple_json(d: &Couple) -> Value {
    json!({
        "A": group_json(d.phi1()),
        "B": group_json(d.phi2()),
        "alpha": matrix_json(d.alpha().matrix()),
        "beta": matrix_json(d.beta().matrix()),
    })
}

fn morphism_json(m: &Morphism) -> Value {
    json!({ "f1": matrix_json(m.f1.matrix()), "f2": matrix_json(m.f2.matrix()) })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn stems(cli: &Cli, text: &str, degree: Option<i64>) -> Result<Output, String> {
    let a = group_arg(text)?;
    let table = stem_table(&a).map_err(|e| e.to_string())?;
    if cli.json {
        let rows: Vec<Value> = table
            .iter()
            .map(|(q, g)| {
                let mut row = json!({ "q": q });
                if let Some(n) = degree {
                    row["i"] = json!(n + q);
                }
                row["rank"] = json!(g.rank());
                row["torsion"] = group_json(g)["torsion"].clone();
                row
            })
            .collect();
        return Ok(Output::ok(pretty(&Value::Array(rows))));
    }
    let mut out = String::new();
    match degree {
        Some(_) => out.push_str("q\ti\tgroup\n"),
        None => out.push_str("q\tgroup\n"),
    }
    for (q, g) in table.iter() {
        match degree {
            Some(n) => writeln!(out, "{q}\t{}\t{}", n + q, format_group(g, cli.unicode)),
            None => writeln!(out, "{q}\t{}", format_group(g, cli.unicode)),
        }
        .unwrap();
    }
    Ok(Output::ok(out))
}

fn maps(cli: &Cli, source: &str, target: &str) -> Result<Output, String> {
    let a = group_arg(source)?;
    let b = group_arg(target)?;
    let classes = homotopy_classes(&a, &b).map_err(|e| e.to_string())?;
    let orders = classes.group().moduli();
    if cli.json {
        let gens: Vec<Value> = classes
            .generators()
            .iter()
            .zip(&orders)
            .map(|(m, d)| {
                let mut v = morphism_json(m);
                v["order"] = if d == &BigInt::from(0) { Value::Null } else { number(d) };
                v
            })
            .collect();
        let v = json!({ "group": group_json(classes.group()), "generators": gens });
        return Ok(Output::ok(pretty(&v)));
    }
    let mut out = format!("{}\n", format_group(classes.group(), cli.unicode));
    for (k, (m, d)) in classes.generators().iter().zip(&orders).enumerate() {
        let order = if d == &BigInt::from(0) { "infinite".to_string() } else { d.to_string() };
        writeln!(out, "generator {} (order {order})", k + 1).unwrap();
        writeln!(out, "  f1 = {}", m.f1.matrix()).unwrap();
        writeln!(out, "  f2 = {}", m.f2.matrix()).unwrap();
    }
    Ok(Output::ok(out))
}

fn couple(cli: &Cli, text: &str) -> Result<Output, String> {
    let a = group_arg(text)?;
    let d = canonical_couple(&a).map_err(|e| e.to_string())?;
    if cli.json {
        Ok(Output::ok(pretty(&couple_json(&d))))
    } else {
        Ok(Output::ok(write_couple(&d)))
    }
}

fn normalize_file(cli: &Cli, file: &PathBuf) -> Output {
    let text = if file.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(file)
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => return Output::usage(format!("cannot read {}: {e}", file.display())),
    };
    normalize_text(cli.json, &text)
}

/// `normalize` on the contents of a couple file.
pub fn normalize_text(as_json: bool, text: &str) -> Output {
    let d: Couple = match parse_couple(text) {
        Ok(d) => d,
        Err(e) => return Output::usage(e),
    };
    match normalize(&d) {
        Ok((canonical, iso)) => {
            let out = if as_json {
                pretty(&json!({
                    "valid": true,
                    "canonical": couple_json(&canonical),
                    "isomorphism": morphism_json(&iso),
                }))
            } else {
                format!(
                    "valid exact couple\nisomorphism to canonical form:\n  f1 = {}\n  f2 = {}\ncanonical form:\n{}",
                    iso.f1.matrix(),
                    iso.f2.matrix(),
                    write_couple(&canonical)
                )
            };
            Output::ok(out)
        }
        Err(Error::InvalidCouple(violations)) => {
            let (stdout, mut stderr) = if as_json {
                let v: Vec<String> = violations.iter().map(ToString::to_string).collect();
                (pretty(&json!({ "valid": false, "violations": v })), String::new())
            } else {
                (String::new(), String::new())
            };
            for v in &violations {
                writeln!(stderr, "violation: {v}").unwrap();
            }
            Output { stdout, stderr, code: EXIT_INVALID }
        }
        Err(e) => Output { stdout: String::new(), stderr: format!("error: {e}\n"), code: EXIT_INVALID },
    }
}

fn check(cli: &Cli, size: Size) -> Output {
    let results = battery::run(size);
    let passed = results.iter().all(|r| r.passed());
    let stdout = if cli.json {
        let rows: Vec<Value> = results
            .iter()
            .map(|r| json!({ "name": r.name, "cases": r.cases, "passed": r.passed(), "failures": r.failures }))
            .collect();
        pretty(&json!({ "passed": passed, "checks": rows }))
    } else {
        let mut out = String::new();
        for r in &results {
            let status = if r.passed() { "PASS" } else { "FAIL" };
            writeln!(out, "{status} {} ({} cases)", r.name, r.cases).unwrap();
            for f in &r.failures {
                writeln!(out, "  failed: {f}").unwrap();
            }
        }
        out
    };
    Output { stdout, stderr: String::new(), code: if passed { EXIT_OK } else { EXIT_INVALID } }
}
