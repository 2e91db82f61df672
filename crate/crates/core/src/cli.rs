//! Command line front end. [`run`] returns the process exit code:
//! 0 success, 1 a verification failed, 2 configuration or usage error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use crate::actions::Model;
use crate::config::ModelConfig;
use crate::error::{Error, Result};
use crate::exact::{format_vector, parse_vector};
use crate::fixtures;
use crate::report::{self, Analysis};
use crate::strata::{sampling_oracle, slice_consistency, to_dot, SliceReport};

/// Upper bound on loop points visited by the `oracle` command.
pub const ORACLE_BUDGET: usize = 4_000_000;

pub const THREADS_VAR: &str = "INERTIA_STRATA_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Enumerate pieces, components and strata.
    Strata,
    /// Check the condition of frontier on components, strata and pieces.
    Verify,
    /// Closure poset of the strata of the inertia space.
    Poset,
    /// Connected components of the inertia space.
    Components,
    /// Compare strata germs with the model restricted to a stabilizer.
    SliceCheck,
    /// Cross-check against brute-force classification of small rational points.
    Oracle,
    /// List built-in fixtures; with --check, diff them against their goldens.
    Fixtures,
    /// Frontier condition for the partition by isotropy type alone.
    CompareIsotropy,
}

#[derive(Debug, Parser)]
#[command(
    name = "inertia-strata",
    version,
    about = "Orbit Cartan type strata of loop and inertia spaces"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Model configuration (JSON).
    #[arg(long, value_name = "FILE")]
    pub model: Option<PathBuf>,
    /// Built-in fixture name.
    #[arg(long, value_name = "NAME")]
    pub fixture: Option<String>,
    /// Write the JSON report here ("-" for stdout).
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Write the closure poset as Graphviz DOT here.
    #[arg(long, value_name = "PATH")]
    pub dot: Option<PathBuf>,
    /// Overrides the model's denominator bound for `oracle`.
    #[arg(long, value_name = "N")]
    pub denominator_bound: Option<usize>,
    /// A failed check is the expected outcome: swaps exit codes 0 and 1.
    #[arg(long)]
    pub expect_fail: bool,
    /// Point for `slice-check`, e.g. "1,1,0" or "1/2,-1".
    #[arg(long, value_name = "p/q,...")]
    pub point: Option<String>,
    /// With `fixtures`: recompute every golden report and compare.
    #[arg(long)]
    pub check: bool,
}

/// Applies `INERTIA_STRATA_THREADS` to the global rayon pool.
pub fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            Error::Config(format!(
                "{THREADS_VAR} must be a positive integer, got {value:?}"
            ))
        })?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(passed) => {
            if passed != cli.expect_fail {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn load_config(cli: &Cli) -> Result<ModelConfig> {
    match (&cli.model, &cli.fixture) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            ModelConfig::parse(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
        }
        (None, Some(name)) => Ok(fixtures::get(name)?.config()),
        (Some(_), Some(_)) => Err(Error::Config(
            "give either --model or --fixture, not both".into(),
        )),
        (None, None) => Err(Error::Config(
            "this command needs --model FILE or --fixture NAME".into(),
        )),
    }
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        None => Ok(()),
        Some(p) if p.as_os_str() == "-" => {
            print!("{text}");
            Ok(())
        }
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Error::Config(format!("{}: {e}", p.display())))
        }
    }
}

/// Human readable output; goes to stderr when the JSON report takes stdout.
macro_rules! say {
    ($cli:expr, $($arg:tt)*) => {
        if $cli.json.as_deref().is_some_and(|p| p.as_os_str() == "-") {
            eprintln!($($arg)*);
        } else {
            println!($($arg)*);
        }
    };
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Runs one command; `Ok(passed)` unless the input was unusable.
pub fn execute(cli: &Cli) -> Result<bool> {
    configure_threads()?;
    if cli.command == Command::Fixtures {
        return run_fixtures(cli);
    }
    let mut config = load_config(cli)?;
    if let Some(d) = cli.denominator_bound {
        if d == 0 {
            return Err(Error::Config(
                "--denominator-bound must be at least 1".into(),
            ));
        }
        config.options.denominator_bound = d;
    }
    let a = Analysis::new(config)?;
    let name = a.config.name.clone();
    let (value, passed): (Value, bool) = match cli.command {
        Command::Strata => {
            let s = &a.strata;
            say!(
                cli,
                "{name}: {} pieces, {} components, {} strata",
                s.pieces.len(),
                s.components.len(),
                s.strata.len()
            );
            for p in &s.pieces {
                say!(
                    cli,
                    "  piece {}: isotropy {}, {}, dim {}, {} component(s), {} stratum/strata",
                    p.id,
                    p.isotropy,
                    p.class_component(),
                    p.dim,
                    p.components.len(),
                    p.strata.len()
                );
            }
            (report::strata(&a), true)
        }
        Command::Verify => {
            let (v, pass) = report::verify(&a);
            for (level, r) in a.strata.verify_frontier() {
                say!(
                    cli,
                    "{name}: frontier on {level} ({} parts): {}",
                    r.parts,
                    verdict(r.passed())
                );
                for f in &r.failures {
                    say!(
                        cli,
                        "  part {} vs closure of {}: {:?} at {}",
                        f.part_a,
                        f.part_b,
                        f.kind,
                        f.witness
                    );
                }
            }
            (v, pass)
        }
        Command::Poset => {
            let edges = a.poset.covering_edges();
            say!(
                cli,
                "{name}: {} strata, {} covering edges",
                a.strata.strata.len(),
                edges.len()
            );
            for (b, x) in edges {
                say!(cli, "  s{b} -> s{x}");
            }
            (report::poset(&a), true)
        }
        Command::Components => {
            let v = report::components(&a);
            say!(cli, "{name}: H0 has rank {}", v["components_h0"]["count"]);
            (v, true)
        }
        Command::CompareIsotropy => {
            let (v, pass) = report::compare_isotropy(&a);
            let c = &v["comparisons"];
            say!(
                cli,
                "{name}: orbit Cartan partition frontier {}",
                verdict(c["orbit_cartan"]["pass"] == true)
            );
            say!(
                cli,
                "{name}: isotropy-only partition frontier {}",
                verdict(c["isotropy_only"]["pass"] == true)
            );
            for w in c["isotropy_only"]["witnesses"]
                .as_array()
                .into_iter()
                .flatten()
            {
                say!(
                    cli,
                    "  witness {}",
                    w["witness"].as_str().unwrap_or_default()
                );
            }
            (v, pass)
        }
        Command::Oracle => {
            let d = a.config.options.denominator_bound;
            let r = sampling_oracle(&a.strata, d, ORACLE_BUDGET)?;
            say!(
                cli,
                "{name}: oracle at denominator bound {d}: {} samples, {}/{} components hit, {}",
                r.samples,
                r.engine_components_hit,
                r.engine_components,
                verdict(r.passed())
            );
            for m in &r.mismatches {
                say!(cli, "  {m}");
            }
            (report::oracle(&a, &r), r.passed())
        }
        Command::SliceCheck => run_slice(cli, &a)?,
        Command::Fixtures => unreachable!(),
    };
    write_out(&cli.json, &report::render(&value))?;
    if cli.dot.is_some() {
        write_out(&cli.dot, &to_dot(&a.strata, &a.poset))?;
    }
    Ok(passed)
}

fn run_slice(cli: &Cli, a: &Analysis) -> Result<(Value, bool)> {
    let Model::Finite(_) = a.strata.model() else {
        return Err(Error::Config(
            "slice-check needs a finite-linear model".into(),
        ));
    };
    let points: Vec<Vec<crate::exact::Rational>> = match &cli.point {
        Some(p) => vec![parse_vector(p)?],
        None => a
            .strata
            .model()
            .flats()?
            .into_iter()
            .map(|f| f.witness)
            .collect(),
    };
    let dim = a.strata.model().dim();
    let mut reports: Vec<(String, SliceReport)> = Vec::new();
    for x in points {
        if x.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: x.len(),
            });
        }
        let r = slice_consistency(&a.strata, &x, a.config.options.order_cap)?;
        let label = format_vector(&x);
        say!(
            cli,
            "{}: slice at ({label}), stabilizer order {}: {}",
            a.config.name,
            r.stabilizer.len(),
            verdict(r.passed())
        );
        reports.push((label, r));
    }
    Ok(report::slices(a, &reports))
}

fn run_fixtures(cli: &Cli) -> Result<bool> {
    let mut rows = Vec::new();
    let mut pass = true;
    for f in fixtures::all() {
        if cli.check {
            let c = fixtures::check(f)?;
            match c.first_difference {
                None => say!(cli, "{:<16} ok", f.name),
                Some(line) => say!(cli, "{:<16} DIFFERS from golden at line {line}", f.name),
            }
            pass &= c.passed();
            rows.push(json!({ "name": f.name, "matches_golden": c.passed() }));
        } else {
            say!(cli, "{:<16} {}", f.name, f.description);
            rows.push(json!({ "name": f.name, "description": f.description }));
        }
    }
    let so3 = fixtures::check_so3_expected();
    if cli.check {
        say!(
            cli,
            "{:<16} {}",
            "so3-r3-expected",
            if so3 {
                "ok (documentation only)"
            } else {
                "MALFORMED"
            }
        );
        pass &= so3;
    } else {
        say!(
            cli,
            "{:<16} expected strata of SO(3) on R^3 (documentation only)",
            "so3-r3-expected"
        );
    }
    let v = json!({
        "schema": report::SCHEMA,
        "command": "fixtures",
        "check": cli.check,
        "pass": pass,
        "fixtures": rows,
        "documentation_only": [{ "name": "so3-r3-expected", "parses": so3 }],
    });
    write_out(&cli.json, &report::render(&v))?;
    Ok(pass)
}
