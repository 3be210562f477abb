//! The `dcl` command line: sequence tables, raw generating-function
//! coefficients and identity-verification reports.
//!
//! Exit codes: `0` success, `1` some identity has no fully passing variant,
//! `2` usage or I/O error.

pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use dcl_core::identities::{self, IdentityReport, VariantSelection};
use dcl_core::sequences::generating_function;
use dcl_core::{GfId, SequenceId};

use output::{Param, TableFormat};

/// Environment variable capping every order / `--n-max` the CLI accepts.
pub const MAX_ORDER_ENV: &str = "DCL_MAX_ORDER";

#[derive(Parser, Debug)]
#[command(
    name = "dcl",
    version,
    about = "Exact degenerate Cauchy polynomials of the second kind"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a sequence for n = 0..=n-max.
    Table {
        /// Sequence name, e.g. degen_cauchy2 or bernoulli_higher:2.
        #[arg(long, value_parser = parse_seq)]
        seq: SequenceId,
        #[arg(long)]
        n_max: usize,
        /// `sym` or a rational `p/q`.
        #[arg(long, default_value = "sym", value_parser = parse_param, allow_hyphen_values = true)]
        lambda: Param,
        #[arg(long, default_value = "sym", value_parser = parse_param, allow_hyphen_values = true)]
        x: Param,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the plain coefficients c_0..c_N of a generating function.
    Series {
        /// cauchy, bernoulli_higher:r, degen_bernoulli, degen_cauchy_star,
        /// degen_cauchy2, daehee, daehee_higher:r, L or E.
        #[arg(long, value_parser = parse_gf)]
        name: GfId,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value = "sym", value_parser = parse_param, allow_hyphen_values = true)]
        lambda: Param,
        #[arg(long, default_value = "sym", value_parser = parse_param, allow_hyphen_values = true)]
        x: Param,
    },
    /// Verify one identity, or the whole registry.
    Verify {
        #[arg(long)]
        identity: Option<String>,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Variants::Both)]
        variants: Variants,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Variants {
    Printed,
    Corrected,
    Both,
}

impl From<Variants> for VariantSelection {
    fn from(v: Variants) -> Self {
        match v {
            Variants::Printed => VariantSelection::Printed,
            Variants::Corrected => VariantSelection::Corrected,
            Variants::Both => VariantSelection::Both,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

fn parse_seq(s: &str) -> Result<SequenceId, String> {
    s.parse()
        .map_err(|e| format!("{e}; expected one of: {}", SequenceId::NAMES.join(", ")))
}

fn parse_gf(s: &str) -> Result<GfId, String> {
    s.parse().map_err(|e: dcl_core::Error| e.to_string())
}

fn parse_param(s: &str) -> Result<Param, String> {
    s.parse().map_err(|e: dcl_core::Error| e.to_string())
}

/// Applies the optional `DCL_MAX_ORDER` cap.
fn capped(requested: usize, what: &str, err: &mut dyn Write) -> Result<usize> {
    let Ok(raw) = std::env::var(MAX_ORDER_ENV) else {
        return Ok(requested);
    };
    let cap: usize = raw
        .trim()
        .parse()
        .with_context(|| format!("{MAX_ORDER_ENV}=`{raw}` is not a non-negative integer"))?;
    if requested > cap {
        writeln!(
            err,
            "warning: {what} {requested} capped to {cap} by {MAX_ORDER_ENV}"
        )?;
        return Ok(cap);
    }
    Ok(requested)
}

pub fn render_text(reports: &[IdentityReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let range = match (r.results.first(), r.results.last()) {
            (Some(a), Some(b)) => format!("n={}..{}", a.n, b.n),
            _ => "n=(none)".to_string(),
        };
        let variant = r.variant.to_string();
        let line = match &r.first_failure {
            None => format!("{:<14} {:<10} {:<10} PASS\n", r.id, variant, range),
            Some(f) => format!(
                "{:<14} {:<10} {:<10} FAIL  first failure at n={}: lhs - rhs = {}\n",
                r.id, variant, range, f.n, f.diff
            ),
        };
        s.push_str(&line);
    }
    s
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Table {
            seq,
            n_max,
            lambda,
            x,
            format,
            out: path,
        } => {
            let n_max = capped(n_max, "n-max", err)?;
            let records = output::build_records(seq, n_max, &lambda, &x);
            let text = output::render(&records, format)?;
            match path {
                Some(p) => std::fs::write(&p, text)
                    .with_context(|| format!("cannot write `{}`", p.display()))?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(0)
        }
        Command::Series {
            name,
            order,
            lambda,
            x,
        } => {
            let order = capped(order, "order", err)?;
            let f = generating_function(name, order)?.partial_eval(lambda.value(), x.value());
            for c in f.coeffs() {
                writeln!(out, "{c}")?;
            }
            Ok(0)
        }
        Command::Verify {
            identity,
            n_max,
            variants,
            format,
        } => {
            if n_max < 1 {
                bail!("--n-max must be at least 1");
            }
            let n_max = capped(n_max, "n-max", err)?;
            let selection = variants.into();
            let reports = match identity {
                Some(id) => identities::verify_identity(&id, n_max, selection)?,
                None => identities::verify_all_with(n_max, selection),
            };
            match format {
                ReportFormat::Json => {
                    let mut s = serde_json::to_string_pretty(&reports)?;
                    s.push('\n');
                    out.write_all(s.as_bytes())?;
                }
                ReportFormat::Text => out.write_all(render_text(&reports).as_bytes())?,
            }
            Ok(if identities::suite_passes(&reports) {
                0
            } else {
                1
            })
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return e.exit_code();
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("dcl").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn series_l_and_e() {
        let (code, out, _) = run_capture(&["series", "--name", "L", "--order", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "0\n1\n-1/2*l\n");
        let (_, out, _) = run_capture(&["series", "--name", "E", "--order", "3"]);
        assert_eq!(out, "0\n1\n1/2*l\n1/6*l^2\n");
    }

    #[test]
    fn series_cauchy_symbolic_x() {
        let (code, out, _) = run_capture(&["series", "--name", "cauchy", "--order", "2"]);
        assert_eq!(code, 0);
        let lines: Vec<_> = out.lines().collect();
        assert_eq!(&lines[..2], ["1", "x + 1/2"]);
        // 2! · c_2 = x^2 - 1/6
        assert_eq!(lines[2], "1/2*x^2 - 1/12");
    }

    #[test]
    fn daehee_table() {
        let (code, out, _) = run_capture(&["table", "--seq", "daehee", "--n-max", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "n,lambda,x,value\n0,sym,sym,1\n1,sym,sym,-1/2\n");
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(
            run_capture(&["table", "--seq", "nosuch", "--n-max", "2"]).0,
            2
        );
        assert_eq!(
            run_capture(&["series", "--name", "nosuch", "--order", "2"]).0,
            2
        );
        assert_eq!(
            run_capture(&["verify", "--identity", "thm99", "--n-max", "2"]).0,
            2
        );
        assert_eq!(run_capture(&["verify", "--n-max", "0"]).0, 2);
        assert_eq!(
            run_capture(&["table", "--seq", "daehee", "--n-max", "1", "--x", "1/0"]).0,
            2
        );
        assert_eq!(run_capture(&["bogus"]).0, 2);
    }

    #[test]
    fn text_report() {
        let (code, out, _) = run_capture(&["verify", "--identity", "thm5", "--n-max", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains(
            "thm5           printed    n=0..1     FAIL  first failure at n=1: lhs - rhs = l"
        ));
        assert!(out.contains("corrected  n=0..1     PASS"));
    }
}
