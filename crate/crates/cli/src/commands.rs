use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use meanlab::grid::{default_chain_pairs, identity_pairs};
use meanlab::harmonic::{
    construct_candidate, representer_of, sample_derivative_bounds, verify_identity,
    DERIVATIVE_BOUND_SLACK, IDENTITY_TOLERANCE,
};
use meanlab::inequality::{builtin_chain, run_chain_suite, BUILTIN_CHAIN_NAMES, CHAIN_TOLERANCE};
use meanlab::means::{catalog_seiffert, seiffert_of_mean};
use meanlab::{Deform, GridSpec, Mean, MeanId, PositivePair, QuadratureConfig};

use crate::pairs::resolve_pairs;
use crate::report::{emit_report, fmt_sig, Format, Layout, Record, ReportDocument};
use crate::suite;
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "meanlab", version)]
#[command(about = "Bivariate means, Seiffert functions and their harmonic representations")]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a catalog mean at (x, y)
    #[command(allow_negative_numbers = true)]
    Eval {
        #[arg(long)]
        mean: MeanId,
        x: f64,
        y: f64,
    },
    /// Evaluate the Seiffert function z / M(1-z, 1+z)
    Seiffert {
        #[arg(long)]
        mean: MeanId,
        #[command(flatten)]
        z: ZArgs,
    },
    /// Evaluate the deformed mean M^{t}(x, y)
    #[command(allow_negative_numbers = true)]
    Deform {
        #[arg(long)]
        mean: MeanId,
        #[arg(long)]
        t: f64,
        x: f64,
        y: f64,
    },
    /// Harmonic representations
    #[command(subcommand)]
    Harmonic(HarmonicCommand),
    /// Inequality chains
    #[command(subcommand)]
    Ineq(IneqCommand),
    /// Run the reproduction suite
    Suite {
        /// Run every criterion
        #[arg(long, required_unless_present = "criterion")]
        all: bool,
        /// Run only this criterion (repeatable)
        #[arg(long, conflicts_with = "all")]
        criterion: Vec<u8>,
    },
}

#[derive(Debug, Args)]
pub struct ZArgs {
    /// A single z in [0, 1)
    #[arg(long, conflicts_with = "zgrid")]
    pub z: Option<f64>,
    /// Grid `start:end:count[:log]` (default 0.01:0.99:99)
    #[arg(long)]
    pub zgrid: Option<GridSpec<f64>>,
}

impl ZArgs {
    fn points(&self) -> Vec<f64> {
        match (self.z, self.zgrid) {
            (Some(z), _) => vec![z],
            (None, Some(g)) => g.points(),
            (None, None) => GridSpec::unit_default().points(),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum HarmonicCommand {
    /// Test 1/(1+z) <= m'(z) <= 1/(1-z) on a z-grid
    Check {
        #[arg(long)]
        mean: MeanId,
        /// Grid `start:end:count[:log]` inside (0, 1)
        #[arg(long, default_value = "0.01:0.99:99")]
        zgrid: GridSpec<f64>,
        /// Allowed violation of the bounds
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Evaluate the candidate representer n(z) = z m'(z)
    Construct {
        #[arg(long)]
        mean: MeanId,
        #[command(flatten)]
        z: ZArgs,
    },
    /// Check M(x,y) ∫ dt / N^{t}(x,y) = 1 on pairs
    Verify {
        #[arg(long)]
        mean: MeanId,
        /// Representer (defaults to the catalog partner of --mean)
        #[arg(long)]
        repr: Option<MeanId>,
        /// `default` or a CSV file with header x,y
        #[arg(long, default_value = "default")]
        pairs: String,
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum IneqCommand {
    /// Check a named chain on pairs
    Run {
        #[arg(long)]
        chain: String,
        /// `default` or a CSV file with header x,y
        #[arg(long, default_value = "default")]
        pairs: String,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// List the chain names
    List,
}

/// A finished command: its report and how to render it.
pub struct Outcome {
    pub doc: ReportDocument,
    pub layout: Layout,
    /// Printed alone in text mode when the command computed one number.
    pub bare: Option<f64>,
}

impl Outcome {
    fn checks(doc: ReportDocument) -> Self {
        Self {
            doc,
            layout: Layout::Checks,
            bare: None,
        }
    }

    fn values(doc: ReportDocument) -> Self {
        let bare = match doc.records.as_slice() {
            [only] => only.value,
            _ => None,
        };
        Self {
            doc,
            layout: Layout::Values,
            bare,
        }
    }

    pub fn write(&self, cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
        let mut buf = Vec::new();
        match (cli.format, self.bare) {
            (Format::Text, Some(v)) => writeln!(buf, "{}", fmt_sig(v))?,
            _ => emit_report(&self.doc, cli.format, self.layout, &mut buf)?,
        }
        match &cli.out {
            Some(path) => std::fs::write(path, &buf)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
            None => Ok(stdout.write_all(&buf)?),
        }
    }
}

/// `--tol`, else `MEANLAB_TOL`, else `default`.
pub fn resolve_tol(flag: Option<f64>, env: Option<&str>, default: f64) -> Result<f64, CliError> {
    let tol = match (flag, env) {
        (Some(t), _) => t,
        (None, Some(s)) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{}: not a number: `{s}`", crate::TOL_ENV)))?,
        (None, None) => default,
    };
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(CliError::Usage(format!("tolerance must be positive, got {tol}")))
    }
}

impl Cli {
    pub fn execute(&self, command_line: &str, tol_env: Option<&str>) -> Result<Outcome, CliError> {
        let doc = |records| ReportDocument::new(command_line, records);
        Ok(match &self.command {
            Command::Eval { mean, x, y } => {
                let p = PositivePair::new(*x, *y)?;
                let v = Mean::catalog(*mean).eval(p)?;
                Outcome::values(doc(vec![Record::new("eval", mean.as_str())
                    .at_pair(*x, *y, p.spread())
                    .value(v)]))
            }
            Command::Seiffert { mean, z } => {
                let f = catalog_seiffert::<f64>(*mean);
                let mut records = Vec::new();
                for z in z.points() {
                    records.push(Record::new("seiffert", mean.as_str()).at_z(z).value(f.eval(z)?));
                }
                Outcome::values(doc(records))
            }
            Command::Deform { mean, t, x, y } => {
                let p = PositivePair::new(*x, *y)?;
                let v = Mean::catalog(*mean).eval_deformed(p, Deform::new(*t)?.get())?;
                Outcome::values(doc(vec![Record::new("deform", format!("{}^{{{}}}", mean, fmt_sig(*t)))
                    .at_pair(*x, *y, p.spread())
                    .value(v)]))
            }
            Command::Harmonic(h) => self.harmonic(h, tol_env, doc)?,
            Command::Ineq(IneqCommand::Run { chain, pairs, tol }) => {
                let tol = resolve_tol(*tol, tol_env, CHAIN_TOLERANCE)?;
                let spec = builtin_chain::<f64>(chain)?;
                let pairs = resolve_pairs(pairs, default_chain_pairs)?;
                let r = run_chain_suite(&spec, &pairs, tol);
                let relation = format!("{} ascending within {}", r.terms.join(" <= "), fmt_sig(tol));
                let records = r
                    .points
                    .iter()
                    .map(|p| {
                        let rec = Record::new("ineq", chain.as_str())
                            .at_pair(p.pair.x(), p.pair.y(), p.z)
                            .relation(relation.clone());
                        match (&p.error, p.min_margin()) {
                            (Some(e), _) => rec.failed(e),
                            (None, Some(m)) => rec.value(m).judged(m + tol),
                            (None, None) => rec.failed("no margins"),
                        }
                    })
                    .collect();
                Outcome::checks(doc(records))
            }
            Command::Ineq(IneqCommand::List) => {
                let records = BUILTIN_CHAIN_NAMES
                    .iter()
                    .map(|n| {
                        let c = builtin_chain::<f64>(n).expect("builtin name");
                        Record::new("chain", *n).relation(c.term_labels().join(" <= ")).detail(c.note)
                    })
                    .collect();
                Outcome::checks(doc(records))
            }
            Command::Suite { all: _, criterion } => {
                for id in criterion {
                    if suite::criterion(*id).is_none() {
                        return Err(CliError::Usage(format!("no criterion {id}")));
                    }
                }
                Outcome::checks(doc(suite::run_criteria(criterion)))
            }
        })
    }

    fn harmonic(
        &self,
        h: &HarmonicCommand,
        tol_env: Option<&str>,
        doc: impl Fn(Vec<Record>) -> ReportDocument,
    ) -> Result<Outcome, CliError> {
        Ok(match h {
            HarmonicCommand::Check { mean, zgrid, tol } => {
                if !zgrid.inside_unit_interval() {
                    return Err(CliError::Usage(format!("--zgrid {zgrid} must lie inside (0, 1)")));
                }
                let tol = resolve_tol(*tol, tol_env, DERIVATIVE_BOUND_SLACK)?;
                let f = seiffert_of_mean(&Mean::<f64>::catalog(*mean));
                let records = sample_derivative_bounds(&f, zgrid)
                    .into_iter()
                    .map(|s| {
                        let rec = Record::new("harmonic-check", mean.as_str())
                            .at_z(s.z)
                            .relation("1/(1+z) <= m'(z) <= 1/(1-z)");
                        match (s.derivative, s.margin) {
                            (Ok(d), Some(m)) => rec.value(d).judged(m + tol),
                            (Err(e), _) => rec.failed(e),
                            (Ok(_), None) => rec.failed("no margin"),
                        }
                    })
                    .collect();
                Outcome::checks(doc(records))
            }
            HarmonicCommand::Construct { mean, z } => {
                let n = construct_candidate(&seiffert_of_mean(&Mean::<f64>::catalog(*mean)));
                let mut records = Vec::new();
                for z in z.points() {
                    records.push(
                        Record::new("harmonic-construct", format!("z*{mean}'"))
                            .at_z(z)
                            .value(n.eval(z)?),
                    );
                }
                Outcome::values(doc(records))
            }
            HarmonicCommand::Verify { mean, repr, pairs, tol } => {
                let tol = resolve_tol(*tol, tol_env, IDENTITY_TOLERANCE)?;
                let repr = repr.or_else(|| representer_of(*mean)).ok_or_else(|| {
                    CliError::Usage(format!("{mean} has no catalog representer; pass --repr"))
                })?;
                let pairs = resolve_pairs(pairs, identity_pairs)?;
                let r = verify_identity(
                    &Mean::catalog(*mean),
                    &Mean::catalog(repr),
                    &pairs,
                    &QuadratureConfig::default(),
                    tol,
                );
                let relation = format!("|M ∫ dt/N^t - 1| <= {}", fmt_sig(tol));
                let records = r
                    .points
                    .iter()
                    .map(|p| {
                        let rec = Record::new("harmonic-verify", format!("{mean} by {repr}"))
                            .at_pair(p.pair.x(), p.pair.y(), p.z)
                            .relation(relation.clone());
                        match (&p.error, p.residual) {
                            (Some(e), _) => rec.failed(e),
                            (None, Some(res)) => {
                                let worst = res.max(p.seiffert_residual.unwrap_or(0.0));
                                rec.value(worst).judged(tol - worst).pass(p.pass)
                            }
                            (None, None) => rec.failed("no residual"),
                        }
                    })
                    .collect();
                Outcome::checks(doc(records))
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_resolution() {
        assert_eq!(resolve_tol(Some(1e-3), Some("1e-5"), 1e-9).unwrap(), 1e-3);
        assert_eq!(resolve_tol(None, Some(" 1e-5 "), 1e-9).unwrap(), 1e-5);
        assert_eq!(resolve_tol(None, None, 1e-9).unwrap(), 1e-9);
        assert!(resolve_tol(None, Some("abc"), 1e-9).is_err());
        assert!(resolve_tol(Some(-1.0), None, 1e-9).is_err());
        assert!(resolve_tol(Some(0.0), None, 1e-9).is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
