//! Command-line surface for the exact compactified-Jacobian cohomology
//! computations in `jbar-core`: compute tables, run the cross-route
//! verification sweep, emit the errata report, export machine-readable
//! results.
//!
//! Exit codes: `0` success/verified, `1` usage or I/O error, `2`
//! verification failure (corrected closed form disagrees with the
//! structural or census route), `3` enumeration cap exceeded.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use jbar_core::census::{CensusError, DEFAULT_ENUMERATION_CAP};
use jbar_core::closed_form::{self, CurveParams};
use jbar_core::strata;
use jbar_core::table::MixedHodgeTable;

pub mod parallel;
pub mod render;
pub mod report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Betti numbers, weight-graded dimensions and mixed Hodge numbers of
/// compactified Jacobians of irreducible nodal curves, exactly, along
/// three independent routes.
#[derive(Debug, Parser)]
#[command(name = "jbar", version, max_term_width = 100)]
pub struct Cli {
    /// Genus of the normalisation of the nodal curve
    #[arg(long, global = true, value_name = "N", conflicts_with = "arithmetic_genus")]
    pub normalization_genus: Option<u32>,

    /// Arithmetic genus of the nodal curve (the normalisation then has
    /// genus G minus the node count)
    #[arg(long, global = true, value_name = "G")]
    pub arithmetic_genus: Option<u32>,

    /// Number of nodes
    #[arg(long, global = true, value_name = "K")]
    pub nodes: Option<u32>,

    /// Which route computes the requested values
    #[arg(long, global = true, value_enum, default_value_t = Route::Structural)]
    pub route: Route,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,

    /// Write output to this file instead of stdout (required for export)
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Largest normalisation genus swept by verify
    #[arg(long, global = true, value_name = "N", default_value_t = 4)]
    pub g0_max: u32,

    /// Largest node count swept by verify
    #[arg(long, global = true, value_name = "N", default_value_t = 6)]
    pub k_max: u32,

    /// Bound on the number of basis choices any single census may
    /// enumerate
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: u64,

    /// Worker threads for the census and the verification sweep
    #[arg(long, global = true, value_name = "N", default_value_t = 1)]
    pub workers: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Betti numbers b_0 .. b_{2(g0+k)}
    Betti,
    /// Weight-graded dimensions of each cohomology group
    Weights,
    /// Mixed Hodge numbers of each cohomology group
    Hodge,
    /// Hodge-Deligne E-polynomial coefficients
    Epoly,
    /// Sweep all parameters, cross-check the routes, report the
    /// printed-formula errata
    Verify,
    /// Census of the stratification by successive singular loci
    Strata,
    /// Serialized mixed Hodge table (lossless; dims as decimal strings)
    Export,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    /// Closed-form binomial evaluators (the corrected variant)
    Closed,
    /// Künneth tensor product of the building-block tables
    Structural,
    /// Brute-force enumeration of the Künneth basis
    Census,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Closed => "closed",
            Route::Structural => "structural",
            Route::Census => "census",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Resource(String),
    Io { path: PathBuf, message: String },
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Resource(msg) => write!(f, "{msg}"),
            CliError::Io { path, message } => {
                write!(f, "{}: {message}", path.display())
            }
        }
    }
}

impl std::error::Error for CliError {}

impl From<CensusError> for CliError {
    fn from(err: CensusError) -> Self {
        CliError::Resource(err.to_string())
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => EXIT_USAGE,
            CliError::Resource(_) => EXIT_RESOURCE,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses `args` and executes; output goes to `stdout` (or the `--out`
/// file), diagnostics to `stderr`. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version are not usage errors.
            return if err.use_stderr() {
                let _ = write!(stderr, "{err}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{err}");
                EXIT_OK
            };
        }
    };

    match execute(&cli) {
        Ok((text, code)) => {
            if let Some(path) = &cli.out {
                if let Err(io) = std::fs::write(path, text.as_bytes()) {
                    let _ = writeln!(stderr, "error: {}: {io}", path.display());
                    return EXIT_USAGE;
                }
            } else {
                let _ = stdout.write_all(text.as_bytes());
            }
            code
        }
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            err.exit_code()
        }
    }
}

/// Runs the selected subcommand; returns rendered output and exit code.
pub fn execute(cli: &Cli) -> Result<(String, i32), CliError> {
    if cli.workers == 0 {
        return Err(usage("--workers must be at least 1"));
    }
    match cli.command {
        Command::Betti => cmd_betti(cli),
        Command::Weights => cmd_weights(cli),
        Command::Hodge => cmd_hodge(cli),
        Command::Epoly => cmd_epoly(cli),
        Command::Verify => cmd_verify(cli),
        Command::Strata => cmd_strata(cli),
        Command::Export => cmd_export(cli),
    }
}

/// Resolves the curve parameters from the genus flags; exactly one of
/// the two genus conventions must be given.
fn resolve_params(cli: &Cli) -> Result<CurveParams, CliError> {
    let k = cli
        .nodes
        .ok_or_else(|| usage("--nodes <K> is required for this command"))?;
    match (cli.normalization_genus, cli.arithmetic_genus) {
        (Some(g0), None) => Ok(CurveParams::new(g0, k)),
        (None, Some(g)) => CurveParams::from_arithmetic_genus(g, k).ok_or_else(|| {
            usage(format!(
                "--arithmetic-genus {g} is smaller than the node count {k}"
            ))
        }),
        (None, None) => Err(usage(
            "one of --normalization-genus or --arithmetic-genus is required",
        )),
        (Some(_), Some(_)) => Err(usage(
            "--normalization-genus and --arithmetic-genus are mutually exclusive",
        )),
    }
}

/// The route's table, for the routes that materialize one. The closed
/// route rebuilds the table from the corrected Hodge evaluator over the
/// full index rectangle.
fn route_table(cli: &Cli, params: CurveParams) -> Result<MixedHodgeTable, CliError> {
    match cli.route {
        Route::Structural => Ok(MixedHodgeTable::compactified_jacobian(params.g0, params.k)),
        Route::Census => Ok(parallel::census_parallel(
            params.g0,
            params.k,
            cli.cap,
            cli.workers,
        )?),
        Route::Closed => {
            let top = i64::from(params.top_degree());
            let mut pieces = Vec::new();
            for i in 0..=top {
                for l in 0..=top {
                    for p in 0..=l {
                        let dim = closed_form::hodge_corrected(params, i, l, p, l - p);
                        if !dim.is_zero() {
                            pieces.push((
                                jbar_core::table::HodgePiece::of_type(
                                    i as u32, p as u32, (l - p) as u32,
                                ),
                                dim,
                            ));
                        }
                    }
                }
            }
            Ok(MixedHodgeTable::from_pieces(pieces))
        }
    }
}

fn cmd_betti(cli: &Cli) -> Result<(String, i32), CliError> {
    let params = resolve_params(cli)?;
    let top = i64::from(params.top_degree());
    let values: Vec<BigUint> = match cli.route {
        Route::Closed => (0..=top).map(|i| closed_form::betti(params, i)).collect(),
        _ => {
            let table = route_table(cli, params)?;
            (0..=top).map(|i| table.betti(i)).collect()
        }
    };
    Ok((
        render::render_betti(params, cli.route, &values, cli.format)?,
        EXIT_OK,
    ))
}

fn cmd_weights(cli: &Cli) -> Result<(String, i32), CliError> {
    let params = resolve_params(cli)?;
    let top = i64::from(params.top_degree());
    let mut rows: Vec<(u32, u32, BigUint)> = Vec::new();
    match cli.route {
        Route::Closed => {
            for i in 0..=top {
                for l in 0..=top {
                    let dim = closed_form::weight_corrected(params, i, l);
                    if !dim.is_zero() {
                        rows.push((i as u32, l as u32, dim));
                    }
                }
            }
        }
        _ => {
            let table = route_table(cli, params)?;
            let mut acc: std::collections::BTreeMap<(u32, u32), BigUint> = Default::default();
            for (piece, mult) in table.iter() {
                *acc.entry((piece.degree(), piece.weight())).or_default() += mult;
            }
            rows.extend(acc.into_iter().map(|((i, l), dim)| (i, l, dim)));
        }
    }
    Ok((
        render::render_weights(params, cli.route, &rows, cli.format)?,
        EXIT_OK,
    ))
}

fn cmd_hodge(cli: &Cli) -> Result<(String, i32), CliError> {
    let params = resolve_params(cli)?;
    let top = i64::from(params.top_degree());
    let mut rows: Vec<(u32, u32, u32, u32, BigUint)> = Vec::new();
    match cli.route {
        Route::Closed => {
            for i in 0..=top {
                for l in 0..=top {
                    for p in 0..=l {
                        let dim = closed_form::hodge_corrected(params, i, l, p, l - p);
                        if !dim.is_zero() {
                            rows.push((i as u32, l as u32, p as u32, (l - p) as u32, dim));
                        }
                    }
                }
            }
        }
        _ => {
            let table = route_table(cli, params)?;
            for (piece, mult) in table.iter() {
                rows.push((
                    piece.degree(),
                    piece.weight(),
                    piece.hodge_p(),
                    piece.hodge_q(),
                    mult.clone(),
                ));
            }
        }
    }
    Ok((
        render::render_hodge(params, cli.route, &rows, cli.format)?,
        EXIT_OK,
    ))
}

fn cmd_epoly(cli: &Cli) -> Result<(String, i32), CliError> {
    let params = resolve_params(cli)?;
    let rows: Vec<(u32, u32, BigInt)> = match cli.route {
        Route::Closed => {
            let top = i64::from(params.top_degree());
            let bound = i64::from(params.g0 + params.k);
            let mut rows = Vec::new();
            for p in 0..=bound {
                for q in 0..=bound {
                    let mut coeff = BigInt::zero();
                    let mut seen = false;
                    for i in 0..=top {
                        let dim = closed_form::hodge_corrected(params, i, p + q, p, q);
                        if !dim.is_zero() {
                            seen = true;
                            let signed = BigInt::from(dim);
                            coeff += if i % 2 == 0 { signed } else { -signed };
                        }
                    }
                    if seen {
                        rows.push((p as u32, q as u32, coeff));
                    }
                }
            }
            rows
        }
        _ => route_table(cli, params)?
            .e_polynomial()
            .into_iter()
            .map(|((p, q), coeff)| (p, q, coeff))
            .collect(),
    };
    Ok((
        render::render_epoly(params, cli.route, &rows, cli.format)?,
        EXIT_OK,
    ))
}

fn cmd_verify(cli: &Cli) -> Result<(String, i32), CliError> {
    let rep = report::run_sweep(cli.g0_max, cli.k_max, cli.cap, cli.workers)?;
    let code = if rep.all_routes_agree() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    };
    Ok((render::render_report(&rep, cli.format)?, code))
}

fn cmd_strata(cli: &Cli) -> Result<(String, i32), CliError> {
    let k = cli
        .nodes
        .ok_or_else(|| usage("--nodes <K> is required for the strata census"))?;
    let choices = 3u128.checked_pow(k);
    if choices.is_none() || choices.unwrap() > u128::from(cli.cap) {
        return Err(CliError::Resource(format!(
            "strata census of k={k} needs 3^{k} records, over the cap of {}",
            cli.cap
        )));
    }
    let mut rows = Vec::with_capacity(k as usize + 1);
    for r in 0..=k {
        let upstream = strata::enumerate_strata_upstream(k, r)
            .expect("r <= k")
            .len() as u64;
        let downstream = strata::enumerate_strata_downstream(k, r)
            .expect("r <= k")
            .len() as u64;
        rows.push(render::StrataRow {
            r,
            upstream,
            downstream,
            fiber_count: strata::gpb_fiber_count(r),
            local_model: strata::local_model(r),
        });
    }
    Ok((render::render_strata(k, &rows, cli.format)?, EXIT_OK))
}

fn cmd_export(cli: &Cli) -> Result<(String, i32), CliError> {
    let params = resolve_params(cli)?;
    if cli.out.is_none() {
        return Err(usage("export requires --out <PATH>"));
    }
    let table = route_table(cli, params)?;
    Ok((
        render::render_table_export(params, &table, cli.format)?,
        EXIT_OK,
    ))
}
