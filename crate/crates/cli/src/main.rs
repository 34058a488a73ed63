//! `mzv`: command-line front end.
//!
//! Every command talks HTTP/JSON to a service instance.  With `--server`
//! (or `MZV_SERVER_URL`) the command is sent to a running daemon; without
//! one, an ephemeral in-process service is started on a loopback port for
//! the duration of the command, so the CLI stays self-contained.

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use mzv_api as api;
use mzv_client::Client;
use mzv_core::index_algebra::Index;
use mzv_service::AppState;

#[derive(Parser)]
#[command(
    name = "mzv",
    version,
    about = "Symbolic and numeric laboratory for multiple zeta values",
    after_help = "Indices are comma-separated positive integers (\"1,3,1,3\"), the pattern \
                  shorthand \"{1,3}^2\" (optionally with a suffix: \"{3,1}^2,3\"), or \"-\" for \
                  the empty index."
)]
struct Cli {
    /// Decimal digits of guaranteed precision for numeric results.
    #[arg(long, global = true, default_value_t = 60)]
    precision: u32,

    /// Truncation order for t-adic series.
    #[arg(long, global = true, default_value_t = 3)]
    order: usize,

    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    /// Extra relation-basis generators, as a JSON file of index arrays.
    #[arg(long, global = true)]
    basis: Option<PathBuf>,

    /// Base URL of a running service; falls back to MZV_SERVER_URL, then
    /// to an ephemeral in-process service.
    #[arg(long, global = true)]
    server: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the HTTP service in the foreground.
    Serve {
        /// Listen address.
        #[arg(long, default_value = "127.0.0.1:8472")]
        addr: SocketAddr,
    },
    /// Evaluate an admissible MZV numerically (or its regularized value
    /// with --star).
    Eval {
        index: String,
        /// Evaluate the regularized constant term for any index.
        #[arg(long)]
        star: bool,
    },
    /// Stuffle product of two indices.
    Stuffle { x: String, y: String },
    /// Shuffle of two indices (entries as atoms).
    Shuffle { x: String, y: String },
    /// Weight-raising map applied to an index.
    Sigma { n: u32, index: String },
    /// Signed convolution mIn of an index.
    Min { m: u32, n: u32, index: String },
    /// Regularization as a polynomial in T.
    Reg { index: String },
    /// t-adic symmetric MZV as a truncated series.
    Smzv {
        index: String,
        /// Print the symbolic coefficients instead of numeric values.
        #[arg(long)]
        symbolic: bool,
    },
    /// Search an integer relation among decimal values.
    Pslq {
        /// Decimal values, all accurate to the configured precision.
        values: Vec<String>,
        /// Largest allowed coefficient magnitude.
        #[arg(long)]
        max_coeff: Option<u64>,
    },
    /// Run a named verification suite.
    Verify {
        /// Suite name; `mzv verify --list` shows all.
        suite: Option<String>,
        /// List available suites.
        #[arg(long)]
        list: bool,
    },
}

fn parse_index(s: &str) -> Result<Index> {
    s.parse::<Index>().with_context(|| format!("cannot parse index {s:?}"))
}

fn load_basis(path: &Option<PathBuf>) -> Result<Vec<Index>> {
    match path {
        None => Ok(Vec::new()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .with_context(|| format!("cannot read basis file {}", p.display()))?;
            let extra: Vec<Index> =
                serde_json::from_str(&text).context("basis file must be a JSON array of index arrays")?;
            Ok(extra)
        }
    }
}

/// Connects to the configured server, or starts an in-process one on an
/// ephemeral loopback port.
async fn connect(cli: &Cli) -> Result<Client> {
    let configured =
        cli.server.clone().or_else(|| std::env::var("MZV_SERVER_URL").ok().filter(|s| !s.is_empty()));
    if let Some(url) = configured {
        return Ok(Client::new(url));
    }
    let state = Arc::new(AppState::new(cli.precision, None));
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", 0))
        .await
        .context("cannot bind loopback port for the in-process service")?;
    let addr = listener.local_addr()?;
    tokio::spawn(mzv_service::serve_listener(listener, state));
    Ok(Client::new(format!("http://{addr}")))
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

async fn run(cli: Cli) -> Result<i32> {
    match &cli.command {
        Command::Serve { addr } => {
            let cache = None; // MZV_CACHE_DIR still applies inside the evaluator
            let state = Arc::new(AppState::new(cli.precision, cache));
            eprintln!("listening on http://{addr}");
            mzv_service::serve(*addr, state, |_| {}).await?;
            Ok(0)
        }
        Command::Eval { index, star } => {
            let client = connect(&cli).await?;
            let req = api::EvalRequest {
                index: parse_index(index)?,
                digits: Some(cli.precision),
                star: *star,
            };
            let resp = client.eval(&req).await?;
            if cli.json {
                print_json(&resp)?;
            } else {
                println!("{}", resp.value);
            }
            Ok(0)
        }
        Command::Stuffle { x, y } => {
            let client = connect(&cli).await?;
            let out = client.stuffle(parse_index(x)?, parse_index(y)?).await?;
            if cli.json { print_json(&out)? } else { println!("{out}") }
            Ok(0)
        }
        Command::Shuffle { x, y } => {
            let client = connect(&cli).await?;
            let out = client.shuffle(parse_index(x)?, parse_index(y)?).await?;
            if cli.json { print_json(&out)? } else { println!("{out}") }
            Ok(0)
        }
        Command::Sigma { n, index } => {
            let client = connect(&cli).await?;
            let out = client.sigma(*n, parse_index(index)?).await?;
            if cli.json { print_json(&out)? } else { println!("{out}") }
            Ok(0)
        }
        Command::Min { m, n, index } => {
            let client = connect(&cli).await?;
            let out = client.m_i_n(*m, *n, parse_index(index)?).await?;
            if cli.json { print_json(&out)? } else { println!("{out}") }
            Ok(0)
        }
        Command::Reg { index } => {
            let client = connect(&cli).await?;
            let out = client.regularize(parse_index(index)?).await?;
            if cli.json { print_json(&out)? } else { println!("{out}") }
            Ok(0)
        }
        Command::Smzv { index, symbolic } => {
            let client = connect(&cli).await?;
            let req = api::SmzvRequest {
                index: parse_index(index)?,
                order: cli.order,
                digits: Some(cli.precision),
                symbolic: *symbolic,
            };
            let out = client.smzv(&req).await?;
            if cli.json { print_json(&out)? } else { println!("{out}") }
            Ok(0)
        }
        Command::Pslq { values, max_coeff } => {
            if cli.precision < 20 {
                bail!("pslq needs at least 20 digits of precision");
            }
            if values.len() < 2 {
                bail!("pslq needs at least two values");
            }
            let client = connect(&cli).await?;
            let req = api::PslqRequest {
                values: values.clone(),
                digits: Some(cli.precision),
                max_coeff: *max_coeff,
            };
            let out = client.pslq(&req).await?;
            if cli.json {
                print_json(&out)?;
            } else {
                match (&out.relation, &out.residual) {
                    (Some(rel), Some(residual)) => {
                        println!("relation: [{}]  residual <= {residual}", rel.join(", "))
                    }
                    _ => println!("no relation found"),
                }
            }
            Ok(0)
        }
        Command::Verify { suite, list } => {
            let client = connect(&cli).await?;
            if *list {
                let suites = client.suites().await?.suites;
                if cli.json { print_json(&suites)? } else { println!("{}", suites.join("\n")) }
                return Ok(0);
            }
            let Some(name) = suite else {
                bail!("give a suite name or --list");
            };
            let req = api::VerifyRequest {
                suite: name.clone(),
                digits: Some(cli.precision),
                extra_generators: load_basis(&cli.basis)?,
            };
            let resp = client.verify(&req).await?;
            if cli.json {
                // the pinned report format: an array of case objects
                print_json(&resp.report)?;
            } else {
                for case in &resp.report {
                    let mark = if case.status.is_pass() { "PASS" } else { "FAIL" };
                    let mut line = format!("{mark} {}", case.case);
                    if let Some(residual) = &case.residual {
                        line.push_str(&format!("  (residual <= {residual})"));
                    }
                    if let Some(detail) = &case.detail {
                        line.push_str(&format!("  [{detail}]"));
                    }
                    println!("{line}");
                }
                let passed = resp.report.iter().filter(|c| c.status.is_pass()).count();
                println!(
                    "{}: {passed}/{} cases passed at {} digits",
                    resp.suite,
                    resp.report.len(),
                    resp.digits
                );
            }
            Ok(if resp.passed { 0 } else { 1 })
        }
    }
}

#[tokio::main]
async fn main() {
    let cli = Cli::parse();
    match run(cli).await {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}
