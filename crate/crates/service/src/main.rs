//! Standalone service binary: `mzv-service [--addr host:port]
//! [--precision P] [--cache path]`.

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use mzv_service::AppState;

fn parse_args() -> Result<(SocketAddr, u32, Option<PathBuf>), String> {
    let mut addr: SocketAddr = "127.0.0.1:8472".parse().expect("valid default");
    let mut precision = 60u32;
    let mut cache = None;
    let mut args = std::env::args().skip(1);
    while let Some(flag) = args.next() {
        let mut value = |name: &str| args.next().ok_or(format!("{name} needs a value"));
        match flag.as_str() {
            "--addr" => addr = value("--addr")?.parse().map_err(|e| format!("bad --addr: {e}"))?,
            "--precision" => {
                precision =
                    value("--precision")?.parse().map_err(|e| format!("bad --precision: {e}"))?
            }
            "--cache" => cache = Some(PathBuf::from(value("--cache")?)),
            "--help" | "-h" => {
                println!("usage: mzv-service [--addr host:port] [--precision P] [--cache file]");
                std::process::exit(0);
            }
            other => return Err(format!("unknown flag {other}")),
        }
    }
    Ok((addr, precision, cache))
}

#[tokio::main]
async fn main() {
    tracing_subscriber::fmt()
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env()
                .unwrap_or_else(|_| "info".into()),
        )
        .init();
    let (addr, precision, cache) = match parse_args() {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    };
    let state = Arc::new(AppState::new(precision, cache));
    let result = mzv_service::serve(addr, state, |bound| {
        tracing::info!("listening on http://{bound}");
    })
    .await;
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
