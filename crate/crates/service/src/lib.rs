//! Axum service exposing the laboratory over HTTP/JSON.
//!
//! All handlers run the exact/numeric core on the blocking pool; the
//! shared state holds one evaluator per requested precision so repeated
//! queries hit the in-memory value memo, and all evaluators share the
//! optional on-disk cache configured at startup (or via `MZV_CACHE_DIR`).

mod handlers;
mod state;

use std::net::SocketAddr;
use std::sync::Arc;

use axum::routing::{get, post};
use axum::Router;

pub use state::AppState;

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/health", get(handlers::health))
        .route("/api/v1/eval", post(handlers::eval))
        .route("/api/v1/eval-combination", post(handlers::eval_combination))
        .route("/api/v1/stuffle", post(handlers::stuffle))
        .route("/api/v1/shuffle", post(handlers::shuffle))
        .route("/api/v1/sigma", post(handlers::sigma))
        .route("/api/v1/min", post(handlers::m_i_n))
        .route("/api/v1/regularize", post(handlers::regularize))
        .route("/api/v1/zeta-star", post(handlers::zeta_star))
        .route("/api/v1/smzv", post(handlers::smzv))
        .route("/api/v1/stadic", post(handlers::stadic))
        .route("/api/v1/pslq", post(handlers::pslq))
        .route("/api/v1/pi2-basis", post(handlers::pi2_basis))
        .route("/api/v1/verify", post(handlers::verify))
        .route("/api/v1/suites", get(handlers::suites))
        .with_state(state)
}

/// Binds and serves until the socket closes.  Returns the bound address
/// via the callback so callers can use an ephemeral port.
pub async fn serve(
    addr: SocketAddr,
    state: Arc<AppState>,
    on_bound: impl FnOnce(SocketAddr),
) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    on_bound(listener.local_addr()?);
    axum::serve(listener, router(state)).await
}

/// Serves on an already-bound listener; used for in-process instances.
pub async fn serve_listener(
    listener: tokio::net::TcpListener,
    state: Arc<AppState>,
) -> std::io::Result<()> {
    axum::serve(listener, router(state)).await
}
