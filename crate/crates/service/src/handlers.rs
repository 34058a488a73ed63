//! Request handlers.  Core calls are CPU-bound and run on the blocking
//! pool; payload types live in `mzv-api`.

use std::sync::Arc;

use axum::extract::State;
use axum::http::StatusCode;
use axum::Json;
use mzv_api as api;
use mzv_core::index_algebra::{self, IndexCombination};
use mzv_core::numeric_eval::{BigReal, EvalError};
use mzv_core::regularization::{self, RegPolynomial};
use mzv_core::relations::{self, RelationError, RelationOptions};
use mzv_core::smzv;

type ApiError = (StatusCode, Json<api::ErrorBody>);
type ApiResult<T> = Result<Json<T>, ApiError>;

fn bad_request(msg: impl ToString) -> ApiError {
    (StatusCode::BAD_REQUEST, Json(api::ErrorBody { error: msg.to_string() }))
}

fn internal(msg: impl ToString) -> ApiError {
    (StatusCode::INTERNAL_SERVER_ERROR, Json(api::ErrorBody { error: msg.to_string() }))
}

fn eval_error(e: EvalError) -> ApiError {
    match e {
        EvalError::NotAdmissible(_) => bad_request(e),
        EvalError::Cache(_) => internal(e),
    }
}

/// Runs a CPU-bound closure off the async executor.
async fn blocking<T: Send + 'static>(
    f: impl FnOnce() -> Result<T, ApiError> + Send + 'static,
) -> ApiResult<T> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| internal(format!("worker panicked: {e}")))?
        .map(Json)
}

pub async fn health() -> Json<api::HealthResponse> {
    Json(api::HealthResponse {
        status: "ok".to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

pub async fn eval(
    State(state): State<Arc<AppStateRef>>,
    Json(req): Json<api::EvalRequest>,
) -> ApiResult<api::EvalResponse> {
    blocking(move || {
        let ev = state.evaluator(req.digits).map_err(eval_error)?;
        let value = if req.star {
            ev.zeta_star_numeric(&req.index)
        } else {
            ev.eval_admissible(&req.index).map_err(eval_error)?
        };
        Ok(api::EvalResponse {
            index: req.index,
            digits: ev.precision_digits(),
            value: ev.decimal(&value),
        })
    })
    .await
}

pub async fn eval_combination(
    State(state): State<Arc<AppStateRef>>,
    Json(req): Json<api::EvalCombinationRequest>,
) -> ApiResult<api::ValueResponse> {
    blocking(move || {
        let ev = state.evaluator(req.digits).map_err(eval_error)?;
        let value = ev.eval_combination(&req.combination).map_err(eval_error)?;
        Ok(api::ValueResponse { digits: ev.precision_digits(), value: ev.decimal(&value) })
    })
    .await
}

pub async fn stuffle(
    Json(req): Json<api::BinaryOpRequest>,
) -> ApiResult<IndexCombination> {
    blocking(move || {
        Ok(index_algebra::stuffle(&req.x.into_combination(), &req.y.into_combination()))
    })
    .await
}

pub async fn shuffle(
    Json(req): Json<api::BinaryOpRequest>,
) -> ApiResult<IndexCombination> {
    blocking(move || {
        Ok(index_algebra::index_shuffle(&req.x.into_combination(), &req.y.into_combination()))
    })
    .await
}

pub async fn sigma(Json(req): Json<api::SigmaRequest>) -> ApiResult<IndexCombination> {
    blocking(move || Ok(index_algebra::sigma(req.n, &req.x.into_combination()))).await
}

pub async fn m_i_n(Json(req): Json<api::MInRequest>) -> ApiResult<IndexCombination> {
    blocking(move || Ok(index_algebra::m_i_n(req.m, req.n, &req.index))).await
}

pub async fn regularize(Json(req): Json<api::RegularizeRequest>) -> ApiResult<RegPolynomial> {
    blocking(move || Ok(regularization::regularize(&req.x.into_combination()))).await
}

pub async fn zeta_star(Json(req): Json<api::ZetaStarRequest>) -> ApiResult<IndexCombination> {
    blocking(move || Ok(regularization::zeta_star_m_symbolic(req.m, &req.index))).await
}

pub async fn smzv(
    State(state): State<Arc<AppStateRef>>,
    Json(req): Json<api::SmzvRequest>,
) -> ApiResult<smzv::TSeries> {
    if req.order == 0 {
        return Err(bad_request("order must be at least 1"));
    }
    blocking(move || {
        if req.symbolic {
            Ok(smzv::t_adic_smzv_symbolic(&req.index, req.order))
        } else {
            let ev = state.evaluator(req.digits).map_err(eval_error)?;
            Ok(smzv::t_adic_smzv(&req.index, req.order, &ev))
        }
    })
    .await
}

pub async fn stadic(Json(req): Json<api::StadicRequest>) -> ApiResult<IndexCombination> {
    blocking(move || Ok(smzv::stadic_coefficient(req.m, req.n, &req.index))).await
}

pub async fn pslq(
    State(state): State<Arc<AppStateRef>>,
    Json(req): Json<api::PslqRequest>,
) -> ApiResult<api::PslqResponse> {
    blocking(move || {
        let digits = req.digits.unwrap_or(state.default_digits());
        let cfg = state.config(Some(digits));
        let bits = cfg.working_bits();
        let values: Vec<BigReal> = req
            .values
            .iter()
            .map(|s| BigReal::parse_decimal(s, bits, Some(digits)))
            .collect::<Result<_, _>>()
            .map_err(bad_request)?;
        let mut opts = RelationOptions::new(digits);
        if let Some(bound) = req.max_coeff {
            opts.coeff_bound = bound;
        }
        match relations::integer_relation(&values, &opts) {
            Ok(Some(relation)) => {
                let mut combo = BigReal::zero(bits);
                for (c, v) in relation.iter().zip(&values) {
                    combo = combo.add(&v.mul_int(c));
                }
                Ok(api::PslqResponse {
                    relation: Some(relation.iter().map(|c| c.to_string()).collect()),
                    residual: Some(combo.residual_bound()),
                })
            }
            Ok(None) => Ok(api::PslqResponse { relation: None, residual: None }),
            Err(e @ RelationError::InsufficientPrecision { .. }) => Err(bad_request(e)),
            Err(e) => Err(bad_request(e)),
        }
    })
    .await
}

pub async fn pi2_basis(
    State(state): State<Arc<AppStateRef>>,
    Json(req): Json<api::Pi2BasisRequest>,
) -> ApiResult<api::Pi2BasisResponse> {
    blocking(move || {
        let ev = state.evaluator(req.digits).map_err(eval_error)?;
        let generators = relations::merged_generators(&req.extra_generators);
        let constants = relations::pi2_basis(req.weight, &generators)
            .iter()
            .map(|m| api::LabeledConstant {
                label: m.label(),
                value: ev.decimal(&m.value(&ev)),
            })
            .collect();
        Ok(api::Pi2BasisResponse { weight: req.weight, constants })
    })
    .await
}

pub async fn verify(
    State(state): State<Arc<AppStateRef>>,
    Json(req): Json<api::VerifyRequest>,
) -> ApiResult<api::VerifyResponse> {
    blocking(move || {
        let cfg = state.config(req.digits);
        let report = relations::run_suite(&req.suite, &cfg, &req.extra_generators)
            .map_err(bad_request)?;
        Ok(api::VerifyResponse {
            suite: report.suite,
            digits: report.digits,
            passed: report.cases.iter().all(|c| c.status.is_pass()),
            report: report.cases,
        })
    })
    .await
}

pub async fn suites() -> Json<api::SuitesResponse> {
    Json(api::SuitesResponse { suites: relations::suite_names() })
}

pub(crate) use crate::state::AppState as AppStateRef;
