//! Thin typed client for the MZV service.

use mzv_api as api;
use mzv_core::index_algebra::{Index, IndexCombination};
use mzv_core::regularization::RegPolynomial;
use mzv_core::smzv::TSeries;
use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClientError {
    #[error("transport: {0}")]
    Transport(#[from] reqwest::Error),
    #[error("service error ({status}): {message}")]
    Service { status: u16, message: String },
}

pub struct Client {
    base: String,
    http: reqwest::Client,
}

impl Client {
    /// `base` is the service root, e.g. `http://127.0.0.1:8472`.
    pub fn new(base: impl Into<String>) -> Self {
        let mut base = base.into();
        while base.ends_with('/') {
            base.pop();
        }
        Client { base, http: reqwest::Client::new() }
    }

    async fn post<Req: Serialize, Resp: DeserializeOwned>(
        &self,
        path: &str,
        body: &Req,
    ) -> Result<Resp, ClientError> {
        let resp = self.http.post(format!("{}{path}", self.base)).json(body).send().await?;
        Self::decode(resp).await
    }

    async fn decode<Resp: DeserializeOwned>(
        resp: reqwest::Response,
    ) -> Result<Resp, ClientError> {
        let status = resp.status();
        if status.is_success() {
            return Ok(resp.json().await?);
        }
        let message = match resp.json::<api::ErrorBody>().await {
            Ok(body) => body.error,
            Err(_) => status.canonical_reason().unwrap_or("unknown error").to_string(),
        };
        Err(ClientError::Service { status: status.as_u16(), message })
    }

    pub async fn health(&self) -> Result<api::HealthResponse, ClientError> {
        let resp = self.http.get(format!("{}/health", self.base)).send().await?;
        Self::decode(resp).await
    }

    pub async fn eval(&self, req: &api::EvalRequest) -> Result<api::EvalResponse, ClientError> {
        self.post("/api/v1/eval", req).await
    }

    pub async fn eval_combination(
        &self,
        req: &api::EvalCombinationRequest,
    ) -> Result<api::ValueResponse, ClientError> {
        self.post("/api/v1/eval-combination", req).await
    }

    pub async fn stuffle(
        &self,
        x: Index,
        y: Index,
    ) -> Result<IndexCombination, ClientError> {
        let req = api::BinaryOpRequest { x: api::Operand::Index(x), y: api::Operand::Index(y) };
        self.post("/api/v1/stuffle", &req).await
    }

    pub async fn shuffle(
        &self,
        x: Index,
        y: Index,
    ) -> Result<IndexCombination, ClientError> {
        let req = api::BinaryOpRequest { x: api::Operand::Index(x), y: api::Operand::Index(y) };
        self.post("/api/v1/shuffle", &req).await
    }

    pub async fn sigma(&self, n: u32, x: Index) -> Result<IndexCombination, ClientError> {
        let req = api::SigmaRequest { n, x: api::Operand::Index(x) };
        self.post("/api/v1/sigma", &req).await
    }

    pub async fn m_i_n(
        &self,
        m: u32,
        n: u32,
        index: Index,
    ) -> Result<IndexCombination, ClientError> {
        self.post("/api/v1/min", &api::MInRequest { m, n, index }).await
    }

    pub async fn regularize(&self, index: Index) -> Result<RegPolynomial, ClientError> {
        let req = api::RegularizeRequest { x: api::Operand::Index(index) };
        self.post("/api/v1/regularize", &req).await
    }

    pub async fn zeta_star(&self, m: u32, index: Index) -> Result<IndexCombination, ClientError> {
        self.post("/api/v1/zeta-star", &api::ZetaStarRequest { index, m }).await
    }

    pub async fn smzv(&self, req: &api::SmzvRequest) -> Result<TSeries, ClientError> {
        self.post("/api/v1/smzv", req).await
    }

    pub async fn stadic(
        &self,
        m: u32,
        n: u32,
        index: Index,
    ) -> Result<IndexCombination, ClientError> {
        self.post("/api/v1/stadic", &api::StadicRequest { m, n, index }).await
    }

    pub async fn pslq(&self, req: &api::PslqRequest) -> Result<api::PslqResponse, ClientError> {
        self.post("/api/v1/pslq", req).await
    }

    pub async fn pi2_basis(
        &self,
        req: &api::Pi2BasisRequest,
    ) -> Result<api::Pi2BasisResponse, ClientError> {
        self.post("/api/v1/pi2-basis", req).await
    }

    pub async fn verify(&self, req: &api::VerifyRequest) -> Result<api::VerifyResponse, ClientError> {
        self.post("/api/v1/verify", req).await
    }

    pub async fn suites(&self) -> Result<api::SuitesResponse, ClientError> {
        let resp = self.http.get(format!("{}/api/v1/suites", self.base)).send().await?;
        Self::decode(resp).await
    }
}
