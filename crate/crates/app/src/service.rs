//! Local stateless HTTP service.
//!
//! | route            | request                               | response                          |
//! |------------------|---------------------------------------|-----------------------------------|
//! | `POST /mutate`   | `{"v":1,"matrix":[[..]],"vertex":j}`  | `{"v":1,"matrix":[[..]]}`         |
//! | `POST /classify` | `{"v":1,"matrix":[[..]]}`             | `{"v":1,"family",..,"certificate"}` |
//! | `GET /seed`      | `?family=D-tilde&n=10`                | `{"v":1,"family","n","matrix"}`   |
//! | `GET /health`    |                                       | `{"v":1,"status":"ok",..}`        |
//!
//! `v` may be omitted in requests; any value other than 1 is rejected.
//! Errors are `{"v":1,"error":"..."}` with status 400 for malformed input and
//! 422 for well-formed input that is not a valid quiver, vertex or seed.

use std::collections::HashMap;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use quiverlab_classify::{classify, TypeVerdict};
use quiverlab_core::{seed, ClassRegistry, Family, Quiver, SeedSpec};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use tower_http::cors::CorsLayer;

pub const PROTOCOL_VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MutateRequest {
    pub v: Option<u32>,
    pub matrix: Vec<Vec<i32>>,
    pub vertex: usize,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatrixResponse {
    pub v: u32,
    pub matrix: Vec<Vec<i32>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyRequest {
    pub v: Option<u32>,
    pub matrix: Vec<Vec<i32>>,
}

#[derive(Debug, Serialize)]
pub struct ClassifyResponse {
    pub v: u32,
    #[serde(flatten)]
    pub verdict: TypeVerdict,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SeedResponse {
    pub v: u32,
    pub family: Family,
    pub n: usize,
    pub matrix: Vec<Vec<i32>>,
}

#[derive(Debug, Serialize)]
pub struct ErrorBody {
    pub v: u32,
    pub error: String,
}

pub struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(ErrorBody { v: PROTOCOL_VERSION, error: self.1 })).into_response()
    }
}

fn bad(msg: impl Into<String>) -> ApiError {
    ApiError(StatusCode::BAD_REQUEST, msg.into())
}

fn invalid(msg: impl Into<String>) -> ApiError {
    ApiError(StatusCode::UNPROCESSABLE_ENTITY, msg.into())
}

fn parse<T: DeserializeOwned>(body: &[u8]) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| bad(format!("malformed request body: {e}")))
}

fn check_version(v: Option<u32>) -> Result<(), ApiError> {
    match v {
        None | Some(PROTOCOL_VERSION) => Ok(()),
        Some(v) => Err(bad(format!("unsupported protocol version {v}"))),
    }
}

fn quiver(rows: &[Vec<i32>]) -> Result<Quiver, ApiError> {
    Quiver::from_matrix(rows).map_err(|e| invalid(e.to_string()))
}

pub type Shared = Arc<ClassRegistry>;

pub fn router(registry: Shared) -> Router {
    Router::new()
        .route("/mutate", post(mutate))
        .route("/classify", post(classify_handler))
        .route("/seed", get(seed_handler))
        .route("/health", get(health))
        .layer(CorsLayer::permissive())
        .with_state(registry)
}

async fn mutate(body: Bytes) -> Result<Json<MatrixResponse>, ApiError> {
    let req: MutateRequest = parse(&body)?;
    check_version(req.v)?;
    let q = quiver(&req.matrix)?;
    let m = q.mutate(req.vertex).map_err(|e| invalid(e.to_string()))?;
    Ok(Json(MatrixResponse { v: PROTOCOL_VERSION, matrix: m.to_matrix() }))
}

async fn classify_handler(State(reg): State<Shared>, body: Bytes) -> Result<Json<ClassifyResponse>, ApiError> {
    let req: ClassifyRequest = parse(&body)?;
    check_version(req.v)?;
    let q = quiver(&req.matrix)?;
    let verdict = tokio::task::spawn_blocking(move || classify(&q, (!reg.is_empty()).then_some(reg.as_ref())))
        .await
        .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?;
    Ok(Json(ClassifyResponse { v: PROTOCOL_VERSION, verdict }))
}

async fn seed_handler(Query(params): Query<HashMap<String, String>>) -> Result<Json<SeedResponse>, ApiError> {
    let family: Family = params
        .get("family")
        .ok_or_else(|| bad("missing query parameter `family`"))?
        .parse()
        .map_err(|e: quiverlab_core::QuiverError| invalid(e.to_string()))?;
    let n: usize = params
        .get("n")
        .ok_or_else(|| bad("missing query parameter `n`"))?
        .parse()
        .map_err(|_| bad("query parameter `n` is not a vertex count"))?;
    let q = SeedSpec::new(family, n).and_then(seed).map_err(|e| invalid(e.to_string()))?;
    Ok(Json(SeedResponse { v: PROTOCOL_VERSION, family, n, matrix: q.to_matrix() }))
}

async fn health(State(reg): State<Shared>) -> Json<serde_json::Value> {
    let entries: Vec<String> = reg.entries().map(|e| format!("{} n={}", e.family, e.n)).collect();
    Json(serde_json::json!({ "v": PROTOCOL_VERSION, "status": "ok", "registry_entries": entries }))
}

/// Binds `addr` and serves until interrupted.
pub async fn serve(registry: ClassRegistry, addr: &str) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(Arc::new(registry)))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
