//! In-memory session service over HTTP with JSON bodies.
//!
//! Routes:
//! - `POST /sessions` creates a session.
//! - `DELETE /sessions/{id}` drops one.
//! - `GET /sessions/{id}/definitions` lists its user definitions.
//! - `POST /evaluate` runs source in a session.
//! - `GET /demos`, `POST /demo` and `POST /search` need no session.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{delete, get, post};
use axum::{Json, Router};
use coda::context::RecordKind;
use coda::demos::{run_demo, DEMO_NAMES};
use coda::spaces::{self, SampleConfig};
use coda::{read_literal, render_string, Context, Data, EvalTrace};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::commands::{default_vocabulary, error_messages, run_source};

pub const MAX_BUDGET: usize = 10_000;
const HISTORY: usize = 256;

pub struct Session {
    pub context: Context,
    pub history: Vec<(String, EvalTrace)>,
    last_used: Instant,
}

pub struct AppState {
    base: Context,
    sessions: Mutex<HashMap<String, Arc<tokio::sync::Mutex<Session>>>>,
    idle: Duration,
}

impl AppState {
    pub fn new(base: Context, idle: Duration) -> Arc<AppState> {
        Arc::new(AppState {
            base,
            sessions: Mutex::new(HashMap::new()),
            idle,
        })
    }

    fn session(&self, id: &str) -> Option<Arc<tokio::sync::Mutex<Session>>> {
        self.sessions.lock().unwrap().get(id).cloned()
    }

    pub fn session_count(&self) -> usize {
        self.sessions.lock().unwrap().len()
    }

    /// Drops sessions unused for longer than the idle limit. Sessions busy
    /// evaluating are kept.
    pub fn evict_idle(&self) -> usize {
        let mut sessions = self.sessions.lock().unwrap();
        let before = sessions.len();
        sessions.retain(|_, s| match s.try_lock() {
            Ok(s) => s.last_used.elapsed() <= self.idle,
            Err(_) => true,
        });
        before - sessions.len()
    }
}

struct ApiError {
    status: StatusCode,
    code: &'static str,
    message: String,
    extra: Value,
}

impl ApiError {
    fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> ApiError {
        ApiError {
            status,
            code,
            message: message.into(),
            extra: Value::Null,
        }
    }

    fn bad_request(message: impl Into<String>) -> ApiError {
        ApiError::new(StatusCode::BAD_REQUEST, "malformed_request", message)
    }

    fn no_session(id: &str) -> ApiError {
        ApiError::new(StatusCode::NOT_FOUND, "unknown_session", format!("no session {id:?}"))
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let mut body = json!({ "error": self.code, "message": self.message });
        if let Value::Object(extra) = self.extra {
            body.as_object_mut().unwrap().extend(extra);
        }
        (self.status, Json(body)).into_response()
    }
}

type ApiResult = Result<Response, ApiError>;

fn parse<T: DeserializeOwned>(body: &[u8]) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request(e.to_string()))
}

fn budget(requested: Option<usize>) -> Result<usize, ApiError> {
    match requested.unwrap_or(coda::eval::DEFAULT_BUDGET) {
        b if b > MAX_BUDGET => Err(ApiError::bad_request(format!("budget above {MAX_BUDGET}"))),
        b => Ok(b),
    }
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))
}

async fn create_session(State(app): State<Arc<AppState>>) -> Response {
    let id = format!("{:032x}", rand::random::<u128>());
    let session = Session {
        context: app.base.clone(),
        history: Vec::new(),
        last_used: Instant::now(),
    };
    app.sessions
        .lock()
        .unwrap()
        .insert(id.clone(), Arc::new(tokio::sync::Mutex::new(session)));
    (StatusCode::CREATED, Json(json!({ "session_id": id }))).into_response()
}

async fn delete_session(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult {
    match app.sessions.lock().unwrap().remove(&id) {
        Some(_) => Ok(StatusCode::NO_CONTENT.into_response()),
        None => Err(ApiError::no_session(&id)),
    }
}

async fn definitions(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult {
    let session = app.session(&id).ok_or_else(|| ApiError::no_session(&id))?;
    let mut session = session.lock().await;
    session.last_used = Instant::now();
    let ctx = &session.context;
    let records: Vec<Value> = ctx
        .records()
        .iter()
        .map(|r| {
            json!({
                "name": String::from_utf8_lossy(&r.name),
                "kind": match r.kind { RecordKind::Def => "def", RecordKind::Let => "let" },
                "body": render_string(&r.body),
            })
        })
        .collect();
    Ok(Json(json!({
        "session_id": id,
        "definitions": records,
        "names": ctx.names(),
        "serialized": ctx.serialize(),
    }))
    .into_response())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EvaluateRequest {
    session_id: String,
    source: String,
    budget: Option<usize>,
    #[serde(default)]
    trace: bool,
}

fn trace_json(trace: &EvalTrace, steps: bool) -> Value {
    let steps = if steps {
        trace.lines()
    } else {
        vec![render_string(trace.last())]
    };
    json!({
        "steps": steps,
        "status": trace.status.as_str(),
        "logic": trace.logic.as_str(),
        "undecidable_hint": trace.undecidable_hint,
    })
}

async fn evaluate(State(app): State<Arc<AppState>>, body: Bytes) -> ApiResult {
    let req: EvaluateRequest = parse(&body)?;
    let budget = budget(req.budget)?;
    let session = app.session(&req.session_id).ok_or_else(|| ApiError::no_session(&req.session_id))?;
    let mut session = session.lock().await;
    session.last_used = Instant::now();
    let ctx = session.context.clone();
    let source = req.source.clone();
    let trace = blocking(move || run_source(&ctx, source.as_bytes(), budget)).await?;
    let mut body = trace_json(&trace, req.trace);
    body["session_id"] = json!(req.session_id);
    let violations: Vec<String> = error_messages(trace.last())
        .into_iter()
        .filter(|m| m.starts_with("axiom violation"))
        .collect();
    if !violations.is_empty() {
        return Err(ApiError {
            status: StatusCode::CONFLICT,
            code: "axiom_violation",
            message: violations.join("; "),
            extra: body,
        });
    }
    session.context = trace.context.clone();
    session.history.push((req.source, trace));
    if session.history.len() > HISTORY {
        session.history.remove(0);
    }
    Ok(Json(body).into_response())
}

async fn list_demos() -> Response {
    Json(json!({ "demos": DEMO_NAMES })).into_response()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DemoRequest {
    name: String,
    budget: Option<usize>,
    alphabet: Option<String>,
}

async fn demo(body: Bytes) -> ApiResult {
    let req: DemoRequest = parse(&body)?;
    let budget = budget(req.budget)?;
    if !DEMO_NAMES.contains(&req.name.as_str()) {
        return Err(ApiError::new(
            StatusCode::NOT_FOUND,
            "unknown_demo",
            format!("no demo {:?}; one of {}", req.name, DEMO_NAMES.join(", ")),
        ));
    }
    let report = blocking(move || run_demo(&req.name, budget, req.alphabet.as_deref().map(str::as_bytes))).await?;
    let report = report.expect("name checked above");
    let mut body = trace_json(&report.trace, true);
    body["name"] = json!(report.name);
    body["source"] = json!(report.source);
    body["verdict"] = json!(report.verdict.as_str());
    body["narrative"] = json!(report.narrative);
    body["self_inclusion"] = json!(report.self_inclusion.map(|s| format!("{s:?}")));
    body["text"] = json!(report.to_text());
    Ok(Json(body).into_response())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SearchRequest {
    positives: Vec<String>,
    negatives: Vec<String>,
    vocabulary: Option<Vec<String>>,
    max_terms: Option<usize>,
    budget: Option<usize>,
    random: Option<usize>,
    seed: Option<u64>,
}

fn literals(items: &[String]) -> Result<Vec<Data>, ApiError> {
    items
        .iter()
        .map(|s| read_literal(s.as_bytes()).map_err(|e| ApiError::bad_request(format!("{s:?}: {e}"))))
        .collect()
}

async fn search(State(app): State<Arc<AppState>>, body: Bytes) -> ApiResult {
    let req: SearchRequest = parse(&body)?;
    let positives = literals(&req.positives)?;
    let negatives = literals(&req.negatives)?;
    let max_terms = req.max_terms.unwrap_or(2);
    if max_terms > 3 {
        return Err(ApiError::bad_request("max_terms above 3"));
    }
    let cfg = SampleConfig {
        budget: budget(req.budget)?,
        seed: req.seed.unwrap_or(0),
        ..SampleConfig::default()
    };
    let vocabulary = req.vocabulary.unwrap_or_else(default_vocabulary);
    let ctx = app.base.clone();
    let report = blocking(move || match req.random {
        Some(tries) => spaces::search_random(&ctx, &positives, &negatives, &vocabulary, tries, &cfg),
        None => spaces::search_classifier(&ctx, &positives, &negatives, &vocabulary, max_terms, &cfg),
    })
    .await?
    .map_err(|e| ApiError::bad_request(e.to_string()))?;
    let accepted: Vec<Value> = report
        .accepted
        .iter()
        .map(|c| json!({ "source": c.source, "polarity": c.polarity.as_str() }))
        .collect();
    Ok(Json(json!({ "tried": report.tried, "accepted": accepted, "text": report.to_text() })).into_response())
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", delete(delete_session))
        .route("/sessions/{id}/definitions", get(definitions))
        .route("/evaluate", post(evaluate))
        .route("/demos", get(list_demos))
        .route("/demo", post(demo))
        .route("/search", post(search))
        .with_state(state)
}

/// Serves until the listener fails, sweeping idle sessions in the
/// background.
pub async fn serve(listener: tokio::net::TcpListener, state: Arc<AppState>) -> std::io::Result<()> {
    let sweeper = state.clone();
    let period = (state.idle / 4).clamp(Duration::from_secs(1), Duration::from_secs(60));
    tokio::spawn(async move {
        let mut tick = tokio::time::interval(period);
        loop {
            tick.tick().await;
            sweeper.evict_idle();
        }
    });
    axum::serve(listener, router(state)).await
}
