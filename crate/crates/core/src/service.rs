//! HTTP/JSON session service for interactive proving.
//!
//! | method | path | body | reply |
//! |---|---|---|---|
//! | POST | `/sessions` | `{theorem, name?}` | `{id, revision, state, metrics, finished}` |
//! | GET | `/sessions/{id}` | | `{id, name, revision, created, updated, states, steps, metrics, finished}` |
//! | GET | `/sessions/{id}/moves?goal=k&level=high\|low\|all` | | `[MoveDescriptor]` |
//! | POST | `/sessions/{id}/apply` | `{move, args?, revision}` | `{revision, state, metrics, finished}` |
//! | POST | `/sessions/{id}/undo` | `{state_index, revision}` | `{revision, state, metrics, finished}` |
//! | GET | `/sessions/{id}/script` | | script text |
//! | GET | `/tactics` | | registry |
//!
//! Errors are `{code, message, span?}` with status 400 (unparsable input),
//! 404 (unknown session), 409 (stale revision) or 422 (rejected by the engine).

use std::collections::{BTreeSet, HashMap};
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::{Arc, RwLock};
use std::time::{SystemTime, UNIX_EPOCH};

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Path as UrlPath, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tower_http::cors::CorsLayer;

use crate::diagram::{CompoundDiagram, ContourLabel, Path, UnitaryDiagram, Zone};
use crate::engine::{EngineError, Proof, ProofState, StepKind, StepRecord};
use crate::metrics::{clutter_state, proof_metrics};
use crate::rules::{applicable_instances, CopyDirection, Rule, RuleApplication, RuleArg, RuleKind};
use crate::tactics::{self, TacticError, TacticLevel};
use crate::textio::{self, TextError};

// ---------------------------------------------------------------------------
// Errors

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    code: String,
    message: String,
    span: Option<textio::SourceSpan>,
}

impl ApiError {
    fn new(status: StatusCode, code: impl Into<String>, message: impl Into<String>) -> Self {
        ApiError {
            status,
            code: code.into(),
            message: message.into(),
            span: None,
        }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "bad-request", message)
    }

    fn not_found(id: &str) -> Self {
        Self::new(StatusCode::NOT_FOUND, "not-found", format!("no session `{id}`"))
    }
}

impl From<TextError> for ApiError {
    fn from(e: TextError) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            code: e.code().to_string(),
            message: e.message(),
            span: Some(e.span()),
        }
    }
}

impl From<EngineError> for ApiError {
    fn from(e: EngineError) -> Self {
        Self::new(StatusCode::UNPROCESSABLE_ENTITY, e.code(), e.to_string())
    }
}

impl From<TacticError> for ApiError {
    fn from(e: TacticError) -> Self {
        Self::new(StatusCode::UNPROCESSABLE_ENTITY, e.code(), e.to_string())
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        Self::bad_request(e.body_text())
    }
}

impl From<QueryRejection> for ApiError {
    fn from(e: QueryRejection) -> Self {
        Self::bad_request(e.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let mut body = json!({"code": self.code, "message": self.message});
        if let Some(span) = self.span {
            body["span"] = json!(span);
        }
        (self.status, Json(body)).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

// ---------------------------------------------------------------------------
// JSON views

fn zone_json(z: &Zone) -> Value {
    json!(z.in_set())
}

fn zones_json<'a>(zs: impl IntoIterator<Item = &'a Zone>) -> Value {
    Value::Array(zs.into_iter().map(zone_json).collect())
}

fn unitary_json(d: &UnitaryDiagram) -> Value {
    json!({
        "kind": "unitary",
        "contours": d.contours(),
        "zones": zones_json(d.zones()),
        "shaded": zones_json(d.shaded()),
        "missing": zones_json(&d.missing_zones()),
        "text": textio::print_unitary(d),
    })
}

pub fn diagram_json(d: &CompoundDiagram) -> Value {
    match d {
        CompoundDiagram::Unitary(u) => unitary_json(u),
        CompoundDiagram::Conjunction(l, r) => json!({
            "kind": "conjunction",
            "left": diagram_json(l),
            "right": diagram_json(r),
            "text": textio::print_diagram(d),
        }),
        CompoundDiagram::Implication(a, c) => json!({
            "kind": "implication",
            "antecedent": diagram_json(a),
            "consequent": diagram_json(c),
            "text": textio::print_diagram(d),
        }),
    }
}

pub fn state_json(s: &ProofState) -> Value {
    let subgoals: Vec<Value> = s
        .subgoals()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            json!({
                "index": i,
                "antecedent": diagram_json(g.antecedent()),
                "consequent": diagram_json(g.consequent()),
                "trivial": g.is_trivial(),
                "text": textio::print_theorem(g),
            })
        })
        .collect();
    json!({"subgoals": subgoals, "clutter": clutter_state(s)})
}

fn step_json(step: &StepRecord) -> Value {
    let mut v = json!({
        "text": textio::print_step(step),
        "provenance": step.provenance,
    });
    match &step.kind {
        StepKind::Rule(app) => {
            v["kind"] = json!("rule");
            v["rule"] = json!(app.rule.kind().name());
            v["goal_index"] = json!(app.goal_index);
            v["path"] = json!(app.path.to_string());
            v["args"] = json!(MoveArgs::from(app.rule.arg()));
        }
        StepKind::Discharge(i) => {
            v["kind"] = json!("discharge");
            v["goal_index"] = json!(i);
        }
    }
    v
}

/// Rule arguments on the wire. Which fields are needed depends on the rule.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveArgs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contour: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zone: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zones: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<String>,
}

impl From<RuleArg> for MoveArgs {
    fn from(arg: RuleArg) -> Self {
        let names = |z: &Zone| z.in_set().iter().map(|c| c.to_string()).collect::<Vec<_>>();
        match arg {
            RuleArg::None => MoveArgs::default(),
            RuleArg::Contour(c) => MoveArgs {
                contour: Some(c.to_string()),
                ..MoveArgs::default()
            },
            RuleArg::Zone(z) => MoveArgs {
                zone: Some(names(&z)),
                ..MoveArgs::default()
            },
            RuleArg::CopyContour(d, c) => MoveArgs {
                contour: Some(c.to_string()),
                direction: Some(d.name().to_string()),
                ..MoveArgs::default()
            },
            RuleArg::CopyShading(d, zs) => MoveArgs {
                zones: Some(zs.iter().map(names).collect()),
                direction: Some(d.name().to_string()),
                ..MoveArgs::default()
            },
        }
    }
}

impl MoveArgs {
    fn into_rule(self, kind: RuleKind) -> ApiResult<Rule> {
        let missing = |what: &str| ApiError::bad_request(format!("{} needs `{what}`", kind.name()));
        let label = |s: String| {
            ContourLabel::new(s).map_err(|e| ApiError::bad_request(e.to_string()))
        };
        let zone = |names: Vec<String>| -> ApiResult<Zone> {
            Ok(Zone::new(names.into_iter().map(label).collect::<ApiResult<_>>()?))
        };
        let direction = |d: Option<String>| -> ApiResult<CopyDirection> {
            let d = d.ok_or_else(|| missing("direction"))?;
            CopyDirection::from_name(&d)
                .ok_or_else(|| ApiError::bad_request(format!("unknown direction `{d}`")))
        };
        let arg = match kind {
            RuleKind::EraseContour | RuleKind::IntroduceContour => {
                RuleArg::Contour(label(self.contour.ok_or_else(|| missing("contour"))?)?)
            }
            RuleKind::EraseShading | RuleKind::IntroduceShadedZone | RuleKind::RemoveShadedZone => {
                RuleArg::Zone(zone(self.zone.ok_or_else(|| missing("zone"))?)?)
            }
            RuleKind::Combine | RuleKind::Idempotency => RuleArg::None,
            RuleKind::CopyContour => RuleArg::CopyContour(
                direction(self.direction)?,
                label(self.contour.ok_or_else(|| missing("contour"))?)?,
            ),
            RuleKind::CopyShading => {
                let zones = self.zones.ok_or_else(|| missing("zones"))?;
                RuleArg::CopyShading(
                    direction(self.direction)?,
                    zones.into_iter().map(zone).collect::<ApiResult<_>>()?,
                )
            }
        };
        Ok(Rule::build(kind, arg).expect("argument shape follows the rule kind"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveKind {
    Rule,
    Tactic,
    Discharge,
}

/// What the client names when applying a move.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRef {
    pub kind: MoveKind,
    #[serde(default)]
    pub name: String,
    pub goal_index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

/// One menu entry. For rules, `options` lists every argument the rule accepts here.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveDescriptor {
    #[serde(rename = "move")]
    pub mv: MoveRef,
    pub title: String,
    /// `none`, `contour`, `zone`, `direction+contour` or `direction+zones`.
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<String>,
    #[serde(default)]
    pub options: Vec<MoveArgs>,
}

fn schema(kind: RuleKind) -> &'static str {
    match kind {
        RuleKind::EraseContour | RuleKind::IntroduceContour => "contour",
        RuleKind::EraseShading | RuleKind::IntroduceShadedZone | RuleKind::RemoveShadedZone => {
            "zone"
        }
        RuleKind::Combine | RuleKind::Idempotency => "none",
        RuleKind::CopyContour => "direction+contour",
        RuleKind::CopyShading => "direction+zones",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LevelFilter {
    High,
    Low,
    #[default]
    All,
}

/// Every move available on subgoal `goal`.
pub fn moves(state: &ProofState, goal: usize, level: LevelFilter) -> Vec<MoveDescriptor> {
    let Some(g) = state.subgoals().get(goal) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    if g.is_trivial() {
        out.push(MoveDescriptor {
            mv: MoveRef {
                kind: MoveKind::Discharge,
                name: "discharge".into(),
                goal_index: goal,
                path: None,
            },
            title: "Discharge".into(),
            schema: "none".into(),
            level: None,
            options: Vec::new(),
        });
    }
    let mut context: BTreeSet<ContourLabel> = g.antecedent().contours();
    context.extend(g.consequent().contours());
    for kind in RuleKind::ALL {
        for (path, target) in g.antecedent().subtrees() {
            let options: Vec<MoveArgs> = applicable_instances(kind, target, &context)
                .into_iter()
                .map(|r| r.arg().into())
                .collect();
            if options.is_empty() {
                continue;
            }
            out.push(MoveDescriptor {
                mv: MoveRef {
                    kind: MoveKind::Rule,
                    name: kind.name().into(),
                    goal_index: goal,
                    path: Some(path.to_string()),
                },
                title: kind.to_string(),
                schema: schema(kind).into(),
                level: None,
                options,
            });
        }
    }
    for info in tactics::registry() {
        let shown = match level {
            LevelFilter::All => true,
            LevelFilter::High => info.level == TacticLevel::High,
            LevelFilter::Low => info.level == TacticLevel::Low,
        };
        if shown && tactics::probe(info.name, state, goal) {
            out.push(MoveDescriptor {
                mv: MoveRef {
                    kind: MoveKind::Tactic,
                    name: info.name.into(),
                    goal_index: goal,
                    path: None,
                },
                title: info.title.into(),
                schema: "none".into(),
                level: Some(info.level.name().into()),
                options: Vec::new(),
            });
        }
    }
    out
}

/// Apply a move to `proof`.
pub fn apply_move(proof: &Proof, mv: &MoveRef, args: Option<MoveArgs>) -> ApiResult<Proof> {
    match mv.kind {
        MoveKind::Discharge => Ok(proof.discharge_trivial(mv.goal_index)?),
        MoveKind::Tactic => Ok(tactics::apply_tactic(proof, &mv.name, mv.goal_index)?),
        MoveKind::Rule => {
            let kind = RuleKind::from_name(&mv.name)
                .ok_or_else(|| ApiError::bad_request(format!("unknown rule `{}`", mv.name)))?;
            let path = match &mv.path {
                Some(p) => textio::parse_path(p)?,
                None => Path::root(),
            };
            let rule = args.unwrap_or_default().into_rule(kind)?;
            Ok(proof.apply_rule(RuleApplication {
                goal_index: mv.goal_index,
                path,
                rule,
            })?)
        }
    }
}

// ---------------------------------------------------------------------------
// Sessions

#[derive(Debug, Clone)]
pub struct Session {
    pub id: String,
    pub name: String,
    pub proof: Proof,
    pub revision: u64,
    pub created: u64,
    pub updated: u64,
}

fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs())
}

type SessionCell = Arc<RwLock<Session>>;

/// Shared service state. Each session has its own lock, so sessions never
/// wait on each other and one session's mutations are serialized.
#[derive(Clone, Default)]
pub struct AppState {
    sessions: Arc<RwLock<HashMap<String, SessionCell>>>,
}

impl AppState {
    pub fn new() -> Self {
        Self::default()
    }

    fn get(&self, id: &str) -> ApiResult<SessionCell> {
        self.sessions
            .read()
            .expect("session table lock")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::not_found(id))
    }

    /// Current scripts of all sessions, keyed by id.
    pub fn scripts(&self) -> Vec<(String, String)> {
        let table = self.sessions.read().expect("session table lock");
        table
            .values()
            .map(|cell| {
                let s = cell.read().expect("session lock");
                (s.id.clone(), textio::save_script(&s.proof, &s.name))
            })
            .collect()
    }
}

fn summary(s: &Session) -> Value {
    json!({
        "revision": s.revision,
        "state": state_json(s.proof.current()),
        "metrics": proof_metrics(&s.proof),
        "finished": s.proof.is_finished(),
    })
}

#[derive(Deserialize)]
struct CreateReq {
    theorem: String,
    #[serde(default)]
    name: Option<String>,
}

async fn create(
    State(app): State<AppState>,
    body: Result<Json<CreateReq>, JsonRejection>,
) -> ApiResult<(StatusCode, Json<Value>)> {
    let Json(req) = body?;
    let (parsed_name, theorem) = textio::parse_named_theorem(&req.theorem)?;
    let id = uuid::Uuid::new_v4().simple().to_string();
    let t = now();
    let session = Session {
        id: id.clone(),
        name: req.name.or(parsed_name).unwrap_or_else(|| "theorem".into()),
        proof: Proof::new(theorem),
        revision: 0,
        created: t,
        updated: t,
    };
    let mut body = summary(&session);
    body["id"] = json!(id);
    app.sessions
        .write()
        .expect("session table lock")
        .insert(id.clone(), Arc::new(RwLock::new(session)));
    log::info!("created session {id}");
    Ok((StatusCode::CREATED, Json(body)))
}

async fn show(State(app): State<AppState>, UrlPath(id): UrlPath<String>) -> ApiResult<Json<Value>> {
    let cell = app.get(&id)?;
    let s = cell.read().expect("session lock");
    Ok(Json(json!({
        "id": s.id,
        "name": s.name,
        "revision": s.revision,
        "created": s.created,
        "updated": s.updated,
        "states": s.proof.states().map(state_json).collect::<Vec<_>>(),
        "steps": s.proof.steps().iter().map(step_json).collect::<Vec<_>>(),
        "metrics": proof_metrics(&s.proof),
        "finished": s.proof.is_finished(),
    })))
}

#[derive(Deserialize)]
struct MovesQuery {
    #[serde(default)]
    goal: usize,
    #[serde(default)]
    level: LevelFilter,
}

async fn list_moves(
    State(app): State<AppState>,
    UrlPath(id): UrlPath<String>,
    query: Result<Query<MovesQuery>, QueryRejection>,
) -> ApiResult<Json<Vec<MoveDescriptor>>> {
    let Query(q) = query?;
    let cell = app.get(&id)?;
    let state = cell.read().expect("session lock").proof.current().clone();
    let found = tokio::task::spawn_blocking(move || moves(&state, q.goal, q.level))
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))?;
    Ok(Json(found))
}

#[derive(Deserialize)]
struct ApplyReq {
    #[serde(rename = "move")]
    mv: MoveRef,
    #[serde(default)]
    args: Option<MoveArgs>,
    revision: u64,
}

fn check_revision(s: &Session, revision: u64) -> ApiResult<()> {
    if s.revision == revision {
        Ok(())
    } else {
        Err(ApiError::new(
            StatusCode::CONFLICT,
            "stale-revision",
            format!("revision {revision} is stale; current is {}", s.revision),
        ))
    }
}

fn commit(s: &mut Session, proof: Proof) -> Value {
    s.proof = proof;
    s.revision += 1;
    s.updated = now();
    summary(s)
}

async fn apply(
    State(app): State<AppState>,
    UrlPath(id): UrlPath<String>,
    body: Result<Json<ApplyReq>, JsonRejection>,
) -> ApiResult<Json<Value>> {
    let Json(req) = body?;
    let cell = app.get(&id)?;
    tokio::task::spawn_blocking(move || {
        let mut s = cell.write().expect("session lock");
        check_revision(&s, req.revision)?;
        let proof = apply_move(&s.proof, &req.mv, req.args)?;
        Ok(Json(commit(&mut s, proof)))
    })
    .await
    .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))?
}

#[derive(Deserialize)]
struct UndoReq {
    state_index: usize,
    revision: u64,
}

async fn undo(
    State(app): State<AppState>,
    UrlPath(id): UrlPath<String>,
    body: Result<Json<UndoReq>, JsonRejection>,
) -> ApiResult<Json<Value>> {
    let Json(req) = body?;
    let cell = app.get(&id)?;
    let mut s = cell.write().expect("session lock");
    check_revision(&s, req.revision)?;
    let proof = s.proof.undo_to(req.state_index)?;
    Ok(Json(commit(&mut s, proof)))
}

async fn script(State(app): State<AppState>, UrlPath(id): UrlPath<String>) -> ApiResult<Response> {
    let cell = app.get(&id)?;
    let s = cell.read().expect("session lock");
    let text = textio::save_script(&s.proof, &s.name);
    Ok(([(header::CONTENT_TYPE, "text/plain; charset=utf-8")], text).into_response())
}

async fn list_tactics() -> Json<Value> {
    Json(Value::Array(
        tactics::registry()
            .iter()
            .map(|t| json!({"name": t.name, "title": t.title, "level": t.level.name()}))
            .collect(),
    ))
}

pub fn router(app: AppState) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(show))
        .route("/sessions/{id}/moves", get(list_moves))
        .route("/sessions/{id}/apply", post(apply))
        .route("/sessions/{id}/undo", post(undo))
        .route("/sessions/{id}/script", get(script))
        .route("/tactics", get(list_tactics))
        .layer(CorsLayer::permissive())
        .with_state(app)
}

/// Serve until ctrl-c. With `snapshot_dir`, every session's script is written
/// there on shutdown as `<id>.proof`.
pub async fn serve(addr: SocketAddr, snapshot_dir: Option<PathBuf>) -> std::io::Result<()> {
    let app = AppState::new();
    let listener = tokio::net::TcpListener::bind(addr).await?;
    log::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(app.clone()))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    if let Some(dir) = snapshot_dir {
        std::fs::create_dir_all(&dir)?;
        for (id, text) in app.scripts() {
            std::fs::write(dir.join(format!("{id}.proof")), text)?;
        }
    }
    Ok(())
}
