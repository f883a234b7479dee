#![cfg(feature = "service")]

mod common;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use common::*;
use euler_tactics::service::{router, AppState};
use euler_tactics::textio::{load_script, print_diagram, ReplayMode};
use http_body_util::BodyExt;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use tower::ServiceExt;

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(b) => req
            .header("content-type", "application/json")
            .body(Body::from(b.to_string())),
        None => req.body(Body::empty()),
    }
    .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = serde_json::from_slice(&bytes)
        .unwrap_or_else(|_| Value::String(String::from_utf8_lossy(&bytes).into_owned()));
    (status, value)
}

async fn create(app: &Router, theorem: &str) -> (String, u64) {
    let (status, body) = call(app, "POST", "/sessions", Some(json!({"theorem": theorem}))).await;
    assert_eq!(status, StatusCode::CREATED, "{body}");
    (body["id"].as_str().unwrap().to_string(), body["revision"].as_u64().unwrap())
}

fn new_app() -> Router {
    router(AppState::new())
}

#[tokio::test]
async fn create_then_prove_with_venn_depth() {
    let app = new_app();
    let (status, body) = call(&app, "POST", "/sessions", Some(json!({"theorem": t_flat_text()}))).await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(body["state"]["subgoals"].as_array().unwrap().len(), 1);
    assert_eq!(body["finished"], json!(false));
    let id = body["id"].as_str().unwrap();
    let sub = &body["state"]["subgoals"][0]["antecedent"];
    assert_eq!(sub["kind"], "conjunction");
    assert_eq!(sub["left"]["left"]["contours"], json!(["B", "C"]));
    assert_eq!(sub["left"]["left"]["missing"], json!([["C"]]));

    let (status, body) = call(
        &app,
        "POST",
        &format!("/sessions/{id}/apply"),
        Some(json!({"move": {"kind": "tactic", "name": "venn_depth", "goal_index": 0}, "revision": 0})),
    )
    .await;
    assert_eq!(status, StatusCode::OK, "{body}");
    assert_eq!(body["finished"], json!(true));
    assert!(body["metrics"]["length"].as_u64().unwrap() >= 1);
    assert!(body["metrics"]["average_clutter"]["den"].as_u64().unwrap() >= 1);
    assert_eq!(body["revision"], json!(1));

    let (status, script) = call(&app, "GET", &format!("/sessions/{id}/script"), None).await;
    assert_eq!(status, StatusCode::OK);
    let proof = load_script(script.as_str().unwrap(), ReplayMode::Rerun).unwrap();
    assert!(proof.is_finished());

    let (_, full) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    let steps = full["steps"].as_array().unwrap();
    assert_eq!(full["states"].as_array().unwrap().len(), steps.len() + 1);
    assert!(steps.iter().all(|s| s["provenance"] == "venn_depth"));
}

#[tokio::test]
async fn error_statuses() {
    let app = new_app();
    let (status, body) = call(&app, "GET", "/sessions/nope", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(body["code"], "not-found");

    let (status, body) = call(
        &app,
        "POST",
        "/sessions",
        Some(json!({"theorem": "{contours: A; zones: () (A); shaded:} |- {contours: A; zones: (A) shaded:}"})),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["code"], "syntax-error");
    assert_eq!(body["span"]["line"], 1);
    assert!(body["span"]["column"].as_u64().unwrap() > 40);

    let (id, rev) = create(&app, &t_flat_text()).await;
    let apply = format!("/sessions/{id}/apply");
    let erase_absent = json!({
        "move": {"kind": "rule", "name": "erase_contour", "goal_index": 0, "path": "L/L"},
        "args": {"contour": "Q"},
        "revision": rev,
    });
    let (status, body) = call(&app, "POST", &apply, Some(erase_absent)).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(body["code"], "contour-absent");

    let (status, body) = call(
        &app,
        "POST",
        &apply,
        Some(json!({"move": {"kind": "tactic", "name": "venn_depth", "goal_index": 0}, "revision": rev + 5})),
    )
    .await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(body["code"], "stale-revision");
    let (_, full) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(full["steps"], json!([]));
    assert_eq!(full["revision"], json!(rev));

    let (status, body) = call(&app, "POST", &apply, Some(json!({"revision": 0}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST, "{body}");

    let (status, body) = call(
        &app,
        "POST",
        &apply,
        Some(json!({"move": {"kind": "rule", "name": "combine", "goal_index": 0, "path": "X"}, "revision": rev})),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(body.get("span").is_some());

    let (status, body) = call(
        &app,
        "POST",
        &apply,
        Some(json!({"move": {"kind": "discharge", "goal_index": 0}, "revision": rev})),
    )
    .await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(body["code"], "not-trivial");
}

#[tokio::test]
async fn undo_and_isolation() {
    let app = new_app();
    let (a, _) = create(&app, &t_flat_text()).await;
    let (b, _) = create(&app, &t_deep_text()).await;
    let tactic = |rev: u64| {
        json!({"move": {"kind": "tactic", "name": "copy_shading_and_contours", "goal_index": 0}, "revision": rev})
    };
    let (status, _) = call(&app, "POST", &format!("/sessions/{a}/apply"), Some(tactic(0))).await;
    assert_eq!(status, StatusCode::OK);
    let (_, b_full) = call(&app, "GET", &format!("/sessions/{b}"), None).await;
    assert_eq!(b_full["steps"], json!([]));
    assert_eq!(b_full["revision"], json!(0));

    let (status, body) = call(
        &app,
        "POST",
        &format!("/sessions/{a}/undo"),
        Some(json!({"state_index": 0, "revision": 1})),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["finished"], json!(false));
    assert_eq!(body["revision"], json!(2));
    assert_eq!(body["metrics"]["length"], json!(0));

    let (status, _) = call(
        &app,
        "POST",
        &format!("/sessions/{a}/undo"),
        Some(json!({"state_index": 9, "revision": 2})),
    )
    .await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);

    // Reads are repeatable.
    let first = call(&app, "GET", &format!("/sessions/{a}"), None).await;
    let second = call(&app, "GET", &format!("/sessions/{a}"), None).await;
    assert_eq!(first, second);
}

#[tokio::test]
async fn moves_respect_level_filter() {
    let app = new_app();
    let (id, _) = create(&app, &t_flat_text()).await;
    let (status, high) = call(&app, "GET", &format!("/sessions/{id}/moves?goal=0&level=high"), None).await;
    assert_eq!(status, StatusCode::OK);
    let tactics: Vec<&Value> = high
        .as_array()
        .unwrap()
        .iter()
        .filter(|m| m["move"]["kind"] == "tactic")
        .collect();
    assert!(tactics.iter().all(|m| m["level"] == "high"));
    for name in ["venn_breadth", "venn_depth", "copy_shading_and_contours"] {
        assert!(tactics.iter().any(|m| m["move"]["name"] == name), "{name}");
    }
    let (_, all) = call(&app, "GET", &format!("/sessions/{id}/moves?goal=0"), None).await;
    assert!(all.as_array().unwrap().len() > high.as_array().unwrap().len());
    let (status, _) = call(&app, "GET", &format!("/sessions/{id}/moves?level=bogus"), None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = call(&app, "GET", "/sessions/none/moves", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (_, reg) = call(&app, "GET", "/tactics", None).await;
    assert_eq!(reg.as_array().unwrap().len(), 13);
}

/// Every advertised move, submitted with one of its listed arguments, is accepted.
#[tokio::test]
async fn random_walks_only_meet_accepted_moves() {
    let app = new_app();
    let mut rng = StdRng::seed_from_u64(7);
    let mut submitted = 0;
    for walk in 0..12 {
        let theorem = if walk % 3 == 0 {
            t_flat_text()
        } else {
            let leaves = rng.gen_range(1..=3);
            let ante = random_tree(&mut rng, &["A", "B", "C"], leaves);
            let cons: euler_tactics::diagram::CompoundDiagram =
                random_unitary(&mut rng, &["A", "B", "C"], 0).into();
            format!("{} |- {}", print_diagram(&ante), print_diagram(&cons))
        };
        let (id, mut rev) = create(&app, &theorem).await;
        for _ in 0..8 {
            let (_, full) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
            if full["finished"] == json!(true) {
                break;
            }
            let (_, menu) = call(&app, "GET", &format!("/sessions/{id}/moves?goal=0&level=all"), None).await;
            let menu = menu.as_array().unwrap();
            let Some(choice) = menu.choose(&mut rng) else { break };
            let args = choice["options"]
                .as_array()
                .and_then(|o| o.choose(&mut rng).cloned())
                .unwrap_or(Value::Null);
            let body = json!({"move": choice["move"], "args": args, "revision": rev});
            let (status, reply) = call(&app, "POST", &format!("/sessions/{id}/apply"), Some(body)).await;
            assert_eq!(status, StatusCode::OK, "rejected {choice}: {reply}");
            rev = reply["revision"].as_u64().unwrap();
            submitted += 1;
        }
    }
    assert!(submitted > 30);
}
