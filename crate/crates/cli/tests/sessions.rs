use std::sync::Arc;

use axum::body::{to_bytes, Body};
use axum::http::{Request, StatusCode};
use axum::Router;
use posort::server::router;
use posort::session::{Session, SessionStore};
use posort_core::enumerate::all_posets;
use posort_core::{PairOutcome, Poset, PosetJson};
use serde_json::{json, Value};
use tower::ServiceExt;

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(v) => req
            .header("content-type", "application/json")
            .body(Body::from(v.to_string())),
        None => req.body(Body::empty()),
    }
    .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = to_bytes(resp.into_body(), usize::MAX).await.unwrap();
    let value = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap_or_else(|_| panic!("non-JSON body {bytes:?}"))
    };
    (status, value)
}

fn items(n: usize) -> Value {
    json!((0..n).map(|i| format!("item{i}")).collect::<Vec<_>>())
}

/// Answers pending comparisons per `truth` until done; returns the number of answers.
async fn play(app: &Router, id: &str, truth: &Poset) -> usize {
    let mut answered = 0;
    loop {
        let (status, view) = call(app, "GET", &format!("/sessions/{id}"), None).await;
        assert_eq!(status, StatusCode::OK);
        if view["done"].as_bool().unwrap() {
            assert!(view["pending"].is_null());
            return answered;
        }
        let (a, b) = (
            view["pending"]["a"].as_u64().unwrap() as usize,
            view["pending"]["b"].as_u64().unwrap() as usize,
        );
        let body = json!({ "a": a, "b": b, "outcome": truth.compare(a, b) });
        let (status, _) = call(app, "POST", &format!("/sessions/{id}/answer"), Some(body)).await;
        assert_eq!(status, StatusCode::OK);
        answered += 1;
    }
}

#[tokio::test]
async fn scripted_session_learns_the_truth() {
    let app = router(Arc::new(SessionStore::in_memory()));
    let truth = Poset::from_relations(4, &[(0, 1), (0, 2), (3, 2)]).unwrap();
    let (status, created) = call(
        &app,
        "POST",
        "/sessions",
        Some(json!({ "items": items(4) })),
    )
    .await;
    assert_eq!(status, StatusCode::CREATED);
    let id = created["id"].as_str().unwrap().to_string();
    let (a, b) = (
        created["pending"]["a"].as_u64().unwrap(),
        created["pending"]["b"].as_u64().unwrap(),
    );
    assert!(a < 4 && b < 4 && a != b);

    let (status, _) = call(&app, "GET", &format!("/sessions/{id}/result"), None).await;
    assert_eq!(status, StatusCode::CONFLICT);

    let asked = play(&app, &id, &truth).await;
    assert!(asked >= truth.q_set().len() && asked <= 6, "{asked}");

    let (status, result) = call(&app, "GET", &format!("/sessions/{id}/result"), None).await;
    assert_eq!(status, StatusCode::OK);
    let learned = Poset::try_from(serde_json::from_value::<PosetJson>(result).unwrap()).unwrap();
    assert_eq!(learned, truth);

    let (_, view) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(view["items"], items(4));
    assert_eq!(view["known_relations"], json!([[0, 1], [0, 2], [3, 2]]));
    assert_eq!(view["hasse"], json!([[0, 1], [0, 2], [3, 2]]));
    assert_eq!(view["known_incomparable"], json!([[0, 3], [1, 2], [1, 3]]));
    assert_eq!(view["history"].as_array().unwrap().len(), asked);
}

#[test]
fn every_four_element_order_is_learned() {
    for truth in all_posets(4).unwrap() {
        let mut s = Session::new("t".into(), (0..4).map(|i| i.to_string()).collect(), 0).unwrap();
        let mut asked = 0;
        while let Some(p) = s.pending() {
            s.answer(p.a, p.b, truth.compare(p.a, p.b)).unwrap();
            asked += 1;
        }
        let learned = Poset::try_from(s.result().unwrap()).unwrap();
        assert_eq!(learned, truth);
        assert!(asked >= truth.q_set().len() && asked <= 6);
        // deduced pairs are never asked
        let history = s.view().history;
        assert_eq!(history.len(), asked);
    }
}

#[tokio::test]
async fn answers_must_target_the_pending_pair() {
    let app = router(Arc::new(SessionStore::in_memory()));
    let (_, created) = call(
        &app,
        "POST",
        "/sessions",
        Some(json!({ "items": items(4) })),
    )
    .await;
    let id = created["id"].as_str().unwrap();
    let pending = created["pending"].clone();
    let (a, b) = (
        pending["a"].as_u64().unwrap(),
        pending["b"].as_u64().unwrap(),
    );
    let other = (0..4u64).find(|&x| x != a && x != b).unwrap();

    let (status, body) = call(
        &app,
        "POST",
        &format!("/sessions/{id}/answer"),
        Some(json!({ "a": a, "b": other, "outcome": "less" })),
    )
    .await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(body["error"].is_string());
    assert_eq!(body["pending"], pending);

    // the pair may be given in either order, the outcome is read accordingly
    let (status, view) = call(
        &app,
        "POST",
        &format!("/sessions/{id}/answer"),
        Some(json!({ "a": b, "b": a, "outcome": "greater" })),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(view["known_relations"], json!([[a, b]]));
}

#[tokio::test]
async fn contradicting_answers_are_rejected() {
    let app = router(Arc::new(SessionStore::in_memory()));
    let (_, created) = call(
        &app,
        "POST",
        "/sessions",
        Some(json!({ "items": ["x", "y", "z"] })),
    )
    .await;
    let id = created["id"].as_str().unwrap();
    let answer = |a: usize, b: usize, o: &str| json!({ "a": a, "b": b, "outcome": o });
    let uri = format!("/sessions/{id}/answer");
    assert_eq!(
        call(&app, "POST", &uri, Some(answer(0, 1, "less"))).await.0,
        StatusCode::OK
    );
    assert_eq!(
        call(&app, "POST", &uri, Some(answer(0, 2, "incomparable")))
            .await
            .0,
        StatusCode::OK
    );
    // 1 < 2 would put 0 below 2
    let (status, body) = call(&app, "POST", &uri, Some(answer(1, 2, "less"))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(body["error"].as_str().unwrap().contains("contradicts"));
    let (_, view) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(view["pending"], json!({ "a": 1, "b": 2 }));
    assert_eq!(view["history"].as_array().unwrap().len(), 2);
}

#[tokio::test]
async fn malformed_requests_get_json_errors() {
    let app = router(Arc::new(SessionStore::in_memory()));
    for items in [
        json!([]),
        json!(["a"]),
        json!(["a", "a"]),
        json!(["a", " "]),
    ] {
        let (status, body) = call(&app, "POST", "/sessions", Some(json!({ "items": items }))).await;
        assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY, "{items}");
        assert!(body["error"].is_string());
    }
    let (status, body) = call(&app, "POST", "/sessions", Some(json!({ "names": [] }))).await;
    assert!(status.is_client_error());
    assert!(body["error"].is_string());

    let req = Request::builder()
        .method("POST")
        .uri("/sessions")
        .header("content-type", "application/json")
        .body(Body::from("{not json"))
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    assert_eq!(resp.status(), StatusCode::BAD_REQUEST);
    let body: Value =
        serde_json::from_slice(&to_bytes(resp.into_body(), usize::MAX).await.unwrap()).unwrap();
    assert!(body["error"].is_string());

    let (status, body) = call(&app, "GET", "/sessions/nope", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert!(body["error"].is_string());
    let (status, _) = call(&app, "GET", "/elsewhere", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);

    let (_, created) = call(
        &app,
        "POST",
        "/sessions",
        Some(json!({ "items": items(2) })),
    )
    .await;
    let id = created["id"].as_str().unwrap();
    let (status, body) = call(
        &app,
        "POST",
        &format!("/sessions/{id}/answer"),
        Some(json!({ "a": 0, "b": 1, "outcome": "sideways" })),
    )
    .await;
    assert!(status.is_client_error());
    assert!(body["error"].is_string());
}

#[tokio::test]
async fn sessions_survive_a_restart() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sessions.jsonl");
    let truth = Poset::from_relations(5, &[(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();

    let store = Arc::new(SessionStore::open(&path).unwrap());
    let app = router(store.clone());
    let (_, created) = call(
        &app,
        "POST",
        "/sessions",
        Some(json!({ "items": items(5) })),
    )
    .await;
    let id = created["id"].as_str().unwrap().to_string();
    for _ in 0..3 {
        let (_, view) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
        let (a, b) = (
            view["pending"]["a"].as_u64().unwrap() as usize,
            view["pending"]["b"].as_u64().unwrap() as usize,
        );
        let body = json!({ "a": a, "b": b, "outcome": truth.compare(a, b) });
        call(&app, "POST", &format!("/sessions/{id}/answer"), Some(body)).await;
    }
    let (_, before) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    drop(app);
    drop(store);

    let reopened = router(Arc::new(SessionStore::open(&path).unwrap()));
    let (status, after) = call(&reopened, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(before, after);

    play(&reopened, &id, &truth).await;
    drop(reopened);
    let again = router(Arc::new(SessionStore::open(&path).unwrap()));
    let (status, result) = call(&again, "GET", &format!("/sessions/{id}/result"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(
        Poset::try_from(serde_json::from_value::<PosetJson>(result).unwrap()).unwrap(),
        truth
    );
}

#[test]
fn corrupt_logs_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.jsonl");
    std::fs::write(
        &path,
        "{\"event\":\"answer\",\"id\":\"x\",\"a\":0,\"b\":1,\"outcome\":\"less\"}\n",
    )
    .unwrap();
    let err = SessionStore::open(&path).unwrap_err().to_string();
    assert!(err.contains("line 1"), "{err}");
}

#[test]
fn outcome_names_round_trip() {
    for o in PairOutcome::ALL {
        let v = serde_json::to_value(o).unwrap();
        assert_eq!(v, json!(o.as_str()));
    }
}
