import csv
import io

import pytest
from fastapi.testclient import TestClient

from nsukit.service import create_app


@pytest.fixture(scope="module")
def client():
    app = create_app()
    with TestClient(app) as c:
        yield c


def test_create_session_and_fetch_state(client):
    created = client.post("/sessions").json()
    assert created["id"]
    state = client.get("/sessions/%s/state" % created["id"]).json()["state"]
    assert state["qud"] == []
    assert state["facts"] == []
    assert state["text"].startswith("u_a:")


def test_unknown_session_is_404(client):
    assert client.get("/sessions/nope/state").status_code == 404
    assert client.post("/sessions/nope/utterance", json={"text": "hi"}).status_code == 404


def test_seeded_assertion_then_ack_shows_accept(client):
    sid = client.post("/sessions").json()["id"]
    seeded = client.post("/sessions/%s/utterance" % sid, json={
        "text": "I am going to the party.",
        "speaker": "system",
        "semantics": "Assert(goingToParty(IND_1))",
    }).json()
    assert seeded["state"]["qud"][0]["q"] == "goingToParty(IND_1)"
    answered = client.post("/sessions/%s/utterance" % sid,
                           json={"text": "OK."}).json()
    acts = {e["value"]: e["prob"] for e in answered["state"]["a_a"]}
    assert max(acts, key=acts.get) == "Accept()"
    assert "goingToParty(IND_1)" in answered["state"]["facts"]
    assert answered["state"]["max_qud_index"] == 0
    log = client.get("/sessions/%s/log" % sid).json()["turns"]
    assert len(log) == 2
    assert log[-1]["snapshot"] == answered["state"]["text"]


def test_short_answer_with_annotations(client):
    sid = client.post("/sessions").json()["id"]
    client.post("/sessions/%s/utterance" % sid, json={
        "text": "What time do you want to leave?",
        "speaker": "system",
        "semantics": "Ask(departTime(X_1))",
    })
    resolved = client.post("/sessions/%s/utterance" % sid, json={
        "text": "Before 6 P.M.",
        "nsu_class": "ShortAns",
        "answer": "T_1",
        "fec": ["before(T_1,T_2)", "time(T_2,18:00)"],
    }).json()
    facts = resolved["state"]["facts"]
    assert "departTime(T_1)" in facts
    assert "before(T_1,T_2)" in facts and "time(T_2,18:00)" in facts


def test_bad_inputs_are_400(client):
    sid = client.post("/sessions").json()["id"]
    url = "/sessions/%s/utterance" % sid
    assert client.post(url, json={"text": "x", "semantics": "Broken("}).status_code == 400
    assert client.post(url, json={"text": "x", "nsu_class": "Bogus"}).status_code == 400
    assert client.post(url, json={"text": "x", "speaker": "ghost"}).status_code == 400


def test_classify_endpoint(client):
    out = client.post("/classify", json={
        "nsu": "Yes.", "antecedent": "Are you going to the party?"}).json()
    assert out["argmax"]
    total = sum(e["prob"] for e in out["distribution"])
    assert total == pytest.approx(1.0, abs=1e-9)
    assert out["entropy"] >= 0.0


def test_al_label_round_trip(client):
    first = client.get("/al/next").json()
    assert first["task"] is not None
    task = first["task"]
    assert task["entropy"] >= 0.0
    assert task["nsu"]
    curve_before = client.get("/al/curve").text
    rows_before = list(csv.DictReader(io.StringIO(curve_before)))

    # the same pending task comes back until it is labeled
    again = client.get("/al/next").json()["task"]
    assert again["id"] == task["id"]

    labeled = client.post("/al/%d/label" % task["id"], json={"label": "Ack"}).json()
    assert labeled["labeled_count"] == int(rows_before[-1]["labeled_count"]) + 1

    curve_after = client.get("/al/curve").text
    rows_after = list(csv.DictReader(io.StringIO(curve_after)))
    assert len(rows_after) == len(rows_before) + 1
    assert int(rows_after[-1]["labeled_count"]) == labeled["labeled_count"]
    assert float(rows_after[-1]["accuracy"]) == pytest.approx(labeled["accuracy"])

    next_task = client.get("/al/next").json()["task"]
    assert next_task["id"] != task["id"]


def test_shutdown_flushes_turn_logs(tmp_path):
    log_dir = tmp_path / "logs"
    app = create_app(log_dir=log_dir)
    with TestClient(app) as scoped:
        sid = scoped.post("/sessions").json()["id"]
        scoped.post("/sessions/%s/utterance" % sid, json={"text": "Yes."})
    dumped = log_dir / ("%s.log" % sid)
    assert dumped.exists()
    content = dumped.read_text(encoding="utf-8")
    assert "[user] Yes." in content
    assert "u_a: Yes." in content


def test_al_error_paths(client):
    task = client.get("/al/next").json()["task"]
    assert client.post("/al/%d/label" % task["id"],
                       json={"label": "Bogus"}).status_code == 400
    assert client.post("/al/999999/label", json={"label": "Ack"}).status_code == 404
    remaining = client.get("/al/next").json()["remaining"]
    skipped = client.post("/al/%d/skip" % task["id"]).json()
    assert skipped["remaining"] == remaining  # skip never shrinks the pool
    replacement = client.get("/al/next").json()["task"]
    assert replacement["id"] != task["id"]
    assert client.post("/al/%d/label" % task["id"],
                       json={"label": "Ack"}).status_code == 409
