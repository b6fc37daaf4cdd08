"""HTTP session and annotation service consumed by the browser console.

Every number the console displays is computed here; state snapshots are
the engine's canonical serialization plus a structured JSON mirror.
"""

from __future__ import annotations

import threading
from contextlib import asynccontextmanager
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel, Field

from .active import (CurvePoint, PoolInstance, curve_to_csv, prediction_entropy,
                     split_records)
from .bundled import bundled_corpus
from .config import Config, DEFAULT_CONFIG
from .corpus import CorpusStore, NO_NSU, NSU_CLASSES
from .evaluate import evaluate
from .features import EXTENDED, extract
from .ruleset import RuleSet, default_ruleset
from .semantics import NO_ACT, parse_act, parse_predicate, parse_term
from .session import Session
from .state import DialogueState, render_value, snapshot
from .tree import TreeParams, dataset_from_corpus, predict, train_tree


def state_to_json(state: DialogueState) -> dict:
    def dist(d):
        return [{"value": render_value(v), "prob": p}
                for v, p in sorted(d.items(), key=lambda kv: (-kv[1], render_value(kv[0])))]

    return {
        "u_a": state.u_a,
        "u_b": state.u_b,
        "a_a": dist(state.a_a),
        "a_b": dist(state.a_b),
        "nsu_a": dist(state.nsu_a),
        "new_fec": sorted(p.render() for p in state.new_fec),
        "facts": sorted(p.render() for p in state.facts),
        "qud": [{"index": i, "utt": e.utt, "q": e.q.render(),
                 "fec": sorted(p.render() for p in e.fec)}
                for i, e in enumerate(state.qud, start=1)],
        "max_qud": [{"index": v, "prob": p}
                    for v, p in sorted(state.max_qud.items(), key=lambda kv: -kv[1])],
        "max_qud_index": state.max_qud_index(),
        "text": snapshot(state),
    }


class UtteranceBody(BaseModel):
    text: str
    speaker: str = "user"                 # "user" | "system"
    nsu_class: str | None = None          # gold class override
    semantics: str | None = None          # dialogue act, e.g. Assert(p(IND_1))
    answer: str | None = None             # answer term for short answers
    fec: list[str] = Field(default_factory=list)


class ClassifyBody(BaseModel):
    nsu: str
    antecedent: str = ""


class LabelBody(BaseModel):
    label: str


@dataclass
class AlTask:
    task_id: int
    instance: PoolInstance
    nsu_text: str
    antecedent_text: str
    entropy: float
    status: str = "pending"  # pending | labeled | skipped
    label: str | None = None


class AlManager:
    """Single annotation campaign over a gold-labeled pool."""

    def __init__(self, store: CorpusStore, records, config: Config,
                 params: TreeParams = TreeParams(), seed: int = 0):
        self._lock = threading.Lock()
        self.params = params
        train_recs, dev_recs, pool_recs = split_records(records, seed, config)
        self.train = dataset_from_corpus(store, train_recs, EXTENDED, config)
        self.dev = dataset_from_corpus(store, dev_recs, EXTENDED, config)
        self.pool: list[PoolInstance] = []
        self._texts: dict[tuple[str, int], tuple[str, str]] = {}
        for rec in pool_recs:
            nsu, ant = store.resolve(rec)
            prov = (rec.file_id, rec.sentence_id)
            vec = extract(nsu, ant, EXTENDED, config)
            self.pool.append(PoolInstance(vec, prov, rec.label))
            self._texts[prov] = (nsu.text(), ant.text())
        self.tasks: dict[int, AlTask] = {}
        self._next_id = 1
        self._skipped: set[tuple[str, int]] = set()
        self._current: AlTask | None = None
        self.model = train_tree(self.train, params)
        self.curve: list[CurvePoint] = [self._measure()]

    def _measure(self) -> CurvePoint:
        report = evaluate(self.model, self.dev)
        prec, rec, f1 = report.weighted
        return CurvePoint(len(self.train), report.accuracy, prec, rec, f1)

    def pair_text(self, instance: PoolInstance) -> tuple[str, str]:
        return self._texts.get(instance.provenance, ("", ""))

    def next_task(self) -> AlTask | None:
        with self._lock:
            if self._current is not None and self._current.status == "pending":
                return self._current
            best, best_entropy = None, -1.0
            for inst in self.pool:
                if inst.provenance in self._skipped:
                    continue
                h = prediction_entropy(predict(self.model, inst.features.values))
                if h > best_entropy:
                    best, best_entropy = inst, h
            if best is None:
                return None
            nsu_text, ant_text = self.pair_text(best)
            task = AlTask(self._next_id, best, nsu_text, ant_text, best_entropy)
            self._next_id += 1
            self.tasks[task.task_id] = task
            self._current = task
            return task

    def label(self, task_id: int, label: str) -> CurvePoint:
        with self._lock:
            task = self.tasks.get(task_id)
            if task is None:
                raise KeyError(task_id)
            if task.status != "pending":
                raise ValueError("task is %s and immutable" % task.status)
            task.status = "labeled"
            task.label = label
            self.pool.remove(task.instance)
            rows = list(self.train.rows) + [(dict(task.instance.features.values), label)]
            self.train = self.train.with_rows(rows)
            self.model = train_tree(self.train, self.params)
            point = self._measure()
            self.curve.append(point)
            self._current = None
            return point

    def skip(self, task_id: int) -> int:
        with self._lock:
            task = self.tasks.get(task_id)
            if task is None:
                raise KeyError(task_id)
            if task.status == "pending":
                task.status = "skipped"
                self._skipped.add(task.instance.provenance)
                self._current = None
            return len(self.pool)


def create_app(config: Config = DEFAULT_CONFIG,
               ruleset: RuleSet | None = None,
               params: TreeParams = TreeParams(),
               seed: int = 0,
               log_dir: str | Path | None = None) -> FastAPI:
    sessions: dict[str, Session] = {}
    locks: dict[str, threading.Lock] = {}
    registry_lock = threading.Lock()

    @asynccontextmanager
    async def lifespan(_app: FastAPI):
        yield
        if log_dir is not None:
            target = Path(log_dir)
            target.mkdir(parents=True, exist_ok=True)
            for sid, session in sessions.items():
                dump = "".join("[%s] %s\n%s\n" % (rec.speaker, rec.text, rec.snapshot)
                               for rec in session.turn_log)
                (target / ("%s.log" % sid)).write_text(dump, encoding="utf-8")

    app = FastAPI(title="nsukit service", lifespan=lifespan)
    # the console is served from its own origin during development
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    rules = ruleset or default_ruleset(config)

    store, records = bundled_corpus()
    classifier = train_tree(dataset_from_corpus(store, records, EXTENDED, config), params)
    al = AlManager(store, records, config, params, seed)

    def get_session(session_id: str) -> tuple[Session, threading.Lock]:
        session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return session, locks[session_id]

    @app.post("/sessions")
    def create_session() -> dict:
        session = Session(ruleset=rules, config=config, classifier=classifier)
        with registry_lock:
            sessions[session.id] = session
            locks[session.id] = threading.Lock()
        return {"id": session.id, "state": state_to_json(session.state)}

    @app.post("/sessions/{session_id}/utterance")
    def post_utterance(session_id: str, body: UtteranceBody) -> dict:
        session, lock = get_session(session_id)
        try:
            act = parse_act(body.semantics) if body.semantics else None
            fec = frozenset(parse_predicate(p) for p in body.fec)
            answer = parse_term(body.answer) if body.answer else None
            if body.nsu_class is not None and \
                    body.nsu_class not in NSU_CLASSES + (NO_NSU,):
                raise ValueError("unknown NSU class %r" % body.nsu_class)
            if body.speaker not in ("user", "system"):
                raise ValueError("speaker must be user or system")
        except HTTPException:
            raise
        except Exception as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        with lock:
            if body.speaker == "system":
                session.system_turn(body.text, act or NO_ACT, fec)
            else:
                session.user_turn(body.text, nsu_class=body.nsu_class,
                                  act=act, answer=answer, fec=fec)
            record = session.turn_log[-1]
            return {"state": state_to_json(session.state),
                    "warning": record.warning,
                    "fired": [t.rule for t in record.traces
                              if any(es for es, _ in t.outcomes)]}

    @app.get("/sessions/{session_id}/state")
    def get_state(session_id: str) -> dict:
        session, lock = get_session(session_id)
        with lock:
            return {"state": state_to_json(session.state)}

    @app.get("/sessions/{session_id}/log")
    def get_log(session_id: str) -> dict:
        session, lock = get_session(session_id)
        with lock:
            return {"turns": [
                {"speaker": rec.speaker, "text": rec.text,
                 "warning": rec.warning, "snapshot": rec.snapshot}
                for rec in session.turn_log]}

    @app.post("/classify")
    def classify(body: ClassifyBody) -> dict:
        probe = Session(ruleset=rules, config=config, classifier=classifier)
        dist = probe.classify_pair(body.nsu, body.antecedent)
        ranked = sorted(dist.items(), key=lambda kv: (-kv[1], kv[0]))
        return {"distribution": [{"value": v, "prob": p} for v, p in ranked],
                "argmax": ranked[0][0],
                "entropy": prediction_entropy(dist.map_probs())}

    @app.get("/al/next")
    def al_next() -> dict:
        task = al.next_task()
        if task is None:
            return {"task": None, "remaining": len(al.pool)}
        dist = predict(al.model, task.instance.features.values)
        ranked = sorted(dist.items(), key=lambda kv: (-kv[1], kv[0]))
        return {"task": {
            "id": task.task_id,
            "nsu": task.nsu_text,
            "antecedent": task.antecedent_text,
            "entropy": task.entropy,
            "predicted": [{"value": v, "prob": p} for v, p in ranked],
        }, "remaining": len(al.pool)}

    @app.post("/al/{task_id}/label")
    def al_label(task_id: int, body: LabelBody) -> dict:
        if body.label not in NSU_CLASSES:
            raise HTTPException(status_code=400, detail="unknown NSU class")
        try:
            point = al.label(task_id, body.label)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown task") from None
        except ValueError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        return {"labeled_count": point.labeled_count,
                "accuracy": point.accuracy,
                "f1": point.f1}

    @app.post("/al/{task_id}/skip")
    def al_skip(task_id: int) -> dict:
        try:
            remaining = al.skip(task_id)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown task") from None
        return {"remaining": remaining}

    @app.get("/al/curve", response_class=PlainTextResponse)
    def al_curve() -> str:
        return curve_to_csv(al.curve)

    return app
