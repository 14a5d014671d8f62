"""HTTP/JSON service over the shared engine facade.

Stateless apart from the content-addressed diagram store; safe to restart.
Status codes: 400 malformed payload, 404 unknown id, 409 arity mismatch,
422 rule inapplicable or diagram not evaluable, 504 search budget
exhausted.
"""
from __future__ import annotations

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware

from . import interface as core
from .cospan import ArityMismatch, OpenGraph
from .prover import Budget
from .rules import TermSyntaxError
from .rules import ArityMismatch as TermArityMismatch
from .rules import parse_term, translate
from .semantics import NonWireOpenNode


def create_app(snapshot_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="openzx", version="1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = core.DiagramStore(snapshot_dir)
    rules = core.basic_rules()

    def load(payload: dict, key: str) -> OpenGraph:
        ident = payload.get(key)
        if not isinstance(ident, str):
            raise HTTPException(400, f"missing or malformed {key}")
        try:
            return store.get(ident)
        except core.UnknownDiagram:
            raise HTTPException(404, f"unknown diagram id {ident}")

    def stored(f: OpenGraph) -> dict:
        key = store.put(f)
        return {"id": key, "diagram": store.get(key).to_json()}

    @app.post("/diagrams")
    def post_diagram(payload: dict):
        try:
            if "term" in payload:
                diagram = translate(parse_term(payload["term"]))
            else:
                diagram = OpenGraph.from_json(payload)
        except (TermSyntaxError, TermArityMismatch) as exc:
            raise HTTPException(400, str(exc))
        except (KeyError, TypeError, ValueError) as exc:
            raise HTTPException(400, f"malformed diagram: {exc}")
        return stored(diagram)

    @app.get("/diagrams/{ident}")
    def get_diagram(ident: str):
        try:
            return store.get(ident).to_json()
        except core.UnknownDiagram:
            raise HTTPException(404, f"unknown diagram id {ident}")

    @app.post("/compose")
    def post_compose(payload: dict):
        f = load(payload, "leftId")
        g = load(payload, "rightId")
        try:
            return stored(core.compose(f, g))
        except ArityMismatch as exc:
            raise HTTPException(409, str(exc))

    @app.post("/tensor")
    def post_tensor(payload: dict):
        f = load(payload, "leftId")
        g = load(payload, "rightId")
        return stored(core.tensor(f, g))

    @app.get("/rules")
    def get_rules():
        return core.rules_json(rules)

    @app.post("/matches")
    def post_matches(payload: dict):
        host = load(payload, "diagramId")
        name = payload.get("rule")
        direction = payload.get("direction", "forward")
        if not isinstance(name, str) or direction not in ("forward",
                                                          "reversed"):
            raise HTTPException(400, "malformed rule or direction")
        try:
            found = core.enumerate_matches(rules, name, host, direction)
        except core.UnknownRule as exc:
            raise HTTPException(400, f"unknown rule: {exc}")
        return {"matches": [m.to_json() for m in found]}

    @app.post("/rewrite")
    def post_rewrite(payload: dict):
        host = load(payload, "diagramId")
        name = payload.get("rule")
        index = payload.get("matchIndex")
        direction = payload.get("direction", "forward")
        if not isinstance(name, str) or not isinstance(index, int):
            raise HTTPException(400, "malformed rule or matchIndex")
        try:
            result, witness = core.rewrite(rules, name, host, index,
                                           direction)
        except core.UnknownRule as exc:
            raise HTTPException(400, f"unknown rule: {exc}")
        except core.StaleMatch as exc:
            raise HTTPException(422, str(exc))
        out = stored(result)
        return {"resultId": out["id"], "result": out["diagram"],
                "witness": witness.to_json()}

    @app.post("/prove")
    def post_prove(payload: dict):
        f = load(payload, "lhsId")
        g = load(payload, "rhsId")
        budget = Budget.from_json(payload.get("budget", {}) or {})
        try:
            derivation = core.prove_diagrams(f, g, budget)
        except ArityMismatch as exc:
            raise HTTPException(409, str(exc))
        if not derivation.found:
            raise HTTPException(504, "no derivation found within budget")
        return derivation.to_json()

    @app.post("/eval")
    def post_eval(payload: dict):
        f = load(payload, "diagramId")
        try:
            return core.eval_diagram(f)
        except NonWireOpenNode as exc:
            raise HTTPException(422, str(exc))

    return app
