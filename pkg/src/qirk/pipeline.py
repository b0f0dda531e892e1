"""The ask pipeline: question -> IR -> graph -> candidates -> query -> answers.

:class:`AskEngine` owns the loaded store and index and exposes one call per
use case (ask, compile-only, entity lookup).  Every stage's artifact lands
in the response dict so the UI can show each transformation step; timings
are recorded per stage.  Stage failures raise :class:`StageError` naming
the stage, which the HTTP layer maps onto status codes.
"""

from __future__ import annotations

import time
from typing import Optional

from . import kernels
from .compiler import bind_candidates, emit_sparql, emit_sql, required_keywords
from .config import QirkConfig
from .embed import HttpEmbeddingProvider, TrigramHashProvider
from .errors import (
    ConfigError,
    IrError,
    NoTemplateMatch,
    QirkError,
    RemoteUnavailable,
    TranslationFailed,
)
from .executor import evaluate_aggregate, execute, group_and_rank
from .index import SemanticIndex, build_index
from .ir import build_query_graph, graph_to_dict, parse_ir, render_ir
from .store import KgStore, ingest_dump
from .translate import translate


class StageError(QirkError):
    """A pipeline stage failed; carries the stage name for error reporting."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(str(cause))
        self.stage = stage
        self.cause = cause
        self.position = None
        if isinstance(cause, IrError):
            self.position = {"pos": cause.pos, "line": cause.line,
                             "col": cause.col}


def make_provider(config: QirkConfig):
    if config.embed_endpoint:
        return HttpEmbeddingProvider(config.embed_endpoint)
    return TrigramHashProvider()


class AskEngine:
    def __init__(self, store: KgStore, index: SemanticIndex,
                 config: Optional[QirkConfig] = None):
        self.store = store
        self.index = index
        self.config = config or QirkConfig()
        self._datatypes = {p.id: p.datatype for p in store.properties.values()}

    @classmethod
    def from_config(cls, config: QirkConfig) -> "AskEngine":
        if not config.store:
            raise ConfigError("no store path configured (store = ...)")
        store, _ = ingest_dump(config.store)
        provider = make_provider(config)
        if config.index:
            index = SemanticIndex.load(config.index, provider)
        else:
            index = build_index(store, provider)
        return cls(store=store, index=index, config=config)

    # -- lookups -------------------------------------------------------------

    def entity_url(self, entity_id: str) -> str:
        return self.config.entity_url_template.format(id=entity_id)

    def entity(self, entity_id: str) -> Optional[dict]:
        rec = self.store.entity(entity_id)
        if rec is None:
            return None
        return {
            "id": rec.id,
            "label": rec.label,
            "description": rec.description,
            "popularity": rec.popularity,
            "url": self.entity_url(rec.id),
        }

    # -- pipeline ------------------------------------------------------------

    def ask(self, ir: Optional[str] = None, nl: Optional[str] = None,
            k: Optional[int] = None, run: bool = True) -> dict:
        """Run the pipeline and return the stage-by-stage response dict.

        Exactly one of ``ir``/``nl`` must be given.  ``run=False`` stops
        after query generation (the compile subcommand).
        """
        if (ir is None) == (nl is None):
            raise StageError("input", ValueError(
                "provide exactly one of 'ir' or 'nl'"))
        k = k or self.config.k
        response: dict = {"timings": {}}
        timings = response["timings"]
        started = time.perf_counter()

        def stage(name: str):
            return _StageTimer(name, timings)

        if nl is not None:
            response["question"] = nl
            with stage("translate"):
                try:
                    ir, provenance = translate(nl, self.config.translator())
                except (TranslationFailed, NoTemplateMatch,
                        RemoteUnavailable) as exc:
                    raise StageError("translate", exc) from exc
            response["provenance"] = {
                "mode": provenance.mode,
                "attempts": provenance.attempts,
            }
        response["ir"] = ir

        with stage("parse"):
            try:
                query = parse_ir(ir)
            except IrError as exc:
                raise StageError("parse", exc) from exc
        response["ir"] = render_ir(query)

        with stage("graph"):
            graph = build_query_graph(query)
        response["query_graph"] = graph_to_dict(graph)

        with stage("resolve"):
            sets = {}
            for keyword, kind in required_keywords(graph).items():
                try:
                    sets[keyword] = self.index.resolve_keyword(
                        keyword, kind, k=k,
                        threshold=self.config.score_threshold,
                        popularity_boost=self.config.popularity_boost)
                except QirkError as exc:
                    raise StageError("resolve", exc) from exc
        response["candidates"] = {
            keyword: [
                {"id": c.id, "label": c.label, "score": c.score}
                for c in cs.candidates
            ]
            for keyword, cs in sorted(sets.items())
        }

        with stage("compile"):
            try:
                executable = bind_candidates(
                    graph, sets,
                    class_property=self.config.class_property,
                    property_datatypes=self._datatypes)
                response["sparql"] = emit_sparql(executable)
                response["sql"] = emit_sql(executable)
            except QirkError as exc:
                raise StageError("compile", exc) from exc

        if not run:
            timings["total"] = time.perf_counter() - started
            return response

        with stage("execute"):
            try:
                answers = execute(executable, self.store)
                if executable.aggregate:
                    kind, hvar = executable.aggregate
                    answers = evaluate_aggregate(
                        answers, kind, executable.var_tags.get(hvar, "entity_id"))
            except QirkError as exc:
                raise StageError("execute", exc) from exc

        with stage("rank"):
            groups = group_and_rank(answers)
        response["groups"] = [self._group_dict(g, executable) for g in groups]
        timings["total"] = time.perf_counter() - started
        return response

    def compile_only(self, ir: str, k: Optional[int] = None) -> dict:
        return self.ask(ir=ir, k=k, run=False)

    # -- rendering helpers -----------------------------------------------------

    def _value_dict(self, name: str, value) -> dict:
        out = {"var": name, "type": value.tag}
        if value.tag == "date":
            out["value"] = value.value.isoformat()
        else:
            out["value"] = value.value
        if value.tag == "entity_id":
            out["label"] = self.store.label_of(value.value)
            out["url"] = self.entity_url(value.value)
        return out

    def _group_dict(self, group, executable) -> dict:
        labels = executable.candidate_labels()
        scores = executable.candidate_scores()
        assignment = [
            {
                "var": var,
                "keyword": executable.candidates[var].keyword,
                "id": chosen,
                "label": labels[var].get(chosen, chosen),
                "score": scores[var].get(chosen),
            }
            for var, chosen in group.assignment
        ]
        head_names = (["agg"] if executable.aggregate
                      else executable.head_vars)
        answers = []
        for answer in group.answers:
            values = [self._value_dict(n, v)
                      for n, v in zip(head_names, answer.values)]
            links = {v["value"]: v["url"] for v in values
                     if v["type"] == "entity_id"}
            answers.append({"values": values, "entity_links": links})
        return {
            "assignment": assignment,
            "confidence": group.confidence,
            "answers": answers,
        }


class _StageTimer:
    def __init__(self, name: str, sink: dict):
        self.name = name
        self.sink = sink

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.sink[self.name] = time.perf_counter() - self.t0
        return False


def build_and_save_index(store: KgStore, config: QirkConfig, out_path) -> int:
    """Build the vector index for a store and persist it; returns the count."""
    provider = make_provider(config)
    index = build_index(store, provider)
    index.save(out_path)
    kernels.warmup()
    return index.count
