"""Knowledge-graph question answering via a keyword-repairable query IR."""

from .compiler import CompiledQuery, bind_candidates, compile_query, emit_sparql, emit_sql
from .config import QirkConfig, load_config
from .embed import HttpEmbeddingProvider, TrigramHashProvider
from .executor import Answer, AnswerGroup, evaluate_aggregate, execute, group_and_rank
from .index import Candidate, CandidateSet, SemanticIndex, build_index
from .ir import IrAtom, IrQuery, IrTerm, QueryGraph, build_query_graph, parse_ir, render_ir
from .pipeline import AskEngine, StageError
from .store import KgStore, KgStatement, TypedValue, emit_relational_schema, ingest_dump
from .translate import TranslatorConfig, translate

__version__ = "0.1.0"

__all__ = [
    "Answer", "AnswerGroup", "AskEngine", "Candidate", "CandidateSet",
    "CompiledQuery", "HttpEmbeddingProvider", "IrAtom", "IrQuery", "IrTerm",
    "KgStatement", "KgStore", "QirkConfig", "QueryGraph", "SemanticIndex",
    "StageError", "TranslatorConfig", "TrigramHashProvider", "TypedValue",
    "bind_candidates", "build_index", "build_query_graph", "compile_query",
    "emit_relational_schema", "emit_sparql", "emit_sql", "evaluate_aggregate",
    "execute", "group_and_rank", "ingest_dump", "load_config", "parse_ir",
    "render_ir", "translate",
]
