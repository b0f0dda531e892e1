"""Natural language -> IR translation.

Two modes behind one function: ``remote`` calls a chat-completion HTTP API
and re-prompts with the parse error when the model returns invalid IR (up
to ``max_repair_attempts`` repairs); ``offline`` matches the question
against a registry of regex -> IR-skeleton templates and is fully
deterministic, so the whole pipeline can run with zero network.

Either way the returned text is guaranteed to parse; unparsable output
raises instead of propagating downstream.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from .errors import (
    IrError,
    NoTemplateMatch,
    RemoteUnavailable,
    TranslationFailed,
)
from .ir import parse_ir

TOKEN_ENV_VAR = "QIRK_LLM_TOKEN"

_GRAMMAR_HELP = (
    'query := head ":" atom (";" atom)* ; '
    'head := var ("," var)* | ("MAX"|"MIN") "(" var ")" ; '
    'atom := [var ":="] keyword "(" term ("," term)?) ")" ; '
    'term := (var | quoted-string) ["/" type] ; '
    "type := entity_id | string | date | numeric | qualifier"
)

_FEW_SHOTS = [
    ("Name people who have won both an Oscar for Merit and a Turing Award.",
     'X: received_award(X, "Oscar for Merit"); received_award(X, "Turing Award")'),
    ("List movies where the director is married to a member of the cast.",
     "X: movie(X); director(X,Y); married(Y,Z); cast(X,Z)"),
    ("When was Alan Turing born?",
     'X: date_of_birth("Alan Turing", X / date)'),
    ("When did Barack Obama become president?",
     'Y: X := holds_position("Barack Obama", "President"); start_time(X, Y / date)'),
    ("What is the height of the tallest US president?",
     'MAX(Y): position(X, "President of the United States"); height(X, Y / numeric)'),
]

SYSTEM_PROMPT = (
    "You translate questions about a knowledge graph into a small logical "
    "query language. Output only the query, no explanations.\n"
    f"Grammar: {_GRAMMAR_HELP}\n"
    "Use snake_case keywords for relationships and quoted strings for names. "
    "Examples:\n"
    + "\n".join(f"Q: {q}\nA: {ir}" for q, ir in _FEW_SHOTS)
)


@dataclass
class TranslatorConfig:
    mode: str = "offline"  # "offline" or "remote"
    endpoint: Optional[str] = None
    model: str = "gpt-3.5-turbo"
    prompt_template: str = "default"
    max_repair_attempts: int = 2
    timeout: float = 30.0
    templates_path: Optional[str] = None

    def __post_init__(self):
        if self.mode not in ("offline", "remote"):
            raise ValueError(f"unknown translator mode {self.mode!r}")
        if self.mode == "remote" and not self.endpoint:
            raise ValueError("remote mode requires an endpoint")
        if self.max_repair_attempts < 0:
            raise ValueError("max_repair_attempts must be >= 0")


@dataclass
class Provenance:
    """What the translator actually did, for the response's provenance field."""

    mode: str
    attempts: list[dict] = field(default_factory=list)

    def record(self, raw: str, error: Optional[str]) -> None:
        self.attempts.append({"raw": raw, "error": error})


# ---------------------------------------------------------------------------
# Offline templates


def _load_templates(path: Optional[str]) -> list[dict]:
    if path:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    data = resources.files("qirk.data").joinpath("templates.json").read_text(
        encoding="utf-8")
    return json.loads(data)


def _fill_skeleton(skeleton: str, match: re.Match) -> str:
    def sub(m: re.Match) -> str:
        text = match.group(int(m.group(1))) or ""
        return text.strip().replace("\\", "\\\\").replace('"', '\\"')

    return re.sub(r"\{(\d+)\}", sub, skeleton)


def translate_offline(question: str, cfg: TranslatorConfig) -> tuple[str, Provenance]:
    provenance = Provenance(mode="offline")
    for template in _load_templates(cfg.templates_path):
        match = re.match(template["pattern"], question.strip())
        if not match:
            continue
        ir_text = _fill_skeleton(template["ir"], match)
        try:
            parse_ir(ir_text)
        except IrError as exc:
            provenance.record(ir_text, str(exc))
            raise TranslationFailed(
                f"template {template['pattern']!r} produced invalid IR: {exc}",
                attempts=provenance.attempts)
        provenance.record(ir_text, None)
        return ir_text, provenance
    raise NoTemplateMatch(f"no template matches {question!r}")


# ---------------------------------------------------------------------------
# Remote chat completion


def _chat_once(cfg: TranslatorConfig, messages: list[dict]) -> str:
    import requests

    headers = {"Content-Type": "application/json"}
    token = os.environ.get(TOKEN_ENV_VAR)
    if token:
        headers["Authorization"] = f"Bearer {token}"
    try:
        resp = requests.post(
            cfg.endpoint,
            json={"model": cfg.model, "messages": messages, "temperature": 0},
            headers=headers, timeout=cfg.timeout)
        resp.raise_for_status()
        payload = resp.json()
    except Exception as exc:
        raise RemoteUnavailable(f"translator endpoint failed: {exc}") from exc
    try:
        return payload["choices"][0]["message"]["content"]
    except (KeyError, IndexError, TypeError) as exc:
        raise RemoteUnavailable(
            f"translator endpoint returned malformed payload: {payload!r}"
        ) from exc


def _strip_fences(text: str) -> str:
    text = text.strip()
    if text.startswith("```"):
        text = re.sub(r"^```[a-zA-Z]*\n?", "", text)
        text = re.sub(r"\n?```$", "", text)
    return text.strip()


def translate_remote(question: str, cfg: TranslatorConfig) -> tuple[str, Provenance]:
    provenance = Provenance(mode="remote")
    messages = [
        {"role": "system", "content": SYSTEM_PROMPT},
        {"role": "user", "content": question},
    ]
    for attempt in range(cfg.max_repair_attempts + 1):
        raw = _chat_once(cfg, messages)
        ir_text = _strip_fences(raw)
        try:
            parse_ir(ir_text)
        except IrError as exc:
            provenance.record(raw, str(exc))
            messages.append({"role": "assistant", "content": raw})
            messages.append({
                "role": "user",
                "content": f"That query does not parse: {exc}. "
                           f"Reply with only a corrected query.",
            })
            continue
        provenance.record(raw, None)
        return ir_text, provenance
    raise TranslationFailed(
        f"no parsable IR after {cfg.max_repair_attempts + 1} attempts",
        attempts=provenance.attempts)


def translate(question: str, cfg: TranslatorConfig) -> tuple[str, Provenance]:
    """Translate a question to IR text that is guaranteed to parse."""
    if not question or not question.strip():
        raise TranslationFailed("empty question")
    if cfg.mode == "remote":
        return translate_remote(question, cfg)
    return translate_offline(question, cfg)
