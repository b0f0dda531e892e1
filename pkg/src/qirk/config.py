"""Runtime configuration: flat key=value file plus QIRK_* env overrides.

Everything deployment-dependent lives here: store/index paths, candidate
list size, score threshold, the class property id, the KG page URL
template, and the translator settings.  A config file looks like:

    store = data/fixture.jsonl
    index = data/fixture.idx
    k = 5
    score_threshold = 0.3
    translator_mode = offline

Lines starting with '#' are comments.  Environment variables override file
values (QIRK_STORE, QIRK_K, QIRK_TRANSLATOR_MODE, ...); QIRK_CONFIG points
at the file itself.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Optional

from .errors import ConfigError
from .translate import TranslatorConfig

CONFIG_ENV_VAR = "QIRK_CONFIG"

DEFAULT_ENTITY_URL_TEMPLATE = "https://www.wikidata.org/wiki/{id}"


@dataclass
class QirkConfig:
    store: Optional[str] = None
    index: Optional[str] = None
    k: int = 5
    score_threshold: float = 0.3
    class_property: str = "P31"
    entity_url_template: str = DEFAULT_ENTITY_URL_TEMPLATE
    popularity_boost: float = 0.0
    embed_endpoint: Optional[str] = None  # None -> built-in trigram provider
    translator_mode: str = "offline"
    translator_endpoint: Optional[str] = None
    translator_model: str = "gpt-3.5-turbo"
    translator_max_repair_attempts: int = 2
    translator_timeout: float = 30.0
    templates_path: Optional[str] = None

    def translator(self) -> TranslatorConfig:
        try:
            return TranslatorConfig(
                mode=self.translator_mode,
                endpoint=self.translator_endpoint,
                model=self.translator_model,
                max_repair_attempts=self.translator_max_repair_attempts,
                timeout=self.translator_timeout,
                templates_path=self.templates_path,
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc


_COERCERS = {
    int: int,
    float: float,
    str: lambda v: v,
}


def _coerce(name: str, kind, raw: str):
    raw = raw.strip()
    if raw.lower() in ("none", ""):
        return None
    base = kind
    if kind == Optional[str]:
        base = str
    try:
        return _COERCERS[base](raw)
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"bad value for {name}: {raw!r}") from exc


def _field_types() -> dict[str, type]:
    out = {}
    for f in fields(QirkConfig):
        out[f.name] = f.type if not isinstance(f.type, str) else {
            "Optional[str]": Optional[str], "int": int, "float": float,
            "str": str}.get(f.type, str)
    return out


def load_config(path: Optional[str] = None,
                env: Optional[dict] = None) -> QirkConfig:
    """Defaults, then the config file, then QIRK_* environment overrides."""
    env = os.environ if env is None else env
    if path is None:
        path = env.get(CONFIG_ENV_VAR)
    cfg = QirkConfig()
    types = _field_types()

    if path:
        file_path = Path(path)
        if not file_path.exists():
            raise ConfigError(f"config file not found: {path}")
        for lineno, raw in enumerate(
                file_path.read_text(encoding="utf-8").splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            key, _, value = line.partition("=")
            key = key.strip()
            if key not in types:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            setattr(cfg, key, _coerce(key, types[key], value))

    for key, kind in types.items():
        env_name = f"QIRK_{key.upper()}"
        if env_name in env:
            setattr(cfg, key, _coerce(key, kind, env[env_name]))
    return cfg
