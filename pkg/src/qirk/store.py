"""In-memory knowledge-graph store over a JSONL dump, plus its relational schema.

A dump is one JSON object per line.  Entity lines inline their claims:

    {"type": "entity", "id": "Q76", "label": "Barack Obama",
     "description": "44th US president", "popularity": 145,
     "claims": [{"property": "P39", "datatype": "entity_id", "value": "Q11696",
                 "qualifiers": [{"property": "P580", "datatype": "date",
                                 "value": "2009-01-20"}]}]}

Property lines declare the vocabulary:

    {"type": "property", "id": "P39", "label": "position held",
     "description": "office held by the subject", "datatype": "entity_id"}

Ingest is single-writer and validates each line in isolation; a bad line is
rejected (counted, with a reason) without affecting the rest.  After ingest
the store is immutable and safe to share across threads.
"""

from __future__ import annotations

import datetime as dt
import hashlib
import json
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from .errors import MalformedLine, UnknownStatement

ENTITY_ID_RE = re.compile(r"Q\d+\Z")
PROPERTY_ID_RE = re.compile(r"P\d+\Z")

VALUE_TAGS = ("entity_id", "string", "date", "numeric")


@dataclass(frozen=True)
class TypedValue:
    """A claim value: tag selects the payload shape.

    entity_id -> str (Q-id), string -> str, date -> datetime.date,
    numeric -> float (finite).
    """

    tag: str
    value: object

    def sort_key(self) -> tuple[str, str]:
        return (self.tag, str(self.value))

    def to_json(self):
        if self.tag == "date":
            return self.value.isoformat()
        return self.value


def parse_value(tag: str, raw) -> TypedValue:
    """Validate and normalize a raw JSON value against a datatype tag."""
    if tag not in VALUE_TAGS:
        raise ValueError(f"unknown datatype {tag!r}")
    if tag == "entity_id":
        if not isinstance(raw, str) or not ENTITY_ID_RE.match(raw):
            raise ValueError(f"bad entity id {raw!r}")
        return TypedValue(tag, raw)
    if tag == "string":
        if not isinstance(raw, str) or not raw:
            raise ValueError(f"bad string value {raw!r}")
        return TypedValue(tag, raw)
    if tag == "date":
        if not isinstance(raw, str):
            raise ValueError(f"bad date value {raw!r}")
        try:
            return TypedValue(tag, dt.date.fromisoformat(raw))
        except ValueError:
            raise ValueError(f"bad date value {raw!r}") from None
    if not isinstance(raw, (int, float)) or isinstance(raw, bool):
        raise ValueError(f"bad numeric value {raw!r}")
    value = float(raw)
    if not math.isfinite(value):
        raise ValueError(f"non-finite numeric value {raw!r}")
    return TypedValue(tag, value)


@dataclass(frozen=True)
class EntityRecord:
    id: str
    label: str
    description: str = ""
    popularity: int = 0


@dataclass(frozen=True)
class PropertyRecord:
    id: str
    label: str
    description: str = ""
    datatype: str = "entity_id"


@dataclass(frozen=True)
class KgStatement:
    statement_id: str
    subject: str
    property: str
    value: TypedValue
    qualifiers: tuple[tuple[str, TypedValue], ...] = ()


@dataclass
class IngestReport:
    entities: int = 0
    properties: int = 0
    claims: int = 0
    qualifiers: int = 0
    total_lines: int = 0
    rejected: list[tuple[int, str]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "entities": self.entities,
            "properties": self.properties,
            "claims": self.claims,
            "qualifiers": self.qualifiers,
            "total_lines": self.total_lines,
            "rejected": [{"line": n, "reason": r} for n, r in self.rejected],
        }


class KgStore:
    """Read-only store of entities, properties and statements.

    Construct through :func:`ingest_dump`; all lookups are safe for
    concurrent readers.
    """

    def __init__(self):
        self._entities: dict[str, EntityRecord] = {}
        self._properties: dict[str, PropertyRecord] = {}
        self._statements: list[KgStatement] = []
        self._by_id: dict[str, KgStatement] = {}
        self._by_subject: dict[str, list[KgStatement]] = {}
        self._by_property: dict[str, list[KgStatement]] = {}
        self._sealed = False

    # -- lookups -----------------------------------------------------------

    @property
    def entities(self) -> dict[str, EntityRecord]:
        return self._entities

    @property
    def properties(self) -> dict[str, PropertyRecord]:
        return self._properties

    def entity(self, entity_id: str) -> Optional[EntityRecord]:
        return self._entities.get(entity_id)

    def property(self, property_id: str) -> Optional[PropertyRecord]:
        return self._properties.get(property_id)

    def label_of(self, item_id: str) -> str:
        rec = self._entities.get(item_id) or self._properties.get(item_id)
        return rec.label if rec else item_id

    def statement(self, statement_id: str) -> Optional[KgStatement]:
        return self._by_id.get(statement_id)

    def statement_count(self) -> int:
        return len(self._statements)

    def scan(self, subject: Optional[str] = None,
             properties: Optional[set] = None,
             values: Optional[set] = None) -> list[KgStatement]:
        """Statements matching all provided filters, in statement-id order.

        ``properties`` is a set of property ids, ``values`` a set of
        :class:`TypedValue`.  Unknown ids simply yield no rows.
        """
        if subject is not None:
            rows = self._by_subject.get(subject, [])
        elif properties is not None and len(properties) <= 8:
            merged: list[KgStatement] = []
            for pid in properties:
                merged.extend(self._by_property.get(pid, []))
            rows = merged
        else:
            rows = self._statements
        out = [
            s for s in rows
            if (properties is None or s.property in properties)
            and (values is None or s.value in values)
        ]
        out.sort(key=lambda s: s.statement_id)
        return out

    def qualifier_scan(self, statement_id: str,
                       properties: Optional[set] = None
                       ) -> list[tuple[str, TypedValue]]:
        """Qualifiers of one statement, optionally filtered by property ids."""
        stmt = self._by_id.get(statement_id)
        if stmt is None:
            raise UnknownStatement(f"unknown statement id {statement_id!r}")
        return [(p, v) for p, v in stmt.qualifiers
                if properties is None or p in properties]

    def iter_qualifiers(self) -> Iterable[tuple[str, str, TypedValue]]:
        """All (statement_id, property, value) qualifier rows, in scan order."""
        for stmt in self._statements:
            for prop, value in stmt.qualifiers:
                yield stmt.statement_id, prop, value

    # -- construction (module-internal) -------------------------------------

    def _add_entity(self, rec: EntityRecord, statements: list[KgStatement]):
        if self._sealed:
            raise RuntimeError("store is sealed after ingest")
        self._entities[rec.id] = rec
        for stmt in statements:
            self._statements.append(stmt)
            self._by_id[stmt.statement_id] = stmt
            self._by_subject.setdefault(stmt.subject, []).append(stmt)
            self._by_property.setdefault(stmt.property, []).append(stmt)

    def _add_property(self, rec: PropertyRecord):
        if self._sealed:
            raise RuntimeError("store is sealed after ingest")
        self._properties[rec.id] = rec

    def _seal(self):
        self._statements.sort(key=lambda s: s.statement_id)
        self._sealed = True

    # -- persistence ---------------------------------------------------------

    def save(self, path) -> None:
        """Write the store back out as a dump file (statement ids made explicit)."""
        with open(path, "w", encoding="utf-8") as fh:
            for rec in self._properties.values():
                fh.write(json.dumps({
                    "type": "property", "id": rec.id, "label": rec.label,
                    "description": rec.description, "datatype": rec.datatype,
                }, ensure_ascii=False) + "\n")
            for rec in self._entities.values():
                claims = []
                for stmt in self._by_subject.get(rec.id, []):
                    claims.append({
                        "statement_id": stmt.statement_id,
                        "property": stmt.property,
                        "datatype": stmt.value.tag,
                        "value": stmt.value.to_json(),
                        "qualifiers": [
                            {"property": p, "datatype": v.tag, "value": v.to_json()}
                            for p, v in stmt.qualifiers
                        ],
                    })
                fh.write(json.dumps({
                    "type": "entity", "id": rec.id, "label": rec.label,
                    "description": rec.description, "popularity": rec.popularity,
                    "claims": claims,
                }, ensure_ascii=False) + "\n")


def _parse_qualifier(raw, known_properties) -> tuple[str, TypedValue]:
    if not isinstance(raw, dict):
        raise ValueError("qualifier must be an object")
    pid = raw.get("property")
    if not isinstance(pid, str) or not PROPERTY_ID_RE.match(pid):
        raise ValueError(f"bad qualifier property {pid!r}")
    tag = raw.get("datatype")
    prop = known_properties.get(pid)
    if prop is not None and tag is None:
        tag = prop.datatype
    if prop is not None and tag != prop.datatype:
        raise ValueError(
            f"qualifier datatype {tag!r} does not match property {pid} "
            f"({prop.datatype})")
    return pid, parse_value(tag, raw.get("value"))


def _parse_entity_line(obj: dict, raw_line: str, known_properties
                       ) -> tuple[EntityRecord, list[KgStatement]]:
    eid = obj.get("id")
    if not isinstance(eid, str) or not ENTITY_ID_RE.match(eid):
        raise ValueError(f"bad entity id {eid!r}")
    label = obj.get("label")
    if not isinstance(label, str) or not label:
        raise ValueError("entity label must be a non-empty string")
    description = obj.get("description", "")
    if not isinstance(description, str):
        raise ValueError("description must be a string")
    popularity = obj.get("popularity", 0)
    if not isinstance(popularity, int) or isinstance(popularity, bool) \
            or popularity < 0:
        raise ValueError(f"bad popularity {popularity!r}")

    claims_raw = obj.get("claims", [])
    if not isinstance(claims_raw, list):
        raise ValueError("claims must be a list")
    line_sha = hashlib.sha256(raw_line.encode("utf-8")).hexdigest()[:12]
    statements = []
    for ordinal, claim in enumerate(claims_raw):
        if not isinstance(claim, dict):
            raise ValueError("claim must be an object")
        pid = claim.get("property")
        if not isinstance(pid, str) or not PROPERTY_ID_RE.match(pid):
            raise ValueError(f"bad claim property {pid!r}")
        tag = claim.get("datatype")
        prop = known_properties.get(pid)
        if prop is not None and tag is None:
            tag = prop.datatype
        if prop is not None and tag != prop.datatype:
            raise ValueError(
                f"claim datatype {tag!r} does not match property {pid} "
                f"({prop.datatype})")
        value = parse_value(tag, claim.get("value"))
        sid = claim.get("statement_id")
        if sid is None:
            sid = f"{eid}${line_sha}${ordinal}"
        elif not isinstance(sid, str) or not sid:
            raise ValueError(f"bad statement id {sid!r}")
        qualifiers = tuple(
            _parse_qualifier(q, known_properties)
            for q in claim.get("qualifiers", []))
        statements.append(KgStatement(
            statement_id=sid, subject=eid, property=pid,
            value=value, qualifiers=qualifiers))
    return (EntityRecord(id=eid, label=label, description=description,
                         popularity=popularity), statements)


def _parse_property_line(obj: dict) -> PropertyRecord:
    pid = obj.get("id")
    if not isinstance(pid, str) or not PROPERTY_ID_RE.match(pid):
        raise ValueError(f"bad property id {pid!r}")
    label = obj.get("label")
    if not isinstance(label, str) or not label:
        raise ValueError("property label must be a non-empty string")
    description = obj.get("description", "")
    if not isinstance(description, str):
        raise ValueError("description must be a string")
    datatype = obj.get("datatype")
    if datatype not in VALUE_TAGS:
        raise ValueError(f"bad property datatype {datatype!r}")
    return PropertyRecord(id=pid, label=label, description=description,
                          datatype=datatype)


def ingest_dump(path) -> tuple[KgStore, IngestReport]:
    """Build a store from a JSONL dump.

    Two passes: property lines first so claim datatypes can be checked
    against the vocabulary regardless of line order.  Returns the sealed
    store and a report of per-line rejections.  Raises
    :class:`MalformedLine` only when the file has lines and every one of
    them is rejected.
    """
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()

    store = KgStore()
    report = IngestReport()
    parsed: list[tuple[int, str, dict]] = []
    for lineno, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        report.total_lines += 1
        try:
            obj = json.loads(raw)
            if not isinstance(obj, dict):
                raise ValueError("line is not a JSON object")
            kind = obj.get("type")
            if kind not in ("entity", "property"):
                raise ValueError(f"unknown line type {obj.get('type')!r}")
        except ValueError as exc:
            report.rejected.append((lineno, str(exc)))
            continue
        parsed.append((lineno, raw, obj))

    for lineno, raw, obj in parsed:
        if obj["type"] != "property":
            continue
        try:
            rec = _parse_property_line(obj)
            if rec.id in store.properties:
                raise ValueError(f"duplicate property id {rec.id}")
            store._add_property(rec)
            report.properties += 1
        except ValueError as exc:
            report.rejected.append((lineno, str(exc)))

    for lineno, raw, obj in parsed:
        if obj["type"] != "entity":
            continue
        try:
            rec, statements = _parse_entity_line(obj, raw, store.properties)
            if rec.id in store.entities:
                raise ValueError(f"duplicate entity id {rec.id}")
            for stmt in statements:
                if stmt.statement_id in store._by_id:
                    raise ValueError(
                        f"duplicate statement id {stmt.statement_id}")
            store._add_entity(rec, statements)
            report.claims += len(statements)
            report.qualifiers += sum(len(s.qualifiers) for s in statements)
            report.entities += 1
        except ValueError as exc:
            report.rejected.append((lineno, str(exc)))

    report.rejected.sort(key=lambda item: item[0])
    store._seal()
    if report.total_lines and len(report.rejected) == report.total_lines:
        raise MalformedLine(
            f"all {report.total_lines} lines rejected; first reason: "
            f"{report.rejected[0][1]}")
    return store, report


# ---------------------------------------------------------------------------
# Relational encoding

_SCHEMA_DDL = """\
CREATE TABLE entities (
    id          TEXT NOT NULL PRIMARY KEY,
    label       TEXT NOT NULL,
    description TEXT NOT NULL,
    popularity  INTEGER NOT NULL
);

CREATE TABLE properties (
    id          TEXT NOT NULL PRIMARY KEY,
    label       TEXT NOT NULL,
    description TEXT NOT NULL,
    datatype    TEXT NOT NULL
);

CREATE TABLE claims (
    statement_id  TEXT NOT NULL PRIMARY KEY,
    subject       TEXT NOT NULL,
    property      TEXT NOT NULL,
    value_entity  TEXT,
    value_string  TEXT,
    value_date    TEXT,
    value_numeric REAL
);

CREATE TABLE qualifiers (
    statement_id  TEXT NOT NULL,
    property      TEXT NOT NULL,
    value_entity  TEXT,
    value_string  TEXT,
    value_date    TEXT,
    value_numeric REAL
);
"""

VALUE_COLUMNS = {
    "entity_id": "value_entity",
    "string": "value_string",
    "date": "value_date",
    "numeric": "value_numeric",
}


def emit_relational_schema() -> str:
    """ANSI-style DDL for the relational encoding; byte-identical across runs.

    Exactly one ``value_*`` column is non-null per claims/qualifiers row.
    """
    return _SCHEMA_DDL


def value_columns(value: TypedValue) -> dict[str, object]:
    """The four value_* column values for one typed value."""
    row: dict[str, object] = {c: None for c in VALUE_COLUMNS.values()}
    row[VALUE_COLUMNS[value.tag]] = value.to_json()
    return row
