import datetime as dt
import json
import re

import pytest

from qirk.errors import MalformedLine, UnknownStatement
from qirk.store import (
    TypedValue,
    emit_relational_schema,
    ingest_dump,
    parse_value,
)


def prop(pid, label, datatype, description=""):
    return {"type": "property", "id": pid, "label": label,
            "description": description, "datatype": datatype}


def entity(eid, label, description="", popularity=0, claims=()):
    return {"type": "entity", "id": eid, "label": label,
            "description": description, "popularity": popularity,
            "claims": list(claims)}


def claim(pid, datatype, value, qualifiers=(), statement_id=None):
    out = {"property": pid, "datatype": datatype, "value": value,
           "qualifiers": list(qualifiers)}
    if statement_id is not None:
        out["statement_id"] = statement_id
    return out


SMALL_DUMP = [
    prop("P166", "award received", "entity_id", "award or medal given"),
    prop("P39", "position held", "entity_id", "office held by the subject"),
    prop("P580", "start time", "date", "when the claim began to hold"),
    entity("Q185667", "Turing Award", "computer science prize", 90),
    entity("Q8624", "Academy Award of Merit", "the Oscar statuette", 70),
    entity("Q11696", "President of the United States", "head of state", 95),
    entity("Q999001", "Edwin Catmull", "computer scientist", 40, [
        claim("P166", "entity_id", "Q185667"),
        claim("P166", "entity_id", "Q8624"),
    ]),
    entity("Q76", "Barack Obama", "44th US president", 99, [
        claim("P39", "entity_id", "Q11696", qualifiers=[
            {"property": "P580", "datatype": "date", "value": "2009-01-20"},
        ]),
    ]),
]


def write_dump(tmp_path, rows, name="dump.jsonl"):
    path = tmp_path / name
    path.write_text("".join(json.dumps(r) + "\n" for r in rows), encoding="utf-8")
    return path


@pytest.fixture
def small_store(tmp_path):
    store, report = ingest_dump(write_dump(tmp_path, SMALL_DUMP))
    return store, report


def test_ingest_counts_and_lookup(small_store):
    store, report = small_store
    assert report.entities == 5
    assert report.properties == 3
    assert report.claims == 3
    assert report.qualifiers == 1
    assert report.rejected == []
    rec = store.entity("Q185667")
    assert rec is not None and rec.label == "Turing Award"
    assert store.property("P166").datatype == "entity_id"


def test_empty_file(tmp_path):
    path = tmp_path / "empty.jsonl"
    path.write_text("", encoding="utf-8")
    store, report = ingest_dump(path)
    assert report.entities == 0
    assert report.total_lines == 0
    assert store.statement_count() == 0


def test_bad_date_line_rejected_rest_ingested(tmp_path):
    rows = [
        prop("P569", "date of birth", "date"),
        entity("Q1", "Alpha", claims=[claim("P569", "date", "not-a-date")]),
        entity("Q2", "Beta", claims=[claim("P569", "date", "1912-06-23")]),
    ]
    store, report = ingest_dump(write_dump(tmp_path, rows))
    assert len(report.rejected) == 1
    assert report.rejected[0][0] == 2
    assert "date" in report.rejected[0][1]
    assert store.entity("Q1") is None
    assert store.entity("Q2") is not None
    assert report.entities == 1


def test_all_lines_rejected_is_fatal(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text("not json\n{\"type\": \"mystery\"}\n", encoding="utf-8")
    with pytest.raises(MalformedLine):
        ingest_dump(path)


def test_claim_datatype_must_match_property(tmp_path):
    rows = [
        prop("P580", "start time", "date"),
        entity("Q1", "Alpha", claims=[claim("P580", "string", "2009")]),
    ]
    store, report = ingest_dump(write_dump(tmp_path, rows))
    assert len(report.rejected) == 1
    assert store.statement_count() == 0


def test_scan_by_property_and_value(small_store):
    store, _ = small_store
    winners = store.scan(properties={"P166"},
                         values={TypedValue("entity_id", "Q185667")})
    assert [s.subject for s in winners] == ["Q999001"]


def test_scan_unknown_subject_empty(small_store):
    store, _ = small_store
    assert store.scan(subject="Q424242") == []


def test_scan_no_filters_returns_everything(small_store):
    store, report = small_store
    rows = store.scan()
    assert len(rows) == report.claims
    ids = [s.statement_id for s in rows]
    assert ids == sorted(ids)


def test_scan_filter_subsets(small_store):
    store, _ = small_store
    broad = {tuple(s.statement_id for s in store.scan(properties={"P166", "P39"}))}
    narrow = {tuple(s.statement_id for s in store.scan(properties={"P166"}))}
    assert set(narrow.pop()) <= set(broad.pop())
    subj = store.scan(subject="Q999001", properties={"P166"})
    assert set(s.statement_id for s in subj) <= set(
        s.statement_id for s in store.scan(properties={"P166"}))


def test_qualifier_scan(small_store):
    store, _ = small_store
    stmt = store.scan(subject="Q76", properties={"P39"})[0]
    quals = store.qualifier_scan(stmt.statement_id, properties={"P580"})
    assert quals == [("P580", TypedValue("date", dt.date(2009, 1, 20)))]
    no_quals = store.scan(subject="Q999001")[0]
    assert store.qualifier_scan(no_quals.statement_id) == []
    with pytest.raises(UnknownStatement):
        store.qualifier_scan("nope$0")


def test_statement_ids_are_deterministic(tmp_path):
    p1 = write_dump(tmp_path, SMALL_DUMP, "a.jsonl")
    p2 = write_dump(tmp_path, SMALL_DUMP, "b.jsonl")
    s1, _ = ingest_dump(p1)
    s2, _ = ingest_dump(p2)
    ids1 = [s.statement_id for s in s1.scan()]
    ids2 = [s.statement_id for s in s2.scan()]
    assert ids1 == ids2
    assert all(re.match(r"Q\d+\$[0-9a-f]{12}\$\d+\Z", i) for i in ids1)


def test_explicit_statement_ids_survive(tmp_path):
    rows = [
        prop("P166", "award received", "entity_id"),
        entity("Q185667", "Turing Award"),
        entity("Q1", "Alpha", claims=[
            claim("P166", "entity_id", "Q185667", statement_id="Q1-custom-7"),
        ]),
    ]
    store, _ = ingest_dump(write_dump(tmp_path, rows))
    assert store.statement("Q1-custom-7") is not None


def test_save_load_round_trip(tmp_path, small_store):
    store, report = small_store
    out = tmp_path / "saved.jsonl"
    store.save(out)
    reloaded, report2 = ingest_dump(out)
    assert report2.rejected == []
    assert reloaded.scan() == store.scan()
    assert reloaded.entities == store.entities
    assert reloaded.properties == store.properties


def test_statement_fields_round_trip_the_input(small_store):
    store, _ = small_store
    stmt = store.scan(subject="Q76")[0]
    assert stmt.subject == "Q76"
    assert stmt.property == "P39"
    assert stmt.value == TypedValue("entity_id", "Q11696")
    assert stmt.qualifiers == (
        ("P580", TypedValue("date", dt.date(2009, 1, 20))),)


def test_popularity_defaults_to_zero(tmp_path):
    rows = [{"type": "entity", "id": "Q1", "label": "Alpha"}]
    store, _ = ingest_dump(write_dump(tmp_path, rows))
    assert store.entity("Q1").popularity == 0


def test_parse_value_rejects_bad_shapes():
    with pytest.raises(ValueError):
        parse_value("numeric", float("inf"))
    with pytest.raises(ValueError):
        parse_value("numeric", "1.0")
    with pytest.raises(ValueError):
        parse_value("entity_id", "P31")
    with pytest.raises(ValueError):
        parse_value("color", "red")
    assert parse_value("numeric", 3).value == 3.0


def test_ddl_contract():
    ddl = emit_relational_schema()
    assert ddl == emit_relational_schema()
    assert "CREATE TABLE claims" in ddl
    for col in ("statement_id", "subject", "property", "value_entity",
                "value_string", "value_date", "value_numeric"):
        assert col in ddl
    assert "CREATE TABLE qualifiers" in ddl


def test_ddl_loads_into_sqlite():
    import sqlite3

    conn = sqlite3.connect(":memory:")
    conn.executescript(emit_relational_schema())
    cols = [r[1] for r in conn.execute("PRAGMA table_info(claims)")]
    assert cols == ["statement_id", "subject", "property", "value_entity",
                    "value_string", "value_date", "value_numeric"]
