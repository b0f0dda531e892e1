import random

import pytest

from qirk.compiler import bind_candidates
from qirk.errors import TypeUnsupported
from qirk.executor import (
    Answer,
    execute,
    evaluate_aggregate,
    group_and_rank,
)
from qirk.ir import build_query_graph, parse_ir
from qirk.store import TypedValue, ingest_dump

import randgen
from samples import OSCAR_TURING_IR
from test_compiler import cs, two_award_sets
from test_store import claim, entity, prop, write_dump

AWARD_DUMP = [
    prop("P166", "award received", "entity_id"),
    entity("Q185667", "Turing Award"),
    entity("Q8624", "Academy Award of Merit"),
    entity("Q7251", "Alan Turing"),
    entity("Q1307005", "Medal for Merit"),
    entity("Q999001", "Edwin Catmull", claims=[
        claim("P166", "entity_id", "Q8624"),
        claim("P166", "entity_id", "Q185667"),
    ]),
    entity("Q999002", "Donald Knuth", claims=[
        claim("P166", "entity_id", "Q185667"),
    ]),
    entity("Q999003", "Some Veteran", claims=[
        claim("P166", "entity_id", "Q1307005"),
    ]),
]


@pytest.fixture(scope="module")
def award_store(tmp_path_factory):
    store, _ = ingest_dump(
        write_dump(tmp_path_factory.mktemp("award"), AWARD_DUMP))
    return store


def test_two_award_query_finds_single_coherent_answer(award_store):
    g = bind_candidates(build_query_graph(parse_ir(OSCAR_TURING_IR)),
                        two_award_sets(),
                        property_datatypes={"P166": "entity_id"})
    answers = execute(g, award_store)
    assert len(answers) == 1
    answer = answers[0]
    assert answer.values == (TypedValue("entity_id", "Q999001"),)
    assert dict(answer.assignment) == {
        "A1": "Q8624", "C3": "P166", "A2": "Q185667"}
    assert dict(answer.scores) == {"A1": 0.77, "C3": 1.0, "A2": 0.89}


def test_disjoint_candidates_give_empty_result(award_store):
    sets = two_award_sets()
    sets["Oscar for Merit"] = cs("Oscar for Merit", "entity",
                                 [("Q7251", 0.5, "Alan Turing")])
    g = bind_candidates(build_query_graph(parse_ir(OSCAR_TURING_IR)), sets)
    assert execute(g, award_store) == []


def test_answers_are_sound_via_scan(award_store):
    g = bind_candidates(build_query_graph(parse_ir(OSCAR_TURING_IR)),
                        two_award_sets())
    for answer in execute(g, award_store):
        subject = answer.values[0].value
        chosen = dict(answer.assignment)
        for entity_var in ("A1", "A2"):
            rows = award_store.scan(
                subject=subject, properties={chosen["C3"]},
                values={TypedValue("entity_id", chosen[entity_var])})
            assert rows, (subject, entity_var)


# ---------------------------------------------------------------------------
# Aggregates


def heights_graph(values):
    rows = [prop("P39", "position held", "entity_id"),
            prop("P2048", "height", "numeric"),
            entity("Q11696", "President of the United States")]
    for i, h in enumerate(values):
        rows.append(entity(f"Q{100 + i}", f"president {i}", claims=[
            claim("P39", "entity_id", "Q11696"),
            claim("P2048", "numeric", h),
        ]))
    return rows


@pytest.fixture
def heights_store(tmp_path):
    store, _ = ingest_dump(write_dump(tmp_path, heights_graph([1.83, 1.92, 1.75])))
    return store


def height_sets():
    return {
        "President of the United States": cs(
            "President of the United States", "entity",
            [("Q11696", 0.9, "President of the United States")]),
        "position": cs("position", "property", [("P39", 0.8, "position held")]),
        "height": cs("height", "property", [("P2048", 0.95, "height")]),
    }


def test_max_aggregate_over_group(heights_store):
    ir = parse_ir('MAX(Y): position(X, "President of the United States"); '
                  'height(X, Y / numeric)')
    g = bind_candidates(build_query_graph(ir), height_sets(),
                        property_datatypes={"P39": "entity_id",
                                            "P2048": "numeric"})
    answers = execute(g, heights_store)
    assert len(answers) == 3
    aggregated = evaluate_aggregate(answers, "MAX", g.var_tags[g.head_vars[0]])
    assert len(aggregated) == 1
    assert aggregated[0].values[0] == TypedValue("numeric", 1.92)


def test_min_over_single_answer_is_identity():
    answer = Answer(values=(TypedValue("numeric", 2.5),),
                    assignment=(("A1", "Q1"),), scores=(("A1", 0.9),))
    assert evaluate_aggregate([answer], "MIN", "numeric") == [answer]


def test_aggregate_rejects_entity_values():
    answer = Answer(values=(TypedValue("entity_id", "Q1"),),
                    assignment=(("A1", "Q1"),), scores=(("A1", 0.9),))
    with pytest.raises(TypeUnsupported):
        evaluate_aggregate([answer], "MAX", "entity_id")


def test_aggregate_is_per_assignment_group():
    mk = lambda v, cid: Answer(values=(TypedValue("numeric", v),),
                               assignment=(("A1", cid),),
                               scores=(("A1", 0.5),))
    answers = [mk(1.0, "Q1"), mk(5.0, "Q1"), mk(3.0, "Q2")]
    out = evaluate_aggregate(answers, "MAX", "numeric")
    got = {a.assignment[0][1]: a.values[0].value for a in out}
    assert got == {"Q1": 5.0, "Q2": 3.0}


# ---------------------------------------------------------------------------
# Grouping and ranking


def test_confidence_is_arithmetic_mean():
    answer = Answer(values=(TypedValue("entity_id", "Q999001"),),
                    assignment=(("A1", "Q8624"), ("A2", "Q185667"),
                                ("C3", "P166")),
                    scores=(("A1", 0.77), ("A2", 0.89), ("C3", 1.0)))
    groups = group_and_rank([answer])
    assert len(groups) == 1
    assert groups[0].confidence == pytest.approx((0.77 + 1.0 + 0.89) / 3,
                                                 abs=1e-12)


def test_groups_sorted_by_confidence():
    low = Answer(values=(TypedValue("entity_id", "Q1"),),
                 assignment=(("A1", "Q10"),), scores=(("A1", 0.7),))
    high = Answer(values=(TypedValue("entity_id", "Q2"),),
                  assignment=(("A1", "Q20"),), scores=(("A1", 0.9),))
    groups = group_and_rank([low, high])
    assert [g.confidence for g in groups] == [0.9, 0.7]


def test_grouping_partitions_answers():
    answers = [
        Answer(values=(TypedValue("entity_id", f"Q{i}"),),
               assignment=(("A1", "Q10" if i % 2 else "Q20"),),
               scores=(("A1", 0.8 if i % 2 else 0.6),))
        for i in range(10)
    ]
    groups = group_and_rank(answers)
    assert sum(len(g.answers) for g in groups) == len(answers)
    seen = set()
    for g in groups:
        assert g.assignment not in seen
        seen.add(g.assignment)
        for a in g.answers:
            assert a.assignment == g.assignment


def test_confidence_grouping_order_invariant():
    answers = [
        Answer(values=(TypedValue("entity_id", f"Q{i}"),),
               assignment=(("A1", "Q10"),), scores=(("A1", 0.8),))
        for i in range(4)
    ]
    forward = group_and_rank(answers)
    backward = group_and_rank(list(reversed(answers)))
    assert [g.confidence for g in forward] == [g.confidence for g in backward]
    assert {a for g in forward for a in g.answers} == \
        {a for g in backward for a in g.answers}


# ---------------------------------------------------------------------------
# Oracle equivalence on random instances (the acceptance suite runs 500)


def test_random_instances_match_oracle(tmp_path):
    rng = random.Random(20240817)
    non_empty = 0
    for trial in range(120):
        inst = randgen.random_instance(rng)
        path = tmp_path / "kg.jsonl"
        randgen.write_instance(inst, path)
        store, report = ingest_dump(path)
        assert not report.rejected, report.rejected
        query = randgen.random_query(rng, inst)
        graph = build_query_graph(query)
        g = bind_candidates(graph, inst.candidate_sets,
                            property_datatypes=inst.properties)
        answers = execute(g, store)
        got = randgen.executor_answer_set(answers, g)
        expected = randgen.oracle_answers(query, inst)
        assert got == expected, f"trial {trial}"
        if expected:
            non_empty += 1
    assert non_empty >= 12, f"generator too weak: {non_empty} non-empty trials"
