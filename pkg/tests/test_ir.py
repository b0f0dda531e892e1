import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qirk.errors import (
    DanglingQualifier,
    IrSyntaxError,
    TypeConflict,
    UnboundHeadVar,
)
from qirk.ir import (
    Aggregate,
    IrAtom,
    IrQuery,
    IrTerm,
    LITERAL,
    VARIABLE,
    VarList,
    build_query_graph,
    parse_ir,
    render_ir,
)

from samples import (
    ALL_SAMPLE_IRS,
    MOVIE_IR,
    OBAMA_QUALIFIER_IR,
    OSCAR_TURING_IR,
    PRESIDENT_HEIGHTS_IR,
    TALLEST_PRESIDENT_IR,
)


def var(name, declared=None):
    return IrTerm(VARIABLE, name, declared)


def lit(text, declared=None):
    return IrTerm(LITERAL, text, declared)


# ---------------------------------------------------------------------------
# Parsing the canonical demo queries


def test_two_award_query_structure():
    q = parse_ir(OSCAR_TURING_IR)
    assert q.head == VarList(("X",))
    assert len(q.body) == 2
    first, second = q.body
    assert first.keyword == "received_award" == second.keyword
    assert first.terms == (var("X"), lit("Oscar for Merit"))
    assert second.terms == (var("X"), lit("Turing Award"))
    assert first.binding is None


def test_qualifier_query_structure():
    q = parse_ir(OBAMA_QUALIFIER_IR)
    assert q.head == VarList(("Y",))
    first, second = q.body
    assert first.binding == "X"
    assert first.keyword == "holds_position"
    assert first.terms == (lit("Barack Obama"), lit("President"))
    assert second.keyword == "start_time"
    assert second.terms == (var("X"), var("Y", "date"))
    assert q.var_types() == {"Y": "date"}


def test_aggregate_head():
    q = parse_ir(TALLEST_PRESIDENT_IR)
    assert q.head == Aggregate("MAX", "Y")
    assert q.var_types()["Y"] == "numeric"


def test_multi_var_head():
    q = parse_ir(PRESIDENT_HEIGHTS_IR)
    assert q.head == VarList(("X", "Y"))


def test_all_samples_parse_and_round_trip():
    for text in ALL_SAMPLE_IRS:
        q = parse_ir(text)
        assert parse_ir(render_ir(q)) == q


def test_whitespace_and_newlines_insignificant():
    spread = (
        'X:\n  received_award(X, "Oscar for Merit");\n'
        '   received_award(X, "Turing Award")'
    )
    assert parse_ir(spread) == parse_ir(OSCAR_TURING_IR)


def test_string_escapes_round_trip():
    q = parse_ir(r'X: p(X, "he said \"hi\" \\ bye")')
    assert q.body[0].terms[1].text == 'he said "hi" \\ bye'
    assert parse_ir(render_ir(q)) == q


# ---------------------------------------------------------------------------
# Rejections


def test_empty_body_is_syntax_error():
    with pytest.raises(IrSyntaxError) as exc:
        parse_ir("X:")
    assert exc.value.pos == 2
    assert "atom" in str(exc.value)


def test_type_conflict_on_double_declaration():
    with pytest.raises(TypeConflict) as exc:
        parse_ir("X: p(X, Y / date); q(X, Y / numeric)")
    assert "'Y'" in str(exc.value)
    assert exc.value.line == 1


def test_unbound_head_var():
    with pytest.raises(UnboundHeadVar):
        parse_ir("X, W: p(X, Y)")


def test_dangling_qualifier_never_used():
    with pytest.raises(DanglingQualifier):
        parse_ir('Y: X := p("a", "b"); q("a", Y)')


def test_qualifier_var_used_before_binding():
    with pytest.raises(DanglingQualifier):
        parse_ir('Y: q(X, Y); X := p("a", "b")')


def test_qualifier_type_requires_binding():
    with pytest.raises(TypeConflict):
        parse_ir("X: p(X / qualifier, Y)")


def test_arity_three_rejected():
    with pytest.raises(IrSyntaxError) as exc:
        parse_ir("X: p(X, Y, Z)")
    assert exc.value.pos > 0


def test_unary_atom_accepted():
    q = parse_ir("X: movie(X)")
    assert q.body[0].arity == 1


def test_unterminated_string():
    with pytest.raises(IrSyntaxError):
        parse_ir('X: p(X, "oops)')


def test_empty_literal_rejected():
    with pytest.raises(IrSyntaxError):
        parse_ir('X: p(X, "")')


def test_unknown_datatype():
    with pytest.raises(IrSyntaxError) as exc:
        parse_ir("X: p(X, Y / float)")
    assert "float" in str(exc.value)


def test_duplicate_head_var():
    with pytest.raises(IrSyntaxError):
        parse_ir("X, X: p(X, Y)")


def test_double_binding_rejected():
    with pytest.raises(TypeConflict):
        parse_ir('Y: X := p("a", "b"); X := q("c", "d"); r(X, Y)')


def test_garbage_reports_position():
    with pytest.raises(IrSyntaxError) as exc:
        parse_ir("X: p(X, $)")
    assert exc.value.pos == 8
    assert exc.value.col == 9


def test_errors_always_positioned():
    cases = [
        "X:",
        "X: p(X, Y / date); q(X, Y / numeric)",
        "X, W: p(X, Y)",
        'Y: X := p("a", "b"); q("a", Y)',
    ]
    for text in cases:
        try:
            parse_ir(text)
            raise AssertionError(f"expected a parse error for {text!r}")
        except (IrSyntaxError, TypeConflict, UnboundHeadVar, DanglingQualifier) as e:
            assert e.line >= 1 and e.col >= 1


# ---------------------------------------------------------------------------
# Query graph


def test_movie_graph_is_three_node_cycle_with_class():
    g = build_query_graph(parse_ir(MOVIE_IR))
    assert [n.key for n in g.nodes] == ["X", "Y", "Z"]
    assert len(g.edges) == 3
    assert len(g.class_constraints) == 1
    assert g.class_constraints[0].keyword == "movie"
    assert g.class_constraints[0].node == "X"
    pairs = {(e.subject, e.object) for e in g.edges}
    assert pairs == {("X", "Y"), ("Y", "Z"), ("X", "Z")}


def test_single_unary_atom_graph():
    g = build_query_graph(parse_ir("X: movie(X)"))
    assert len(g.nodes) == 1
    assert len(g.edges) == 0
    assert len(g.class_constraints) == 1


def test_qualifier_graph_shape():
    g = build_query_graph(parse_ir(OBAMA_QUALIFIER_IR))
    base, access = g.edges
    assert base.subject == '"Barack Obama"'
    assert base.object == '"President"'
    assert base.statement_var == "X"
    assert not base.qualifier_access
    assert access.subject == "X"
    assert access.object == "Y"
    assert access.keyword == "start_time"
    assert access.qualifier_access
    assert g.qualifier_attachments == (("X", 0),)
    assert g.node("X").is_statement


def test_edge_direction_follows_term_order():
    g = build_query_graph(parse_ir("X: p(X, Y); q(Y, X)"))
    assert (g.edges[0].subject, g.edges[0].object) == ("X", "Y")
    assert (g.edges[1].subject, g.edges[1].object) == ("Y", "X")


# ---------------------------------------------------------------------------
# Properties over generated queries


_var_names = st.sampled_from(["X", "Y", "Z", "W", "U", "V"])
_keywords = st.from_regex(r"[a-z][a-z0-9_]{0,14}", fullmatch=True)
_literal_text = st.text(
    alphabet=st.characters(blacklist_categories=("Cs", "Cc")),
    min_size=1, max_size=20)
_value_types = st.sampled_from(["entity_id", "string", "date", "numeric"])


@st.composite
def ir_queries(draw):
    """Random valid queries in canonical form (types on first occurrence)."""
    n_atoms = draw(st.integers(1, 4))
    atoms_raw = []
    used_vars = set()
    for _ in range(n_atoms):
        arity = draw(st.integers(1, 2))
        terms = []
        for _ in range(arity):
            if draw(st.booleans()):
                name = draw(_var_names)
                used_vars.add(name)
                terms.append(("var", name))
            else:
                terms.append(("lit", draw(_literal_text)))
        atoms_raw.append([draw(_keywords), terms, None])

    # Optionally bind a fresh statement variable on a non-final atom and use
    # it as the subject of a later atom.
    if n_atoms >= 2 and draw(st.booleans()):
        bind_at = draw(st.integers(0, n_atoms - 2))
        sname = draw(st.sampled_from(["S", "T"]))
        if sname not in used_vars:
            used_vars.add(sname)
            atoms_raw[bind_at][2] = sname
            use_at = draw(st.integers(bind_at + 1, n_atoms - 1))
            atoms_raw[use_at][1][0] = ("var", sname)

    body_vars = sorted({n for _, ts, _ in atoms_raw for k, n in ts if k == "var"}
                       | {b for _, _, b in atoms_raw if b})
    if not body_vars:
        name = draw(_var_names)
        atoms_raw[0][1][0] = ("var", name)
        body_vars = [name]

    bound = {b for _, _, b in atoms_raw if b}
    typable = [v for v in body_vars if v not in bound]
    types = {}
    for v in typable:
        if draw(st.booleans()):
            types[v] = draw(_value_types)

    seen = set()
    atoms = []
    for keyword, terms_raw, binding in atoms_raw:
        terms = []
        for kind, text in terms_raw:
            if kind == "var":
                declared = types.get(text) if text not in seen else None
                seen.add(text)
                terms.append(IrTerm(VARIABLE, text, declared))
            else:
                terms.append(IrTerm(LITERAL, text))
        atoms.append(IrAtom(keyword, tuple(terms), binding))

    term_vars = sorted({t.text for a in atoms for t in a.terms if t.is_variable})
    n_head = draw(st.integers(1, min(2, len(term_vars))))
    head_names = draw(
        st.permutations(term_vars).map(lambda p: tuple(p[:n_head])))
    if draw(st.booleans()) and len(head_names) == 1:
        head = Aggregate(draw(st.sampled_from(["MAX", "MIN"])), head_names[0])
    else:
        head = VarList(head_names)
    return IrQuery(head=head, body=tuple(atoms))


@settings(max_examples=150, deadline=None)
@given(ir_queries())
def test_round_trip_property(q):
    assert parse_ir(render_ir(q)) == q


@settings(max_examples=100, deadline=None)
@given(ir_queries())
def test_atom_edge_bijection(q):
    g = build_query_graph(q)
    assert len(g.edges) + len(g.class_constraints) == len(q.body)


@settings(max_examples=100, deadline=None)
@given(ir_queries())
def test_graph_nodes_cover_exactly_the_terms(q):
    g = build_query_graph(q)
    keys = {n.key for n in g.nodes}
    for atom in q.body:
        for t in atom.terms:
            if t.is_variable:
                assert t.text in keys
    for name in q.head_vars:
        assert name in keys
