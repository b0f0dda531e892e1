"""Compile a query graph plus candidate sets into an executable graph,
SPARQL text and SQL text.

Variable naming is a stable contract (golden-filed by the tests): query
nodes are numbered first by a shared counter -- head variables (``?H0,
?H1, ...`` in head order), then body nodes in first-appearance order, where
entity keywords (term literals and class names) become ``?A<n>`` and plain
join variables become ``?V<n>``.  Distinct predicate keywords are then
numbered in first-appearance order as ``?C<n>`` on the same counter.  The
two-award example yields ``?H0 ?C3 ?A1. ?H0 ?C3 ?A2`` and the movie
triangle ``?H0 wdt:P31 ?A1. ?H0 ?C4 ?V2. ?V2 ?C5 ?V3. ?H0 ?C6 ?V3``.

SPARQL follows the Wikidata prefix conventions: ``wd:`` entities, ``wdt:``
direct properties, and the statement-node idiom (``p:``/``ps:``/``pq:``)
for qualifier access.  A qualified claim links subject -> statement node
via a ``p:``-prefixed candidate list; the statement's value hop is matched
property-agnostically with a ``STRSTARTS(..., STR(ps:))`` filter so every
candidate id is mentioned exactly once.  SQL targets the relational
encoding of the store (one ``claims`` alias per claim pattern, one
``qualifiers`` alias per qualifier pattern, joined on shared variables).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .errors import KindMismatch, MissingCandidates
from .index import CandidateSet
from .ir import (
    Aggregate,
    ClassConstraint,
    GraphEdge,
    LITERAL,
    QueryGraph,
    VARIABLE,
)
from .store import TypedValue, VALUE_COLUMNS

DEFAULT_CLASS_PROPERTY = "P31"

# Roles
HEAD = "H"
ANCHOR = "A"      # entity keyword -> candidate list
PREDICATE = "C"   # property keyword -> candidate list
JOIN = "V"        # internal join / statement variable

# Predicate usage contexts (they select the SPARQL prefix)
DIRECT = "direct"
STATEMENT = "statement"
QUALIFIER = "qualifier"

_PREDICATE_PREFIX = {DIRECT: "wdt:", STATEMENT: "p:", QUALIFIER: "pq:"}


@dataclass(frozen=True)
class QueryVar:
    name: str
    role: str
    source: str  # IR variable name or keyword text
    context: str = DIRECT  # predicate vars only


@dataclass(frozen=True)
class Slot:
    """Subject or value position: either a variable or a constant value."""

    var: Optional[str] = None
    const: Optional[TypedValue] = None


@dataclass(frozen=True)
class PropSlot:
    var: Optional[str] = None
    const: Optional[str] = None  # fixed property id (class constraints)


@dataclass(frozen=True)
class Pattern:
    kind: str  # "claim" or "qualifier"
    atom_index: int
    subject: Slot
    prop: PropSlot
    value: Slot
    value_tag: str
    statement_var: Optional[str] = None  # claim patterns bound with ':='
    is_class: bool = False


@dataclass
class ExecutableQueryGraph:
    variables: dict[str, QueryVar]
    patterns: list[Pattern]
    candidates: dict[str, CandidateSet]  # A/C variable name -> candidates
    head_vars: list[str]  # H variable names in projection order
    aggregate: Optional[tuple[str, str]]  # (MAX|MIN, H variable name)
    select_order: list[str]  # A/C variables, first-appearance order
    class_property: str
    var_tags: dict[str, str]  # value tag per non-candidate variable
    unsatisfiable: bool = False
    next_counter: int = 0

    def candidate_scores(self) -> dict[str, dict[str, float]]:
        return {
            name: {c.id: c.score for c in cs.candidates}
            for name, cs in self.candidates.items()
        }

    def candidate_labels(self) -> dict[str, dict[str, str]]:
        return {
            name: {c.id: c.label for c in cs.candidates}
            for name, cs in self.candidates.items()
        }


@dataclass(frozen=True)
class CompiledQuery:
    graph: ExecutableQueryGraph
    sparql: str
    sql: str


# ---------------------------------------------------------------------------
# Candidate binding


def _atoms_in_order(graph: QueryGraph):
    items: list = list(graph.edges) + list(graph.class_constraints)
    items.sort(key=lambda it: it.atom_index)
    return items


def required_keywords(graph: QueryGraph) -> dict[str, str]:
    """Map keyword -> required candidate kind ('entity' or 'property').

    Raises :class:`KindMismatch` when one keyword would need both kinds
    (the candidate map is keyed by keyword alone).
    """
    wanted: dict[str, str] = {}

    def need(keyword: str, kind: str):
        if wanted.setdefault(keyword, kind) != kind:
            raise KindMismatch(
                f"keyword {keyword!r} is used as both an entity and a "
                f"property; rename one occurrence")

    for item in _atoms_in_order(graph):
        if isinstance(item, ClassConstraint):
            need(item.keyword, "entity")
        else:
            need(item.keyword, "property")
    for node in graph.nodes:
        if node.kind == LITERAL and node.declared_type in (None, "entity_id"):
            need(node.text, "entity")
    return wanted


def bind_candidates(graph: QueryGraph, sets: Mapping[str, CandidateSet],
                    class_property: str = DEFAULT_CLASS_PROPERTY,
                    property_datatypes: Optional[Mapping[str, str]] = None,
                    ) -> ExecutableQueryGraph:
    """Replace every keyword of the graph by a named candidate variable.

    ``sets`` maps each keyword to its candidate list; ``property_datatypes``
    (property id -> datatype) drives value-column resolution for variables
    without a declared type.
    """
    property_datatypes = property_datatypes or {}
    node_by_key = {n.key: n for n in graph.nodes}
    statement_vars = {v for v, _ in graph.qualifier_attachments}

    wanted = required_keywords(graph)
    for keyword, kind in wanted.items():
        cs = sets.get(keyword)
        if cs is None or len(cs) == 0:
            raise MissingCandidates(keyword)
        if cs.kind != kind:
            raise KindMismatch(
                f"keyword {keyword!r} needs {kind} candidates, got {cs.kind}")

    variables: dict[str, QueryVar] = {}
    candidates: dict[str, CandidateSet] = {}
    by_node: dict[str, str] = {}      # node key -> variable name
    anchors: dict[str, str] = {}      # entity keyword text -> A variable
    preds: dict[tuple[str, str], str] = {}  # (keyword, context) -> C variable
    counter = 0

    def fresh(role: str, source: str, context: str = DIRECT) -> str:
        nonlocal counter
        name = f"{role}{counter}"
        counter += 1
        variables[name] = QueryVar(name=name, role=role, source=source,
                                   context=context)
        return name

    def anchor_for(keyword: str) -> str:
        if keyword not in anchors:
            anchors[keyword] = fresh(ANCHOR, keyword)
            candidates[anchors[keyword]] = sets[keyword]
        return anchors[keyword]

    def var_for_node(key: str) -> Optional[str]:
        """Variable for a term node; None for non-entity constants."""
        if key in by_node:
            return by_node[key]
        node = node_by_key[key]
        if node.kind == VARIABLE:
            role = HEAD if node.text in head_names else JOIN
            by_node[key] = fresh(role, node.text)
        elif node.declared_type in (None, "entity_id"):
            by_node[key] = anchor_for(node.text)
        else:
            return None  # typed literal: direct value constraint
        return by_node[key]

    head = graph.head
    if isinstance(head, Aggregate):
        head_names = (head.var,)
    else:
        head_names = head.names

    # Phase 1: nodes, in head order then body first-appearance order.
    for name in head_names:
        var_for_node(name)
    items = _atoms_in_order(graph)
    for item in items:
        if isinstance(item, ClassConstraint):
            var_for_node(item.node)
            anchor_for(item.keyword)
        else:
            var_for_node(item.subject)
            var_for_node(item.object)
            if item.statement_var:
                var_for_node(item.statement_var)

    # Phase 2: distinct predicate keywords, in first-appearance order.
    def pred_context(edge: GraphEdge) -> str:
        if edge.qualifier_access:
            return QUALIFIER
        if edge.statement_var:
            return STATEMENT
        return DIRECT

    for item in items:
        if isinstance(item, ClassConstraint):
            continue
        context = pred_context(item)
        key = (item.keyword, context)
        if key not in preds:
            preds[key] = fresh(PREDICATE, item.keyword, context)
            candidates[preds[key]] = sets[item.keyword]

    # Assemble patterns and resolve value tags.
    def value_tag_for(value_node, cvar: Optional[str]) -> str:
        if value_node is not None and value_node.kind == VARIABLE:
            declared = value_node.declared_type
            if declared and declared != "qualifier":
                return declared
            if value_node.text in statement_vars:
                return "statement"
        if value_node is not None and value_node.kind == LITERAL:
            if value_node.declared_type not in (None, "entity_id"):
                return value_node.declared_type
            return "entity_id"
        if cvar is not None:
            tags = {property_datatypes.get(c.id)
                    for c in candidates[cvar].candidates}
            tags.discard(None)
            if len(tags) == 1:
                return tags.pop()
        return "entity_id"

    def subject_slot(key: str, what: str) -> Slot:
        node = node_by_key[key]
        if node.kind == LITERAL and node.declared_type not in (None, "entity_id"):
            raise KindMismatch(
                f"{what} must name an entity, got a {node.declared_type} "
                f"literal {node.text!r}")
        if node.kind == VARIABLE and node.text in statement_vars:
            raise KindMismatch(
                f"statement variable {node.text!r} cannot be a {what}")
        return Slot(var=by_node[key])

    def value_slot(key: str) -> tuple[Slot, Optional[object]]:
        node = node_by_key[key]
        var = by_node.get(key)
        if var is None:
            value = TypedValue(node.declared_type,
                               _parse_const(node.declared_type, node.text))
            return Slot(const=value), node
        return Slot(var=var), node

    patterns: list[Pattern] = []
    for item in items:
        if isinstance(item, ClassConstraint):
            patterns.append(Pattern(
                kind="claim", atom_index=item.atom_index,
                subject=subject_slot(item.node, "class-constrained term"),
                prop=PropSlot(const=class_property),
                value=Slot(var=anchors[item.keyword]),
                value_tag="entity_id", is_class=True))
            continue
        context = pred_context(item)
        cvar = preds[(item.keyword, context)]
        if context == QUALIFIER:
            subj_node = node_by_key[item.subject]
            vslot, vnode = value_slot(item.object)
            patterns.append(Pattern(
                kind="qualifier", atom_index=item.atom_index,
                subject=Slot(var=by_node[item.subject]),
                prop=PropSlot(var=cvar), value=vslot,
                value_tag=value_tag_for(vnode, cvar)))
            continue
        obj_node = node_by_key[item.object]
        if obj_node.kind == VARIABLE and obj_node.text in statement_vars:
            raise KindMismatch(
                f"statement variable {obj_node.text!r} can only be the "
                f"subject of a qualifier atom")
        vslot, vnode = value_slot(item.object)
        patterns.append(Pattern(
            kind="claim", atom_index=item.atom_index,
            subject=subject_slot(item.subject, "claim subject"),
            prop=PropSlot(var=cvar), value=vslot,
            value_tag=value_tag_for(vnode, cvar),
            statement_var=(by_node[item.statement_var]
                           if item.statement_var else None)))

    # Variable-level tag consistency: entity on subject slots, the pattern's
    # value tag on value slots.  Conflicts make the query unsatisfiable.
    var_tags: dict[str, str] = {}
    unsatisfiable = False
    for name, qv in variables.items():
        if qv.role == ANCHOR:
            var_tags[name] = "entity_id"
    for pattern in patterns:
        slots = []
        if pattern.subject.var:
            tag = "statement" if pattern.kind == "qualifier" else "entity_id"
            slots.append((pattern.subject.var, tag))
        if pattern.statement_var:
            slots.append((pattern.statement_var, "statement"))
        if pattern.value.var:
            slots.append((pattern.value.var, pattern.value_tag))
        for var, tag in slots:
            if variables[var].role in (ANCHOR, PREDICATE):
                continue
            seen = var_tags.setdefault(var, tag)
            if seen != tag:
                unsatisfiable = True

    # SELECT order: per atom, terms before the predicate.
    select_order: list[str] = []

    def note(var: Optional[str]):
        if var and variables[var].role in (ANCHOR, PREDICATE) \
                and var not in select_order:
            select_order.append(var)

    for pattern in patterns:
        note(pattern.subject.var)
        note(pattern.value.var)
        note(pattern.prop.var)

    aggregate = None
    if isinstance(head, Aggregate):
        aggregate = (head.kind, by_node[head.var])

    return ExecutableQueryGraph(
        variables=variables,
        patterns=patterns,
        candidates=candidates,
        head_vars=[by_node[n] for n in head_names],
        aggregate=aggregate,
        select_order=select_order,
        class_property=class_property,
        var_tags=var_tags,
        unsatisfiable=unsatisfiable,
        next_counter=counter,
    )


def _parse_const(tag: str, text: str):
    from .store import parse_value

    if tag == "numeric":
        try:
            return parse_value(tag, float(text)).value
        except ValueError:
            raise KindMismatch(f"literal {text!r} is not numeric") from None
    try:
        return parse_value(tag, text).value
    except ValueError as exc:
        raise KindMismatch(str(exc)) from None


# ---------------------------------------------------------------------------
# SPARQL emission


def _sparql_value_const(value: TypedValue) -> str:
    if value.tag == "date":
        return f'"{value.value.isoformat()}"^^xsd:date'
    if value.tag == "numeric":
        return _sql_number(value.value)
    escaped = str(value.value).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def emit_sparql(g: ExecutableQueryGraph) -> str:
    """Render the executable graph as a Wikidata-convention SPARQL query."""
    lines: list[str] = []
    hop_filters: list[str] = []
    counter = g.next_counter

    def v(name: str) -> str:
        return f"?{name}"

    for pattern in g.patterns:
        subj = v(pattern.subject.var)
        if pattern.value.const is not None:
            obj = _sparql_value_const(pattern.value.const)
        else:
            obj = v(pattern.value.var)
        if pattern.prop.const is not None:
            prop = f"wdt:{pattern.prop.const}"
        else:
            prop = v(pattern.prop.var)
        if pattern.kind == "claim" and pattern.statement_var:
            stmt = v(pattern.statement_var)
            hop = f"V{counter}"
            counter += 1
            lines.append(f"{subj} {prop} {stmt}.")
            lines.append(f"{stmt} ?{hop} {obj}.")
            hop_filters.append(f"STRSTARTS(STR(?{hop}), STR(ps:))")
        else:
            lines.append(f"{subj} {prop} {obj}.")

    conditions = []
    for name in g.select_order:
        qv = g.variables[name]
        if qv.role == ANCHOR:
            prefix = "wd:"
        else:
            prefix = _PREDICATE_PREFIX[qv.context]
        ids = ", ".join(prefix + c.id for c in g.candidates[name].candidates)
        conditions.append(f"{v(name)} IN ({ids})")
    conditions.extend(hop_filters)

    if g.aggregate:
        kind, hvar = g.aggregate
        projection = [v(n) for n in g.select_order]
        projection.append(f"({kind}({v(hvar)}) AS ?agg)")
    else:
        projection = [v(n) for n in g.select_order] + [v(n) for n in g.head_vars]

    out = [f"SELECT {' '.join(projection)} WHERE {{"]
    out.extend(f"  {line}" for line in lines)
    if conditions:
        out.append("  FILTER (" + "\n       && ".join(conditions) + ")")
    out.append("}")
    if g.aggregate and g.select_order:
        out.append("GROUP BY " + " ".join(v(n) for n in g.select_order))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# SQL emission


def _sql_string(text: str) -> str:
    return "'" + text.replace("'", "''") + "'"


def _sql_number(value: float) -> str:
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def _sql_value_const(value: TypedValue) -> str:
    if value.tag == "numeric":
        return _sql_number(value.value)
    if value.tag == "date":
        return _sql_string(value.value.isoformat())
    return _sql_string(str(value.value))


def emit_sql(g: ExecutableQueryGraph) -> str:
    """Render the executable graph as ANSI-style SQL over the claims schema."""
    aliases: list[tuple[str, str]] = []  # (table, alias) per pattern
    for i, pattern in enumerate(g.patterns):
        table = "claims" if pattern.kind == "claim" else "qualifiers"
        aliases.append((table, f"{table[0]}{i}"))

    slots: dict[str, list[str]] = {}  # variable -> column expressions
    conditions: list[str] = []

    def bind(var: str, expr: str) -> bool:
        """Record a slot; emit an equality join when the var was seen."""
        exprs = slots.setdefault(var, [])
        exprs.append(expr)
        if len(exprs) > 1:
            conditions.append(f"{exprs[0]} = {expr}")
            return False
        return True

    for i, pattern in enumerate(g.patterns):
        alias = aliases[i][1]
        # property
        if pattern.prop.const is not None:
            conditions.append(f"{alias}.property = {_sql_string(pattern.prop.const)}")
        else:
            cvar = pattern.prop.var
            if bind(cvar, f"{alias}.property"):
                ids = ", ".join(_sql_string(c.id)
                                for c in g.candidates[cvar].candidates)
                conditions.append(f"{alias}.property IN ({ids})")
        # subject
        if pattern.kind == "qualifier":
            bind(pattern.subject.var, f"{alias}.statement_id")
        else:
            svar = pattern.subject.var
            if bind(svar, f"{alias}.subject") \
                    and g.variables[svar].role == ANCHOR:
                ids = ", ".join(_sql_string(c.id)
                                for c in g.candidates[svar].candidates)
                conditions.append(f"{alias}.subject IN ({ids})")
            if pattern.statement_var:
                bind(pattern.statement_var, f"{alias}.statement_id")
        # value
        column = f"{alias}.{VALUE_COLUMNS[pattern.value_tag]}" \
            if pattern.value_tag != "statement" else None
        if column is None:
            raise KindMismatch("claim value cannot be a statement variable")
        if pattern.value.const is not None:
            conditions.append(f"{column} = {_sql_value_const(pattern.value.const)}")
        else:
            vvar = pattern.value.var
            conditions.append(f"{column} IS NOT NULL")
            if bind(vvar, column) and g.variables[vvar].role == ANCHOR:
                ids = ", ".join(_sql_string(c.id)
                                for c in g.candidates[vvar].candidates)
                conditions.append(f"{column} IN ({ids})")

    if g.unsatisfiable:
        conditions.append("1 = 0")

    def var_expr(name: str) -> str:
        return slots[name][0]

    select_exprs = [f"{var_expr(n)} AS {n}" for n in g.select_order]
    group_by: list[str] = []
    if g.aggregate:
        kind, hvar = g.aggregate
        select_exprs.append(f"{kind}({var_expr(hvar)}) AS agg")
        group_by = [var_expr(n) for n in g.select_order]
        head = f"SELECT {', '.join(select_exprs)}"
    else:
        select_exprs.extend(f"{var_expr(n)} AS {n}" for n in g.head_vars)
        head = f"SELECT DISTINCT {', '.join(select_exprs)}"

    from_clause = "FROM " + ", ".join(f"{t} {a}" for t, a in aliases)
    out = [head, from_clause]
    if conditions:
        out.append("WHERE " + "\n  AND ".join(conditions))
    if group_by:
        out.append("GROUP BY " + ", ".join(group_by))
    return "\n".join(out) + ";\n"


def compile_query(graph: QueryGraph, sets: Mapping[str, CandidateSet],
                  class_property: str = DEFAULT_CLASS_PROPERTY,
                  property_datatypes: Optional[Mapping[str, str]] = None,
                  ) -> CompiledQuery:
    """bind + emit in one step."""
    g = bind_candidates(graph, sets, class_property=class_property,
                        property_datatypes=property_datatypes)
    return CompiledQuery(graph=g, sparql=emit_sparql(g), sql=emit_sql(g))
