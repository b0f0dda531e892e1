"""Logic-like intermediate representation: types, parser, renderer, query graph.

The IR bridges natural-language questions and executable KG queries.  A query
is a head (projected variables, or a MAX/MIN aggregate over one variable)
followed by a body of relational atoms whose predicates and constants are
free-text keywords:

    X: received_award(X, "Oscar for Merit"); received_award(X, "Turing Award")

Grammar (whitespace and newlines between tokens are insignificant):

    query := head ":" atom (";" atom)*
    head  := var ("," var)* | ("MAX" | "MIN") "(" var ")"
    atom  := [var ":="] keyword "(" term ("," term)? ")"
    term  := (var | quoted-string) ["/" type]
    type  := "entity_id" | "string" | "date" | "numeric" | "qualifier"

Identifiers (variables and keywords) match ``[a-zA-Z_][a-zA-Z0-9_]*``; the
grammar position disambiguates the two (a keyword is always followed by a
parenthesised term list).  Quoted strings accept any character, with ``\\"``
and ``\\\\`` escapes.

A variable's datatype may be declared at any single occurrence and holds for
all of them.  After parsing, the declaration is carried on the variable's
first body occurrence, so ``parse_ir(render_ir(q))`` reproduces ``q`` exactly
for any query built that way (which includes everything ``parse_ir`` returns).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from .errors import DanglingQualifier, IrSyntaxError, TypeConflict, UnboundHeadVar

VARIABLE = "variable"
LITERAL = "literal"

DATATYPES = ("entity_id", "string", "date", "numeric", "qualifier")

AGGREGATE_KINDS = ("MAX", "MIN")


# ---------------------------------------------------------------------------
# Core types


@dataclass(frozen=True)
class IrTerm:
    """One argument of an atom: a variable or a quoted keyword literal."""

    kind: str  # VARIABLE or LITERAL
    text: str  # variable name, or literal text without quotes
    declared_type: Optional[str] = None

    @property
    def is_variable(self) -> bool:
        return self.kind == VARIABLE


@dataclass(frozen=True)
class IrAtom:
    """One relational atom, optionally binding a statement variable via ``:=``."""

    keyword: str
    terms: tuple[IrTerm, ...]
    binding: Optional[str] = None

    @property
    def arity(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class VarList:
    """Plain projection head: one or more variables."""

    names: tuple[str, ...]


@dataclass(frozen=True)
class Aggregate:
    """Aggregate head: MAX or MIN over a single variable."""

    kind: str
    var: str


Head = Union[VarList, Aggregate]


@dataclass(frozen=True)
class IrQuery:
    head: Head
    body: tuple[IrAtom, ...]

    @property
    def head_vars(self) -> tuple[str, ...]:
        if isinstance(self.head, Aggregate):
            return (self.head.var,)
        return self.head.names

    def var_types(self) -> dict[str, str]:
        """Declared datatype per variable (variables without one are absent)."""
        out: dict[str, str] = {}
        for atom in self.body:
            for term in atom.terms:
                if term.is_variable and term.declared_type is not None:
                    out.setdefault(term.text, term.declared_type)
        return out

    def bound_vars(self) -> dict[str, int]:
        """Statement variables bound with ``:=``, mapped to their atom index."""
        return {a.binding: i for i, a in enumerate(self.body) if a.binding}


# ---------------------------------------------------------------------------
# Lexer


_SYMBOLS = {
    ":=": "BIND",
    ":": "COLON",
    ",": "COMMA",
    ";": "SEMI",
    "(": "LPAREN",
    ")": "RPAREN",
    "/": "SLASH",
}


@dataclass(frozen=True)
class _Token:
    type: str
    value: str
    pos: int
    line: int
    col: int


def _is_ident_start(ch: str) -> bool:
    return ch.isascii() and (ch.isalpha() or ch == "_")


def _is_ident_char(ch: str) -> bool:
    return ch.isascii() and (ch.isalnum() or ch == "_")


def _lex(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1
            continue
        start, sline, scol = i, line, col
        if text.startswith(":=", i):
            tokens.append(_Token("BIND", ":=", start, sline, scol))
            i += 2
            col += 2
            continue
        if ch in _SYMBOLS:
            tokens.append(_Token(_SYMBOLS[ch], ch, start, sline, scol))
            i += 1
            col += 1
            continue
        if _is_ident_start(ch):
            j = i + 1
            while j < n and _is_ident_char(text[j]):
                j += 1
            tokens.append(_Token("IDENT", text[i:j], start, sline, scol))
            col += j - i
            i = j
            continue
        if ch == '"':
            j = i + 1
            out: list[str] = []
            while j < n:
                c = text[j]
                if c == "\\" and j + 1 < n and text[j + 1] in ('"', "\\"):
                    out.append(text[j + 1])
                    j += 2
                    continue
                if c == '"':
                    break
                if c == "\n":
                    raise IrSyntaxError(
                        "unterminated string literal", start, sline, scol,
                        expected=('"',))
                out.append(c)
                j += 1
            if j >= n:
                raise IrSyntaxError(
                    "unterminated string literal", start, sline, scol,
                    expected=('"',))
            tokens.append(_Token("STRING", "".join(out), start, sline, scol))
            col += j + 1 - i
            i = j + 1
            continue
        raise IrSyntaxError(
            f"unexpected character {ch!r}", start, sline, scol,
            expected=("identifier", "string", "punctuation"))
    tokens.append(_Token("EOF", "", n, line, col))
    return tokens


# ---------------------------------------------------------------------------
# Parser


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    @property
    def cur(self) -> _Token:
        return self.tokens[self.i]

    def peek(self, offset: int = 1) -> _Token:
        j = min(self.i + offset, len(self.tokens) - 1)
        return self.tokens[j]

    def advance(self) -> _Token:
        tok = self.cur
        if tok.type != "EOF":
            self.i += 1
        return tok

    def expect(self, ttype: str, what: str) -> _Token:
        if self.cur.type != ttype:
            self.fail(what)
        return self.advance()

    def fail(self, *expected: str):
        tok = self.cur
        shown = tok.value if tok.type != "EOF" else "end of input"
        raise IrSyntaxError(
            f"expected {' or '.join(expected)}, found {shown!r}",
            tok.pos, tok.line, tok.col, expected=expected)

    def parse_query(self) -> IrQuery:
        head = self.parse_head()
        self.expect("COLON", "':'")
        atoms = [self.parse_atom()]
        while self.cur.type == "SEMI":
            self.advance()
            atoms.append(self.parse_atom())
        if self.cur.type != "EOF":
            self.fail("';'", "end of query")
        return IrQuery(head=head, body=tuple(atoms))

    def parse_head(self) -> Head:
        if self.cur.type != "IDENT":
            self.fail("head variable", "MAX", "MIN")
        if self.cur.value in AGGREGATE_KINDS and self.peek().type == "LPAREN":
            kind = self.advance().value
            self.advance()  # LPAREN
            var = self.expect("IDENT", "aggregate variable").value
            self.expect("RPAREN", "')'")
            return Aggregate(kind=kind, var=var)
        names = [self.advance().value]
        while self.cur.type == "COMMA":
            self.advance()
            tok = self.cur
            name = self.expect("IDENT", "head variable").value
            if name in names:
                raise IrSyntaxError(
                    f"duplicate head variable {name!r}",
                    tok.pos, tok.line, tok.col, expected=("distinct variable",))
            names.append(name)
        return VarList(names=tuple(names))

    def parse_atom(self) -> IrAtom:
        if self.cur.type != "IDENT":
            self.fail("atom")
        binding = None
        if self.peek().type == "BIND":
            binding = self.advance().value
            self.advance()  # BIND
            if self.cur.type != "IDENT":
                self.fail("predicate keyword")
        keyword = self.advance().value
        self.expect("LPAREN", "'('")
        terms = [self.parse_term()]
        if self.cur.type == "COMMA":
            self.advance()
            terms.append(self.parse_term())
        self.expect("RPAREN", "')' (atoms take one or two terms)")
        return IrAtom(keyword=keyword, terms=tuple(terms), binding=binding)

    def parse_term(self) -> IrTerm:
        tok = self.cur
        if tok.type == "IDENT":
            self.advance()
            kind, text = VARIABLE, tok.value
        elif tok.type == "STRING":
            self.advance()
            if not tok.value:
                raise IrSyntaxError(
                    "empty keyword literal", tok.pos, tok.line, tok.col,
                    expected=("non-empty string",))
            kind, text = LITERAL, tok.value
        else:
            self.fail("variable", "quoted string")
        declared = None
        if self.cur.type == "SLASH":
            self.advance()
            ttok = self.cur
            name = self.expect("IDENT", "datatype name").value
            if name not in DATATYPES:
                raise IrSyntaxError(
                    f"unknown datatype {name!r}", ttok.pos, ttok.line, ttok.col,
                    expected=DATATYPES)
            declared = name
        return IrTerm(kind=kind, text=text, declared_type=declared)


def _term_positions(tokens: list[_Token]) -> dict[str, _Token]:
    """First token per identifier, for positioned validation errors."""
    firsts: dict[str, _Token] = {}
    for tok in tokens:
        if tok.type == "IDENT":
            firsts.setdefault(tok.value, tok)
    return firsts


def _validate(query: IrQuery, firsts: dict[str, _Token]) -> IrQuery:
    def where(name: str) -> tuple[int, int, int]:
        tok = firsts.get(name)
        return (tok.pos, tok.line, tok.col) if tok else (0, 1, 1)

    bound = {}
    for idx, atom in enumerate(query.body):
        if atom.binding:
            if atom.binding in bound:
                raise TypeConflict(
                    f"variable {atom.binding!r} is bound with ':=' more than once",
                    *where(atom.binding))
            bound[atom.binding] = idx

    # Declared-once rule, and 'qualifier' reserved for := variables.
    types: dict[str, str] = {}
    for atom in query.body:
        for term in atom.terms:
            if not term.is_variable or term.declared_type is None:
                continue
            seen = types.get(term.text)
            if seen is not None and seen != term.declared_type:
                raise TypeConflict(
                    f"variable {term.text!r} declared both "
                    f"'{seen}' and '{term.declared_type}'", *where(term.text))
            types[term.text] = term.declared_type
            if term.declared_type == "qualifier" and term.text not in bound:
                raise TypeConflict(
                    f"type 'qualifier' on {term.text!r} requires a ':=' binding",
                    *where(term.text))
            if term.declared_type != "qualifier" and term.text in bound:
                raise TypeConflict(
                    f"statement variable {term.text!r} cannot be declared "
                    f"'{term.declared_type}'", *where(term.text))

    # Head variables must occur in the body (as a term or as a binding).
    occurring = set(bound)
    for atom in query.body:
        occurring.update(t.text for t in atom.terms if t.is_variable)
    for name in query.head_vars:
        if name not in occurring:
            raise UnboundHeadVar(
                f"head variable {name!r} does not occur in the body", *where(name))

    # Statement variables must be used in a later atom, never before binding.
    for name, bind_idx in bound.items():
        used_later = False
        for idx, atom in enumerate(query.body):
            for term in atom.terms:
                if term.is_variable and term.text == name:
                    if idx <= bind_idx:
                        raise DanglingQualifier(
                            f"statement variable {name!r} used before (or inside) "
                            f"the atom that binds it", *where(name))
                    used_later = True
        if not used_later:
            raise DanglingQualifier(
                f"statement variable {name!r} is bound but never used",
                *where(name))

    return _canonicalize_types(query, types)


def _canonicalize_types(query: IrQuery, types: dict[str, str]) -> IrQuery:
    """Attach each variable's declared type to its first body occurrence."""
    pending = dict(types)
    atoms = []
    for atom in query.body:
        terms = []
        for term in atom.terms:
            if term.is_variable:
                declared = pending.pop(term.text, None)
                terms.append(IrTerm(VARIABLE, term.text, declared))
            else:
                terms.append(term)
        atoms.append(IrAtom(atom.keyword, tuple(terms), atom.binding))
    return IrQuery(head=query.head, body=tuple(atoms))


def parse_ir(text: str) -> IrQuery:
    """Parse IR text into a validated :class:`IrQuery`.

    Raises :class:`IrSyntaxError`, :class:`TypeConflict`,
    :class:`UnboundHeadVar` or :class:`DanglingQualifier`, each positioned.
    """
    tokens = _lex(text)
    query = _Parser(tokens).parse_query()
    return _validate(query, _term_positions(tokens))


# ---------------------------------------------------------------------------
# Renderer


def _render_term(term: IrTerm) -> str:
    if term.is_variable:
        out = term.text
    else:
        escaped = term.text.replace("\\", "\\\\").replace('"', '\\"')
        out = f'"{escaped}"'
    if term.declared_type is not None:
        out += f" / {term.declared_type}"
    return out


def render_ir(query: IrQuery) -> str:
    """Render a query back to IR text; inverse of :func:`parse_ir`."""
    if isinstance(query.head, Aggregate):
        head = f"{query.head.kind}({query.head.var})"
    else:
        head = ", ".join(query.head.names)
    atoms = []
    for atom in query.body:
        prefix = f"{atom.binding} := " if atom.binding else ""
        args = ", ".join(_render_term(t) for t in atom.terms)
        atoms.append(f"{prefix}{atom.keyword}({args})")
    return f"{head}: " + "; ".join(atoms)


# ---------------------------------------------------------------------------
# Query graph


@dataclass(frozen=True)
class GraphNode:
    """A variable or keyword-literal constant."""

    key: str
    kind: str  # VARIABLE or LITERAL
    text: str
    declared_type: Optional[str] = None
    is_statement: bool = False


@dataclass(frozen=True)
class GraphEdge:
    """One binary atom: directed from first to second term."""

    subject: str
    object: str
    keyword: str
    atom_index: int
    statement_var: Optional[str] = None  # binding introduced by this atom
    qualifier_access: bool = False  # subject is a statement variable


@dataclass(frozen=True)
class ClassConstraint:
    """One unary atom: node must be an instance of the keyword's class."""

    node: str
    keyword: str
    atom_index: int


@dataclass(frozen=True)
class QueryGraph:
    nodes: tuple[GraphNode, ...]
    edges: tuple[GraphEdge, ...]
    class_constraints: tuple[ClassConstraint, ...]
    qualifier_attachments: tuple[tuple[str, int], ...]  # (statement var, atom index)
    head: Head

    def node(self, key: str) -> GraphNode:
        for n in self.nodes:
            if n.key == key:
                return n
        raise KeyError(key)


def _term_key(term: IrTerm) -> str:
    if term.is_variable:
        return term.text
    key = f'"{term.text}"'
    if term.declared_type is not None:
        key += f"/{term.declared_type}"
    return key


def build_query_graph(query: IrQuery) -> QueryGraph:
    """Derive the abstract query graph of a valid query.

    Unary atoms become class constraints, binary atoms become directed edges,
    and qualifier-bound atoms attach a statement node to their edge.  Exactly
    one edge or class constraint exists per body atom.  Node order is
    deterministic: head variables first, then first appearance in the body
    (terms before the atom's binding variable).
    """
    nodes: dict[str, GraphNode] = {}
    types = query.var_types()
    bound = query.bound_vars()

    def add_var(name: str) -> str:
        if name not in nodes:
            nodes[name] = GraphNode(
                key=name, kind=VARIABLE, text=name,
                declared_type=types.get(name),
                is_statement=name in bound)
        return name

    def add_term(term: IrTerm) -> str:
        if term.is_variable:
            return add_var(term.text)
        key = _term_key(term)
        if key not in nodes:
            nodes[key] = GraphNode(
                key=key, kind=LITERAL, text=term.text,
                declared_type=term.declared_type)
        return key

    for name in query.head_vars:
        add_var(name)

    edges: list[GraphEdge] = []
    classes: list[ClassConstraint] = []
    attachments: list[tuple[str, int]] = []
    for idx, atom in enumerate(query.body):
        keys = [add_term(t) for t in atom.terms]
        if atom.binding:
            add_var(atom.binding)
            attachments.append((atom.binding, idx))
        if atom.arity == 1:
            classes.append(ClassConstraint(node=keys[0], keyword=atom.keyword,
                                           atom_index=idx))
        else:
            subj = atom.terms[0]
            qualifier_access = (subj.is_variable and subj.text in bound
                                and bound[subj.text] < idx)
            edges.append(GraphEdge(
                subject=keys[0], object=keys[1], keyword=atom.keyword,
                atom_index=idx, statement_var=atom.binding,
                qualifier_access=qualifier_access))

    return QueryGraph(
        nodes=tuple(nodes.values()),
        edges=tuple(edges),
        class_constraints=tuple(classes),
        qualifier_attachments=tuple(attachments),
        head=query.head,
    )


def graph_to_dict(graph: QueryGraph) -> dict:
    """JSON-friendly form of the graph (consumed by the web UI)."""
    head: dict[str, object]
    if isinstance(graph.head, Aggregate):
        head = {"aggregate": graph.head.kind, "var": graph.head.var}
    else:
        head = {"vars": list(graph.head.names)}
    return {
        "head": head,
        "nodes": [
            {
                "key": n.key,
                "kind": n.kind,
                "text": n.text,
                "declared_type": n.declared_type,
                "is_statement": n.is_statement,
            }
            for n in graph.nodes
        ],
        "edges": [
            {
                "subject": e.subject,
                "object": e.object,
                "keyword": e.keyword,
                "atom_index": e.atom_index,
                "statement_var": e.statement_var,
                "qualifier_access": e.qualifier_access,
            }
            for e in graph.edges
        ],
        "class_constraints": [
            {"node": c.node, "keyword": c.keyword, "atom_index": c.atom_index}
            for c in graph.class_constraints
        ],
        "qualifier_attachments": [
            {"statement_var": v, "atom_index": i}
            for v, i in graph.qualifier_attachments
        ],
    }
