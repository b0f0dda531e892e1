"""Evaluate an executable query graph against the store; group and rank answers.

Evaluation is a conjunctive join over the patterns' matching rows: the rows
of each pattern are materialized from statement scans (or qualifier rows),
then combined greedily smallest-first with hash joins on shared variables.
Results are set-semantic over (head values, candidate assignment) and sorted
deterministically.

Answers sharing one concrete keyword-to-identifier assignment form a group;
the group's confidence is the arithmetic mean of that assignment's candidate
scores.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .compiler import ANCHOR, ExecutableQueryGraph, Pattern, PREDICATE
from .errors import TypeUnsupported
from .store import KgStore, TypedValue

Binding = tuple[str, object]  # (tag, payload); tag includes statement/property


@dataclass(frozen=True)
class Answer:
    """One satisfying assignment, projected to head values and candidates."""

    values: tuple[TypedValue, ...]
    assignment: tuple[tuple[str, str], ...]  # (variable, chosen id)
    scores: tuple[tuple[str, float], ...]

    def value_key(self):
        return tuple(v.sort_key() for v in self.values)


@dataclass(frozen=True)
class AnswerGroup:
    assignment: tuple[tuple[str, str], ...]
    confidence: float
    answers: tuple[Answer, ...]


def _var_order_key(name: str) -> tuple[str, int]:
    return (name[0], int(name[1:]))


def _pattern_vars(pattern: Pattern) -> list[str]:
    out = []
    for slot_var in (pattern.subject.var, pattern.prop.var, pattern.value.var,
                     pattern.statement_var):
        if slot_var:
            out.append(slot_var)
    return out


def _rows_for_pattern(pattern: Pattern, g: ExecutableQueryGraph,
                      store: KgStore) -> list[dict[str, Binding]]:
    candidates = g.candidates

    def id_set(var: Optional[str]) -> Optional[set]:
        if var and var in candidates:
            return {c.id for c in candidates[var].candidates}
        return None

    prop_ids = ({pattern.prop.const} if pattern.prop.const is not None
                else id_set(pattern.prop.var))
    subject_ids = id_set(pattern.subject.var)
    value_const = pattern.value.const
    value_ids = id_set(pattern.value.var)

    rows: list[dict[str, Binding]] = []
    if pattern.kind == "qualifier":
        source = store.iter_qualifiers()
        for statement_id, prop, value in source:
            if prop_ids is not None and prop not in prop_ids:
                continue
            if value.tag != pattern.value_tag:
                continue
            if value_const is not None and value != value_const:
                continue
            if value_ids is not None and value.value not in value_ids:
                continue
            row: dict[str, Binding] = {
                pattern.subject.var: ("statement", statement_id)}
            if pattern.prop.var:
                row[pattern.prop.var] = ("property", prop)
            if pattern.value.var:
                row[pattern.value.var] = (value.tag, value.value)
            rows.append(row)
        return rows

    values_filter = None
    if value_const is not None:
        values_filter = {value_const}
    elif value_ids is not None:
        values_filter = {TypedValue("entity_id", i) for i in value_ids}
    for stmt in store.scan(properties=prop_ids, values=values_filter):
        if subject_ids is not None and stmt.subject not in subject_ids:
            continue
        if stmt.value.tag != pattern.value_tag:
            continue
        row = {pattern.subject.var: ("entity_id", stmt.subject)}
        if pattern.prop.var:
            row[pattern.prop.var] = ("property", stmt.property)
        if pattern.value.var:
            # an atom like p(X, X) reuses the subject variable
            binding = (stmt.value.tag, stmt.value.value)
            if pattern.value.var in row and row[pattern.value.var] != binding:
                continue
            row[pattern.value.var] = binding
        if pattern.statement_var:
            row[pattern.statement_var] = ("statement", stmt.statement_id)
        rows.append(row)
    return rows


def _join(pattern_rows: list[list[dict[str, Binding]]]) -> list[dict[str, Binding]]:
    """Greedy smallest-first hash join over the per-pattern row lists."""
    remaining = list(range(len(pattern_rows)))
    remaining.sort(key=lambda i: (len(pattern_rows[i]), i))
    first = remaining.pop(0)
    solutions = [dict(r) for r in pattern_rows[first]]
    bound: set[str] = set()
    for row in pattern_rows[first][:1]:
        bound.update(row)

    while remaining:
        connected = [i for i in remaining
                     if pattern_rows[i] and any(
                         v in bound for v in pattern_rows[i][0])]
        pool = connected or remaining
        nxt = min(pool, key=lambda i: (len(pattern_rows[i]), i))
        remaining.remove(nxt)
        rows = pattern_rows[nxt]
        row_vars = set(rows[0]) if rows else set()
        shared = sorted(row_vars & bound)

        table: dict[tuple, list[dict[str, Binding]]] = {}
        for row in rows:
            table.setdefault(tuple(row[v] for v in shared), []).append(row)
        merged: list[dict[str, Binding]] = []
        for sol in solutions:
            for row in table.get(tuple(sol[v] for v in shared), []):
                out = dict(sol)
                out.update(row)
                merged.append(out)
        solutions = merged
        bound |= row_vars
        if not solutions:
            return []
    return solutions


def execute(g: ExecutableQueryGraph, store: KgStore) -> list[Answer]:
    """All satisfying assignments, deduplicated and deterministically sorted."""
    if g.unsatisfiable or not g.patterns:
        return []
    pattern_rows = [_rows_for_pattern(p, g, store) for p in g.patterns]
    if any(not rows for rows in pattern_rows):
        return []
    solutions = _join(pattern_rows)

    score_of = g.candidate_scores()
    candidate_vars = sorted(
        (n for n, v in g.variables.items() if v.role in (ANCHOR, PREDICATE)),
        key=_var_order_key)

    seen = set()
    answers = []
    for sol in solutions:
        values = tuple(
            TypedValue(*sol[h]) for h in g.head_vars)
        assignment = tuple(
            (name, str(sol[name][1])) for name in candidate_vars)
        key = (tuple(v.sort_key() for v in values), assignment)
        if key in seen:
            continue
        seen.add(key)
        scores = tuple(
            (name, score_of[name][cid]) for name, cid in assignment)
        answers.append(Answer(values=values, assignment=assignment,
                              scores=scores))
    answers.sort(key=lambda a: (a.value_key(), a.assignment))
    return answers


def evaluate_aggregate(answers: list[Answer], kind: str,
                       value_tag: str) -> list[Answer]:
    """MAX/MIN over the head variable, within each candidate-assignment group.

    One aggregate answer per group; raises :class:`TypeUnsupported` unless
    the aggregated values are numeric or date.
    """
    if value_tag not in ("numeric", "date"):
        raise TypeUnsupported(
            f"{kind} aggregate over {value_tag} values is not supported; "
            f"declare the variable '/ numeric' or '/ date'")
    pick = max if kind == "MAX" else min
    groups: dict[tuple, list[Answer]] = {}
    for answer in answers:
        groups.setdefault(answer.assignment, []).append(answer)
    out = []
    for assignment, members in sorted(groups.items()):
        best = pick(members, key=lambda a: a.values[0].value)
        out.append(Answer(values=best.values, assignment=assignment,
                          scores=members[0].scores))
    out.sort(key=lambda a: (a.value_key(), a.assignment))
    return out


def group_and_rank(answers: list[Answer]) -> list[AnswerGroup]:
    """Group answers by their full candidate assignment and rank by confidence.

    Confidence is the arithmetic mean of the assignment's scores; groups sort
    by confidence descending, then assignment ids ascending.
    """
    grouped: dict[tuple, list[Answer]] = {}
    for answer in answers:
        grouped.setdefault(answer.assignment, []).append(answer)
    out = []
    for assignment, members in grouped.items():
        scores = [s for _, s in members[0].scores]
        confidence = sum(scores) / len(scores) if scores else 0.0
        out.append(AnswerGroup(
            assignment=assignment, confidence=confidence,
            answers=tuple(members)))
    out.sort(key=lambda grp: (-grp.confidence,
                              tuple(cid for _, cid in grp.assignment)))
    return out
