// Shapes mirrored from the service's /api/ask response.

export interface CandidateEntry {
  id: string;
  label: string;
  score: number;
}

export interface GraphNode {
  key: string;
  kind: "variable" | "literal";
  text: string;
  declared_type: string | null;
  is_statement: boolean;
}

export interface GraphEdge {
  subject: string;
  object: string;
  keyword: string;
  atom_index: number;
  statement_var: string | null;
  qualifier_access: boolean;
}

export interface ClassConstraint {
  node: string;
  keyword: string;
  atom_index: number;
}

export interface QueryGraph {
  head: { vars?: string[]; aggregate?: string; var?: string };
  nodes: GraphNode[];
  edges: GraphEdge[];
  class_constraints: ClassConstraint[];
  qualifier_attachments: { statement_var: string; atom_index: number }[];
}

export interface AssignmentEntry {
  var: string;
  keyword: string;
  id: string;
  label: string;
  score: number;
}

export interface AnswerValue {
  var: string;
  type: string;
  value: string | number;
  label?: string;
  url?: string;
}

export interface Answer {
  values: AnswerValue[];
  entity_links: Record<string, string>;
}

export interface AnswerGroup {
  assignment: AssignmentEntry[];
  confidence: number;
  answers: Answer[];
}

export interface AskResponse {
  question?: string;
  provenance?: { mode: string; attempts: unknown[] };
  ir: string;
  query_graph: QueryGraph;
  candidates: Record<string, CandidateEntry[]>;
  sparql: string;
  sql: string;
  groups: AnswerGroup[];
  timings: Record<string, number>;
}

export interface StageFailure {
  stage: string;
  message: string;
  position?: { pos: number; line: number; col: number };
}
