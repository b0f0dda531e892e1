// Query-graph JSON -> positioned SVG primitives. Nodes sit on a circle in
// their response order; every edge and class constraint of the payload maps
// to exactly one drawn element (the contract is fidelity, not aesthetics).

import type { QueryGraph } from "./types.js";

export interface PlacedNode {
  key: string;
  x: number;
  y: number;
  label: string;
  kind: "variable" | "literal";
  isStatement: boolean;
  isHead: boolean;
  classes: string[]; // class-constraint keywords attached to this node
}

export interface PlacedEdge {
  from: string;
  to: string;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  labelX: number;
  labelY: number;
  label: string;
  qualifierAccess: boolean;
  statementVar: string | null;
}

export interface GraphLayout {
  width: number;
  height: number;
  nodes: PlacedNode[];
  edges: PlacedEdge[];
}

export function headVars(graph: QueryGraph): string[] {
  if (graph.head.vars) {
    return graph.head.vars;
  }
  return graph.head.var ? [graph.head.var] : [];
}

export function layoutGraph(
  graph: QueryGraph,
  width = 640,
  height = 420,
): GraphLayout {
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) / 2 - 70;
  const heads = new Set(headVars(graph));

  const classesByNode = new Map<string, string[]>();
  for (const constraint of graph.class_constraints) {
    const existing = classesByNode.get(constraint.node) ?? [];
    existing.push(constraint.keyword);
    classesByNode.set(constraint.node, existing);
  }

  const count = graph.nodes.length;
  const nodes: PlacedNode[] = graph.nodes.map((node, i) => {
    const angle = (2 * Math.PI * i) / Math.max(count, 1) - Math.PI / 2;
    return {
      key: node.key,
      x: count === 1 ? cx : cx + radius * Math.cos(angle),
      y: count === 1 ? cy : cy + radius * Math.sin(angle),
      label: node.kind === "literal" ? `"${node.text}"` : node.text,
      kind: node.kind,
      isStatement: node.is_statement,
      isHead: heads.has(node.key),
      classes: classesByNode.get(node.key) ?? [],
    };
  });

  const at = new Map(nodes.map((n) => [n.key, n]));
  const edges: PlacedEdge[] = graph.edges.map((edge) => {
    const a = at.get(edge.subject);
    const b = at.get(edge.object);
    if (!a || !b) {
      throw new Error(`edge references unknown node: ${edge.subject} -> ${edge.object}`);
    }
    return {
      from: edge.subject,
      to: edge.object,
      x1: a.x,
      y1: a.y,
      x2: b.x,
      y2: b.y,
      labelX: (a.x + b.x) / 2,
      labelY: (a.y + b.y) / 2 - 6,
      label: edge.keyword,
      qualifierAccess: edge.qualifier_access,
      statementVar: edge.statement_var,
    };
  });

  return { width, height, nodes, edges };
}

const SVG_NS = "http://www.w3.org/2000/svg";

export function renderGraphSvg(doc: Document, graph: QueryGraph): SVGElement {
  const layout = layoutGraph(graph);
  const svg = doc.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${layout.width} ${layout.height}`);
  svg.setAttribute("class", "query-graph");

  for (const edge of layout.edges) {
    const line = doc.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(edge.x1));
    line.setAttribute("y1", String(edge.y1));
    line.setAttribute("x2", String(edge.x2));
    line.setAttribute("y2", String(edge.y2));
    line.setAttribute("class",
      edge.qualifierAccess ? "edge qualifier-access" : "edge");
    svg.appendChild(line);

    const text = doc.createElementNS(SVG_NS, "text");
    text.setAttribute("x", String(edge.labelX));
    text.setAttribute("y", String(edge.labelY));
    text.setAttribute("class", "edge-label");
    text.textContent = edge.statementVar
      ? `${edge.statementVar} := ${edge.label}`
      : edge.label;
    svg.appendChild(text);
  }

  for (const node of layout.nodes) {
    const group = doc.createElementNS(SVG_NS, "g");
    const classNames = ["node", node.kind];
    if (node.isHead) classNames.push("head");
    if (node.isStatement) classNames.push("statement");
    group.setAttribute("class", classNames.join(" "));

    const circle = doc.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(node.x));
    circle.setAttribute("cy", String(node.y));
    circle.setAttribute("r", node.kind === "variable" ? "16" : "10");
    group.appendChild(circle);

    const text = doc.createElementNS(SVG_NS, "text");
    text.setAttribute("x", String(node.x));
    text.setAttribute("y", String(node.y - 22));
    text.setAttribute("class", "node-label");
    text.textContent = node.classes.length
      ? `${node.label} : ${node.classes.join(", ")}`
      : node.label;
    group.appendChild(text);
    svg.appendChild(group);
  }

  return svg;
}
