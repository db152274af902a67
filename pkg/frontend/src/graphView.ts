/** State-graph rendering: deterministic force-directed layout over SVG.
 * Nodes are colored by status, cycle witnesses and redundant edge pairs are
 * highlighted, and the session's current state is marked.  Oversized graphs
 * degrade to summary statistics. */

import type { GraphDocument } from "./types.js";
import { Child, VNode, h } from "./vnode.js";

export const DEFAULT_NODE_CAP = 500;

export interface Point {
  x: number;
  y: number;
}

export interface LayoutOptions {
  width?: number;
  height?: number;
  iterations?: number;
}

/** Spring-embedder layout.  Starting positions sit on a circle in vertex
 * order and the iteration count is fixed, so the result is reproducible. */
export function forceLayout(graph: GraphDocument, opts: LayoutOptions = {}): Point[] {
  const width = opts.width ?? 900;
  const height = opts.height ?? 600;
  const iterations = opts.iterations ?? 150;
  const n = graph.vertices.length;
  if (n === 0) {
    return [];
  }
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) * 0.38;
  const pos: Point[] = graph.vertices.map((_, i) => ({
    x: cx + radius * Math.cos((2 * Math.PI * i) / n),
    y: cy + radius * Math.sin((2 * Math.PI * i) / n),
  }));
  const edges = graph.edges
    .filter((e) => e.source !== e.target)
    .map((e) => [e.source, e.target] as const);
  const area = width * height;
  const k = Math.sqrt(area / n);
  let temperature = Math.min(width, height) / 8;
  for (let round = 0; round < iterations; round++) {
    const disp: Point[] = pos.map(() => ({ x: 0, y: 0 }));
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let dx = pos[i].x - pos[j].x;
        let dy = pos[i].y - pos[j].y;
        let dist = Math.hypot(dx, dy);
        if (dist < 1e-6) {
          // deterministic nudge for coincident points
          dx = 0.01 * (i - j);
          dy = 0.01;
          dist = Math.hypot(dx, dy);
        }
        const force = (k * k) / dist;
        disp[i].x += (dx / dist) * force;
        disp[i].y += (dy / dist) * force;
        disp[j].x -= (dx / dist) * force;
        disp[j].y -= (dy / dist) * force;
      }
    }
    for (const [a, b] of edges) {
      const dx = pos[a].x - pos[b].x;
      const dy = pos[a].y - pos[b].y;
      const dist = Math.max(Math.hypot(dx, dy), 1e-6);
      const force = (dist * dist) / k;
      disp[a].x -= (dx / dist) * force;
      disp[a].y -= (dy / dist) * force;
      disp[b].x += (dx / dist) * force;
      disp[b].y += (dy / dist) * force;
    }
    for (let i = 0; i < n; i++) {
      const len = Math.max(Math.hypot(disp[i].x, disp[i].y), 1e-6);
      const step = Math.min(len, temperature);
      pos[i].x += (disp[i].x / len) * step;
      pos[i].y += (disp[i].y / len) * step;
      pos[i].x = Math.min(width - 20, Math.max(20, pos[i].x));
      pos[i].y = Math.min(height - 20, Math.max(20, pos[i].y));
    }
    temperature *= 0.97;
  }
  return pos;
}

function cycleEdgeKeys(graph: GraphDocument): Set<string> {
  const keys = new Set<string>();
  for (const cycle of graph.anomalies.cycles) {
    for (let i = 0; i + 1 < cycle.length; i++) {
      keys.add(`${cycle[i]}->${cycle[i + 1]}`);
    }
  }
  return keys;
}

function redundantEdgeKeys(graph: GraphDocument): Set<string> {
  const keys = new Set<string>();
  for (const pair of graph.anomalies.redundant_pairs) {
    keys.add(`${pair.source}:${pair.first}:${pair.target}`);
    keys.add(`${pair.source}:${pair.second}:${pair.target}`);
  }
  return keys;
}

export function nodeClass(graph: GraphDocument, id: number, currentId?: number): string {
  const vertex = graph.vertices[id];
  const classes = ["node"];
  if (vertex.inconsistent) {
    classes.push("node-inconsistent");
  } else if (vertex.rule_terminal) {
    classes.push("node-terminal");
  } else {
    classes.push("node-consistent");
  }
  if (vertex.initial) {
    classes.push("node-initial");
  }
  if (currentId === id) {
    classes.push("node-current");
  }
  return classes.join(" ");
}

/** The vertex matching a session's literal set, if it is in the graph. */
export function findVertex(graph: GraphDocument, literals: string[]): number | undefined {
  const key = [...literals].sort().join("|");
  for (const vertex of graph.vertices) {
    if (vertex.literals.join("|") === key) {
      return vertex.id;
    }
  }
  return undefined;
}

export interface GraphViewOptions {
  cap?: number;
  currentLiterals?: string[];
  onSelect?(id: number, literals: string[]): void;
  width?: number;
  height?: number;
  iterations?: number;
}

export function renderGraphSummary(graph: GraphDocument): VNode {
  const a = graph.anomalies;
  const items: Child[] = [
    h("li", {}, [`${graph.vertices.length} states`]),
    h("li", {}, [`${graph.edges.length} transitions`]),
    h("li", {}, [`${a.inconsistent.length} inconsistent states`]),
    h("li", {}, [`${a.redundant_pairs.length} redundant rule pairs`]),
    h("li", {}, [`${a.cycles.length} cycle witnesses`]),
    h("li", {}, [
      a.user_confluence.confluent ? "order independent" : "order dependent",
    ]),
  ];
  return h("div", { class: "graph-summary" }, [
    h("p", {}, ["graph too large to draw; summary:"]),
    h("ul", {}, items),
  ]);
}

export function renderStateGraph(graph: GraphDocument, opts: GraphViewOptions = {}): VNode {
  const cap = opts.cap ?? DEFAULT_NODE_CAP;
  if (graph.vertices.length > cap) {
    return renderGraphSummary(graph);
  }
  const width = opts.width ?? 900;
  const height = opts.height ?? 600;
  const layout = forceLayout(graph, { width, height, iterations: opts.iterations });
  const currentId =
    opts.currentLiterals === undefined ? undefined : findVertex(graph, opts.currentLiterals);
  const cycles = cycleEdgeKeys(graph);
  const redundant = redundantEdgeKeys(graph);

  const edgeNodes: Child[] = graph.edges.map((edge) => {
    const classes = ["edge", edge.kind === "user" ? "edge-user" : "edge-rule"];
    if (cycles.has(`${edge.source}->${edge.target}`)) {
      classes.push("edge-cycle");
    }
    if (redundant.has(`${edge.source}:${edge.index}:${edge.target}`)) {
      classes.push("edge-redundant");
    }
    if (edge.source === edge.target) {
      classes.push("edge-self");
      const p = layout[edge.source];
      return h("path", {
        class: classes.join(" "),
        d: `M ${p.x} ${p.y - 8} a 8 8 0 1 1 8 8`,
        fill: "none",
      });
    }
    const a = layout[edge.source];
    const b = layout[edge.target];
    return h("line", {
      class: classes.join(" "),
      x1: String(a.x),
      y1: String(a.y),
      x2: String(b.x),
      y2: String(b.y),
      "data-index": String(edge.index),
    });
  });

  const nodeNodes: Child[] = graph.vertices.map((vertex) => {
    const p = layout[vertex.id];
    const positive = vertex.literals.filter((l) => !l.startsWith("!"));
    return h(
      "g",
      { class: nodeClass(graph, vertex.id, currentId), "data-id": String(vertex.id) },
      [
        h("circle", { cx: String(p.x), cy: String(p.y), r: vertex.initial ? "10" : "7" }, [
          h("title", {}, [positive.join(" ") || "{}"]),
        ]),
      ],
      {
        click: () => opts.onSelect?.(vertex.id, vertex.literals),
      },
    );
  });

  return h("div", { class: "graph-view" }, [
    h(
      "svg",
      {
        viewBox: `0 0 ${width} ${height}`,
        class: "graph-svg",
        preserveAspectRatio: "xMidYMid meet",
      },
      [h("g", { class: "edges" }, edgeNodes), h("g", { class: "nodes" }, nodeNodes)],
    ),
  ]);
}
