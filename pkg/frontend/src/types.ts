/** Wire types mirroring the session service documents. The UI renders these
 * verbatim; it never evaluates configuration logic itself. */

export interface DecisionView {
  name: string;
  kind: string;
  value?: string;
  taken: boolean;
  visible: boolean;
  allowed: string[];
  options: string[];
}

export interface AssetView {
  name: string;
  status: "included" | "excluded" | "open" | "unknown";
}

export interface Diagnostic {
  kind: string;
  message: string;
  culprits?: string[];
  decisions?: string[];
  rule_index?: number;
}

export interface TraceStep {
  rule_index: number;
  before: string[];
  after: string[];
}

export interface TraceDocument {
  steps: TraceStep[];
  terminal: boolean;
  diagnostics: Diagnostic[];
}

export interface HistoryEntry {
  decision: string;
  value: string;
  transition_index: number;
}

export interface AnomalySummary {
  states: number;
  inconsistent: number;
  asset_conflicts?: number;
  incompleteness: number;
  redundant_pairs: number;
  cycles: number;
  rule_confluent: boolean;
  user_confluent: boolean;
  non_terminating: number;
}

export interface ViewDocument {
  session_id: string;
  status: "ready" | "inconsistent" | "non_terminating";
  diagnostics: Diagnostic[];
  state: string[];
  decisions: DecisionView[];
  visible_decisions: string[];
  assets: AssetView[];
  history: HistoryEntry[];
  last_trace: TraceDocument | null;
  anomaly_overlay?: AnomalySummary;
}

export interface GraphVertex {
  id: number;
  literals: string[];
  inconsistent: boolean;
  rule_terminal: boolean;
  initial: boolean;
}

export interface GraphEdge {
  source: number;
  index: number;
  target: number;
  kind: "user" | "rule";
}

export interface ConfluenceDoc {
  confluent: boolean;
  counterexample?: unknown;
  non_terminating?: number[];
}

export interface AnomaliesDoc {
  inconsistent: { state: number; path: number[] }[];
  incompleteness: { formula: string; state: number }[];
  redundant_pairs: { first: number; second: number; source: number; target: number }[];
  cycles: number[][];
  rule_confluence: ConfluenceDoc;
  user_confluence: ConfluenceDoc;
}

export interface GraphDocument {
  vertices: GraphVertex[];
  edges: GraphEdge[];
  canonical_paths: number[][];
  anomalies: AnomaliesDoc;
}

export interface UploadResponse {
  model_id: string;
  analysis: AnomalySummary;
  api_version: string;
}

export interface SessionResponse {
  session_id: string;
  model_id: string;
  view: ViewDocument;
}

export interface DecisionResponse {
  trace: TraceDocument;
  view: ViewDocument;
}

export interface ErrorDocument {
  code: string;
  message: string;
  detail: Record<string, unknown>;
}
