/** Application shell: loads a model, runs one session against the service,
 * and re-renders the whole view on every server response.  The client keeps
 * no derived logic state; `view` is always the server's latest document. */

import { ApiClient, ApiError } from "./api.js";
import { renderAssets, renderDecisionPanel, renderHistory } from "./decisionPanel.js";
import { findVertex, renderStateGraph } from "./graphView.js";
import { renderTrace } from "./tracePanel.js";
import type { GraphDocument, TraceDocument, ViewDocument } from "./types.js";
import { Child, h, mount } from "./vnode.js";

interface AppState {
  modelId?: string;
  sessionId?: string;
  view?: ViewDocument;
  graph?: GraphDocument;
  preview?: { decision: string; value: unknown; trace: TraceDocument } | null;
  selected?: { id: number; literals: string[] } | null;
  error?: string | null;
  busy: boolean;
}

export class App {
  state: AppState = { busy: false, preview: null, selected: null, error: null };

  constructor(
    private readonly client: ApiClient,
    private readonly root: HTMLElement | null = null,
  ) {}

  async loadModel(doc: unknown): Promise<void> {
    await this.guard(async () => {
      const upload = await this.client.uploadModel(doc);
      const session = await this.client.newSession(upload.model_id);
      const graph = await this.client.modelGraph(upload.model_id);
      this.state.modelId = upload.model_id;
      this.state.sessionId = session.session_id;
      this.state.view = session.view;
      this.state.graph = graph;
      this.state.preview = null;
      this.state.selected = null;
    });
  }

  async submit(decision: string, value: unknown): Promise<void> {
    await this.guard(async () => {
      const response = await this.client.takeDecision(this.state.sessionId!, decision, value);
      this.state.view = response.view;
      this.state.preview = null;
    });
  }

  async retract(decision: string): Promise<void> {
    await this.guard(async () => {
      const response = await this.client.retract(this.state.sessionId!, decision);
      this.state.view = response.view;
      this.state.preview = null;
    });
  }

  async preview(decision: string, value: unknown): Promise<void> {
    if (this.state.busy || !this.state.sessionId) {
      return;
    }
    try {
      const response = await this.client.whatif(this.state.sessionId, decision, value);
      this.state.preview = { decision, value, trace: response.trace };
      this.render();
    } catch {
      // previews are best effort; applicability errors just mean no preview
    }
  }

  clearPreview(): void {
    if (this.state.preview) {
      this.state.preview = null;
      this.render();
    }
  }

  /** one in-flight mutation at a time; errors surface inline */
  private async guard(work: () => Promise<void>): Promise<void> {
    if (this.state.busy) {
      return;
    }
    this.state.busy = true;
    this.state.error = null;
    this.render();
    try {
      await work();
    } catch (error) {
      this.state.error =
        error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
    } finally {
      this.state.busy = false;
      this.render();
    }
  }

  tree(): Child {
    const s = this.state;
    if (!s.view) {
      return h("div", { class: "app app-empty" }, [
        h("p", {}, ["paste a model document and load it"]),
        s.error ? h("div", { class: "banner banner-error" }, [s.error]) : "",
      ]);
    }
    const callbacks = {
      submit: (d: string, v: unknown) => void this.submit(d, v),
      retract: (d: string) => void this.retract(d),
      preview: (d: string, v: unknown) => void this.preview(d, v),
      clearPreview: () => this.clearPreview(),
    };
    const columns: Child[] = [
      h("section", { class: "col col-decisions" }, [
        h("h2", {}, ["decisions"]),
        renderDecisionPanel(s.view, callbacks),
        h("h2", {}, ["history"]),
        renderHistory(s.view, callbacks),
        h("h2", {}, ["assets"]),
        renderAssets(s.view),
      ]),
      h("section", { class: "col col-trace" }, [
        s.preview
          ? renderTrace(s.preview.trace, `what if ${s.preview.decision} = ${s.preview.value}`)
          : renderTrace(s.view.last_trace, "last propagation"),
      ]),
      h("section", { class: "col col-graph" }, [
        h("h2", {}, ["state graph"]),
        s.graph
          ? renderStateGraph(s.graph, {
              currentLiterals: s.view.state,
              onSelect: (id, literals) => {
                this.state.selected = { id, literals };
                this.render();
              },
            })
          : "",
        s.selected
          ? h("div", { class: "node-details" }, [
              h("h3", {}, [`state ${s.selected.id}`]),
              h("code", {}, [s.selected.literals.join(" ")]),
            ])
          : "",
      ]),
    ];
    return h("div", { class: `app status-${s.view.status}${s.busy ? " busy" : ""}` }, [
      s.error ? h("div", { class: "banner banner-error" }, [s.error]) : "",
      h("div", { class: "columns" }, columns),
    ]);
  }

  render(): void {
    if (this.root) {
      this.root.replaceChildren(mount(this.tree()));
    }
  }
}

export function boot(): void {
  const root = document.getElementById("root");
  const input = document.getElementById("model-input") as HTMLTextAreaElement | null;
  const button = document.getElementById("load-model");
  if (!root || !input || !button) {
    return;
  }
  const app = new App(new ApiClient(""), root);
  button.addEventListener("click", () => {
    try {
      void app.loadModel(JSON.parse(input.value));
    } catch (error) {
      root.replaceChildren(
        mount(h("div", { class: "banner banner-error" }, [`invalid JSON: ${error}`])),
      );
    }
  });
  app.render();
}

if (typeof document !== "undefined" && document.getElementById("root")) {
  boot();
}
