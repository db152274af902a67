/** The decision panel: controls for visible untaken decisions, retract
 * affordances for taken ones, and status banners.  Contents mirror the
 * server view exactly; enablement and values are never computed locally. */

import type { Diagnostic, ViewDocument } from "./types.js";
import { Child, VNode, h } from "./vnode.js";

export interface PanelCallbacks {
  submit(decision: string, value: unknown): void;
  retract(decision: string): void;
  preview(decision: string, value: unknown): void;
  clearPreview(): void;
}

const NO_CALLBACKS: PanelCallbacks = {
  submit: () => undefined,
  retract: () => undefined,
  preview: () => undefined,
  clearPreview: () => undefined,
};

function valueOf(token: string): unknown {
  if (token === "true") return true;
  if (token === "false") return false;
  return token;
}

export function renderBanners(status: string, diagnostics: Diagnostic[]): VNode {
  const banners: Child[] = [];
  if (status === "inconsistent") {
    const diag = diagnostics.find((d) => d.kind === "inconsistent");
    const parts = ["configuration is contradictory"];
    if (diag?.decisions?.length) {
      parts.push(`conflicting: ${diag.decisions.join(", ")}`);
    }
    if (diag?.culprits?.length) {
      parts.push(`constraints: ${diag.culprits.join("; ")}`);
    }
    banners.push(h("div", { class: "banner banner-inconsistent" }, [parts.join(" — ")]));
  } else if (status === "non_terminating") {
    banners.push(
      h("div", { class: "banner banner-nonterminating" }, [
        "rule propagation does not settle from here",
      ]),
    );
  }
  return h("div", { class: "banners" }, banners);
}

export function renderDecisionPanel(
  view: ViewDocument,
  callbacks: PanelCallbacks = NO_CALLBACKS,
): VNode {
  const rows: Child[] = [];
  for (const decision of view.decisions) {
    if (decision.kind === "transition") {
      rows.push(
        h("div", { class: "decision open", "data-decision": decision.name }, [
          h("span", { class: "decision-name" }, [`transition ${decision.name}`]),
          h(
            "button",
            { class: "take", "data-value": "" },
            ["fire"],
            { click: () => callbacks.submit(decision.name, null) },
          ),
        ]),
      );
      continue;
    }
    if (decision.taken) {
      rows.push(
        h("div", { class: "decision taken", "data-decision": decision.name }, [
          h("span", { class: "decision-name" }, [decision.name]),
          h("span", { class: "decision-value" }, [decision.value ?? ""]),
          h(
            "button",
            { class: "retract" },
            ["retract"],
            { click: () => callbacks.retract(decision.name) },
          ),
        ]),
      );
    } else if (decision.visible) {
      const choices = decision.allowed.map((token) =>
        h(
          "button",
          { class: "take", "data-value": token },
          [token],
          {
            click: () => callbacks.submit(decision.name, valueOf(token)),
            mouseenter: () => callbacks.preview(decision.name, valueOf(token)),
            mouseleave: () => callbacks.clearPreview(),
          },
        ),
      );
      rows.push(
        h("div", { class: "decision open", "data-decision": decision.name }, [
          h("span", { class: "decision-name" }, [decision.name]),
          h("span", { class: "choices" }, choices),
        ]),
      );
    }
  }
  if (rows.length === 0) {
    rows.push(h("div", { class: "decision-panel-empty" }, ["no open decisions"]));
  }
  return h("div", { class: "decision-panel" }, [
    renderBanners(view.status, view.diagnostics),
    h("div", { class: "decisions" }, rows),
  ]);
}

export function renderAssets(view: ViewDocument): VNode {
  return h(
    "ul",
    { class: "assets" },
    view.assets.map((asset) =>
      h("li", { class: `asset asset-${asset.status}` }, [
        h("span", { class: "asset-name" }, [asset.name]),
        h("span", { class: "asset-status" }, [asset.status]),
      ]),
    ),
  );
}

export function renderHistory(view: ViewDocument, callbacks: PanelCallbacks = NO_CALLBACKS): VNode {
  return h(
    "ol",
    { class: "history" },
    view.history.map((entry) =>
      h("li", { class: "history-entry" }, [
        `${entry.decision} = ${entry.value || "fired"}`,
        h(
          "button",
          { class: "retract" },
          ["retract"],
          { click: () => callbacks.retract(entry.decision) },
        ),
      ]),
    ),
  );
}

/** Decision names the panel offers controls for (used by the contract tests
 * to compare against the server's visible set). */
export function openDecisionNames(panel: VNode): string[] {
  const names: string[] = [];
  const walk = (node: Child): void => {
    if (typeof node === "string") return;
    const cls = (node.attrs["class"] ?? "").split(/\s+/);
    if (cls.includes("decision") && cls.includes("open")) {
      names.push(node.attrs["data-decision"]);
    }
    node.children.forEach(walk);
  };
  walk(panel);
  return names.sort();
}
