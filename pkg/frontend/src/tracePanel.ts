/** Propagation traces as a step list.  Steps carry staggered animation
 * delays so a fresh trace plays out visually; the data is verbatim from the
 * server. */

import type { TraceDocument } from "./types.js";
import { Child, VNode, h } from "./vnode.js";

const STAGGER_MS = 140;

function changed(before: string[], after: string[]): string[] {
  const prior = new Set(before);
  return after.filter((lit) => !prior.has(lit));
}

export function renderTrace(trace: TraceDocument | null, title = "propagation"): VNode {
  if (trace === null) {
    return h("div", { class: "trace trace-empty" }, []);
  }
  const steps: Child[] = trace.steps.map((step, i) =>
    h(
      "li",
      {
        class: "trace-step",
        style: `animation-delay: ${i * STAGGER_MS}ms`,
      },
      [
        h("span", { class: "trace-rule" }, [`rule ${step.rule_index}`]),
        h("span", { class: "trace-change" }, [changed(step.before, step.after).join(" ")]),
      ],
    ),
  );
  const tail: Child[] = [];
  if (trace.terminal) {
    tail.push(h("li", { class: "trace-end trace-terminal" }, ["settled"]));
  }
  for (const diag of trace.diagnostics) {
    tail.push(
      h("li", { class: `trace-end trace-${diag.kind}` }, [
        diag.kind === "inconsistent" ? "contradiction" : diag.kind,
        diag.decisions?.length ? `: ${diag.decisions.join(", ")}` : "",
      ]),
    );
  }
  return h("div", { class: "trace" }, [
    h("h3", {}, [title]),
    h("ol", { class: "trace-steps" }, [...steps, ...tail]),
  ]);
}
