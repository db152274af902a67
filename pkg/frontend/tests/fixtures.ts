import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type {
  DecisionResponse,
  ErrorDocument,
  GraphDocument,
  TraceDocument,
  UploadResponse,
  ViewDocument,
} from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));

export function fixture<T>(name: string): T {
  const text = readFileSync(join(here, "..", "fixtures", `${name}.json`), "utf8");
  return JSON.parse(text) as T;
}

export const viewInitial = () => fixture<ViewDocument>("steelplant_view_initial");
export const viewAfterRetract = () => fixture<ViewDocument>("steelplant_view_after_retract");
export const takeStainless = () => fixture<DecisionResponse>("steelplant_take_stainless");
export const whatifSpray = () => fixture<{ trace: TraceDocument }>("steelplant_whatif_sprayheader");
export const whatifJet = () => fixture<{ trace: TraceDocument }>("steelplant_whatif_dynamicjet");
export const steelGraph = () => fixture<GraphDocument>("steelplant_graph");
export const example4Graph = () => fixture<GraphDocument>("example4_graph");
export const flipflopGraph = () => fixture<GraphDocument>("flipflop_graph");
export const steelUpload = () => fixture<UploadResponse>("steelplant_upload");
export const errorNotVisible = () => fixture<ErrorDocument>("error_not_visible");
