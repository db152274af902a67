/** A minimal virtual node layer.  Render functions stay pure (and therefore
 * testable without a DOM); `mount` realizes a tree in the browser. */

export type Handler = (event: Event) => void;

export interface VNode {
  tag: string;
  attrs: Record<string, string>;
  children: Child[];
  on: Record<string, Handler>;
}

export type Child = VNode | string;

export function h(
  tag: string,
  attrs: Record<string, string> = {},
  children: Child[] = [],
  on: Record<string, Handler> = {},
): VNode {
  return { tag, attrs, children, on };
}

const SVG_NS = "http://www.w3.org/2000/svg";
const SVG_TAGS = new Set(["svg", "g", "circle", "line", "text", "title", "path"]);

export function mount(node: Child, doc: Document = document): Node {
  if (typeof node === "string") {
    return doc.createTextNode(node);
  }
  const el = SVG_TAGS.has(node.tag)
    ? doc.createElementNS(SVG_NS, node.tag)
    : doc.createElement(node.tag);
  for (const [key, value] of Object.entries(node.attrs)) {
    el.setAttribute(key, value);
  }
  for (const [event, handler] of Object.entries(node.on)) {
    el.addEventListener(event, handler);
  }
  for (const child of node.children) {
    el.appendChild(mount(child, doc));
  }
  return el;
}

/** Flattened text content, for assertions. */
export function textOf(node: Child): string {
  if (typeof node === "string") {
    return node;
  }
  return node.children.map(textOf).join(" ").replace(/\s+/g, " ").trim();
}

/** All nodes (including the root) matching a predicate, in document order. */
export function findAll(node: Child, match: (v: VNode) => boolean): VNode[] {
  if (typeof node === "string") {
    return [];
  }
  const here = match(node) ? [node] : [];
  return here.concat(node.children.flatMap((c) => findAll(c, match)));
}

export function byClass(node: Child, cls: string): VNode[] {
  return findAll(
    node,
    (v) => (v.attrs["class"] ?? "").split(/\s+/).includes(cls),
  );
}
