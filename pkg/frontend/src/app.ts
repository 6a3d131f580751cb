// DOM shell of the playground: renders the view state as SVG plus panels,
// routes clicks into the protocol client.

import { HttpTransport, PlaygroundClient } from "./client.js";
import { DEMOS, Demo, demoByName } from "./demos.js";
import { forceLayout } from "./layout.js";
import { GraphSpec } from "./protocol.js";
import { ViewState, describeVerdict } from "./state.js";

const SVG_NS = "http://www.w3.org/2000/svg";

let client: PlaygroundClient | null = null;
let targetMode = false;
let animTimer: number | null = null;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function lampsForDisplay(state: ViewState): number[] {
  if (state.animation !== null) {
    return state.animation[state.animationStep];
  }
  return state.lamps;
}

function render(state: ViewState): void {
  const svg = el<HTMLElement>("board");
  while (svg.firstChild) svg.removeChild(svg.firstChild);
  const w = svg.clientWidth || 640;
  const h = svg.clientHeight || 420;
  const lamps = lampsForDisplay(state);
  for (const [a, b] of state.graph.edges) {
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(state.layout[a].x * w));
    line.setAttribute("y1", String(state.layout[a].y * h));
    line.setAttribute("x2", String(state.layout[b].x * w));
    line.setAttribute("y2", String(state.layout[b].y * h));
    line.setAttribute("class", "edge");
    svg.appendChild(line);
  }
  state.graph.vertices.forEach((_, v) => {
    const g = document.createElementNS(SVG_NS, "g");
    const c = document.createElementNS(SVG_NS, "circle");
    const x = state.layout[v].x * w;
    const y = state.layout[v].y * h;
    c.setAttribute("cx", String(x));
    c.setAttribute("cy", String(y));
    c.setAttribute("r", "16");
    const lit = lamps[v] === 1;
    const legal = !targetMode && state.animation === null && state.legal.includes(v);
    c.setAttribute(
      "class",
      `vertex ${lit ? "lit" : "unlit"} ${legal ? "legal" : ""} ${
        targetMode && state.target[v] === 1 ? "targeted" : ""
      }`,
    );
    g.appendChild(c);
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(x));
    label.setAttribute("y", String(y + 4));
    label.setAttribute("class", "vertex-label");
    label.textContent = String(v);
    g.appendChild(label);
    g.addEventListener("click", () => onVertexClick(v));
    svg.appendChild(g);
  });

  el<HTMLDivElement>("history").textContent =
    state.history.length > 0 ? `moves: ${state.history.join(" → ")}` : "no moves yet";
  el<HTMLDivElement>("target-row").textContent = `target: [${state.target.join(", ")}]`;
  const verdictBox = el<HTMLDivElement>("verdict");
  if (state.verdict) {
    verdictBox.textContent = describeVerdict(state.verdict);
    verdictBox.className = state.verdict.verdict === "same" ? "ok" : "bad";
    el<HTMLButtonElement>("animate").disabled =
      state.verdict.verdict !== "same" || state.verdict.witness === null;
  } else {
    verdictBox.textContent = "no query yet";
    verdictBox.className = "";
    el<HTMLButtonElement>("animate").disabled = true;
  }
  const minLitBox = el<HTMLDivElement>("minlit");
  minLitBox.textContent = state.minLit
    ? `minimum lit: ${state.minLit.count} via [${state.minLit.moves.join(", ")}]`
    : "";
  const classifyBox = el<HTMLDivElement>("classify");
  classifyBox.textContent = state.classify
    ? state.classify.per_component
        .map((tag, i) => `component ${i}: ${tag.replace("_", " ")}`)
        .join(" | ")
    : "";
  const banner = el<HTMLDivElement>("error-banner");
  if (state.error) {
    banner.textContent = state.error;
    banner.style.display = "block";
  } else {
    banner.style.display = "none";
  }
  el<HTMLDivElement>("busy").style.visibility = state.busy ? "visible" : "hidden";
}

function onVertexClick(v: number): void {
  if (!client) return;
  if (targetMode) {
    const next = client.state.target.slice();
    next[v] ^= 1;
    client.setTarget(next);
    render(client.state);
    return;
  }
  void client.userClick(v); // unlit vertices are ignored inside the client
}

function stopAnimation(): void {
  if (animTimer !== null) {
    window.clearInterval(animTimer);
    animTimer = null;
  }
}

function startDemo(demo: Demo): void {
  stopAnimation();
  targetMode = false;
  const layout = demo.layout.length === demo.graph.vertices.length
    ? demo.layout
    : forceLayout(demo.graph);
  client = new PlaygroundClient(new HttpTransport(), demo.graph, layout);
  client.onChange(render);
  client.setTarget(demo.graph.vertices.map(() => 0));
  void client.start(demo.lamps);
}

function startCustom(spec: GraphSpec, lamps: number[]): void {
  stopAnimation();
  targetMode = false;
  client = new PlaygroundClient(new HttpTransport(), spec, forceLayout(spec));
  client.onChange(render);
  client.setTarget(spec.vertices.map(() => 0));
  void client.start(lamps);
}

function wireControls(): void {
  const picker = el<HTMLSelectElement>("demo-picker");
  for (const demo of DEMOS) {
    const option = document.createElement("option");
    option.value = demo.name;
    option.textContent = demo.name;
    picker.appendChild(option);
  }
  picker.addEventListener("change", () => startDemo(demoByName(picker.value)));

  el<HTMLButtonElement>("undo").addEventListener("click", () => {
    if (client) void client.undo();
  });
  el<HTMLButtonElement>("minlit-btn").addEventListener("click", () => {
    if (client) void client.requestMinLit();
  });
  el<HTMLButtonElement>("classify-btn").addEventListener("click", () => {
    if (client) void client.requestClassify();
  });
  el<HTMLButtonElement>("target-mode").addEventListener("click", () => {
    targetMode = !targetMode;
    el<HTMLButtonElement>("target-mode").textContent = targetMode
      ? "editing target (click vertices)"
      : "edit target";
    if (client) render(client.state);
  });
  el<HTMLButtonElement>("query").addEventListener("click", () => {
    targetMode = false;
    if (client) void client.queryReachable();
  });
  el<HTMLButtonElement>("animate").addEventListener("click", () => {
    if (!client) return;
    stopAnimation();
    if (client.prepareWitnessAnimation() === null) return;
    render(client.state);
    animTimer = window.setInterval(() => {
      if (!client || !client.stepAnimation()) {
        stopAnimation();
      } else {
        render(client.state);
      }
    }, 450);
  });
  el<HTMLButtonElement>("load-custom").addEventListener("click", () => {
    try {
      const spec = JSON.parse(el<HTMLTextAreaElement>("custom-graph").value) as GraphSpec;
      const lamps = spec.vertices.map(() => 0);
      lamps[0] = 1;
      startCustom(spec, lamps);
    } catch (err) {
      el<HTMLDivElement>("error-banner").textContent = String(err);
      el<HTMLDivElement>("error-banner").style.display = "block";
    }
  });
}

window.addEventListener("DOMContentLoaded", () => {
  wireControls();
  startDemo(DEMOS[0]);
});
