// View model of the playground. The server is the authority for game state:
// lamps/legal always mirror the latest acknowledged response. The only game
// rule the client applies is legality gating of clicks, plus a display-only
// witness animation built from the graph's toggle rule.

import {
  ClassifyResponse,
  GraphSpec,
  MinLitResponse,
  ReachableResponse,
} from "./protocol.js";

export interface Point {
  x: number;
  y: number;
}

export interface VerdictInfo {
  verdict: "same" | "different";
  certificate: string | null;
  witness: number[] | null;
}

export interface ViewState {
  graph: GraphSpec;
  layout: Point[];
  session: string | null;
  lamps: number[];
  history: number[];
  legal: number[];
  target: number[];
  verdict: VerdictInfo | null;
  minLit: MinLitResponse | null;
  classify: ClassifyResponse | null;
  animation: number[][] | null;
  animationStep: number;
  busy: boolean;
  error: string | null;
}

export function initialViewState(graph: GraphSpec, layout: Point[]): ViewState {
  return {
    graph,
    layout,
    session: null,
    lamps: graph.vertices.map(() => 0),
    history: [],
    legal: [],
    target: graph.vertices.map(() => 0),
    verdict: null,
    minLit: null,
    classify: null,
    animation: null,
    animationStep: 0,
    busy: false,
    error: null,
  };
}

export function neighborsOf(graph: GraphSpec, v: number): number[] {
  const out: number[] = [];
  for (const [a, b] of graph.edges) {
    if (a === v) out.push(b);
    else if (b === v) out.push(a);
  }
  return out;
}

/** Display-only preview of one move: toggle the played vertex's neighbors. */
export function toggleFrame(graph: GraphSpec, lamps: number[], vertex: number): number[] {
  const next = lamps.slice();
  for (const u of neighborsOf(graph, vertex)) {
    next[u] ^= 1;
  }
  return next;
}

/** Lamp frames of a witness replay, starting from the current lamps. */
export function witnessFrames(
  graph: GraphSpec,
  lamps: number[],
  witness: number[],
): number[][] {
  const frames = [lamps.slice()];
  let current = lamps;
  for (const v of witness) {
    current = toggleFrame(graph, current, v);
    frames.push(current);
  }
  return frames;
}

export function applyVerdict(state: ViewState, response: ReachableResponse): void {
  state.verdict = {
    verdict: response.verdict,
    certificate: response.certificate ?? null,
    witness: response.witness ?? null,
  };
  state.animation = null;
  state.animationStep = 0;
}

export function describeVerdict(info: VerdictInfo): string {
  if (info.verdict === "same") {
    const n = info.witness ? info.witness.length : null;
    return n === null ? "reachable" : `reachable, ${n} move${n === 1 ? "" : "s"}`;
  }
  if (info.certificate === "ZeroVsNonzero") {
    return "unreachable: zero configuration is isolated";
  }
  return `unreachable: ${info.certificate}`;
}
