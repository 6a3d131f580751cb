// Wire types of the sigma-game JSON protocol (one request, one response).

export interface GraphSpec {
  vertices: number[];
  edges: [number, number][];
}

export interface StatePayload {
  lamps: number[];
  history: number[];
}

export interface NewRequest {
  op: "new";
  graph: GraphSpec;
  lamps: number[];
}

export interface PlayRequest {
  op: "play";
  session: string;
  vertex: number;
}

export interface UndoRequest {
  op: "undo";
  session: string;
}

export interface ReachableRequest {
  op: "reachable";
  session: string;
  target: number[];
}

export interface MinLitRequest {
  op: "min_lit";
  session: string;
}

export interface ClassifyRequest {
  op: "classify";
  session: string;
}

export type Request =
  | NewRequest
  | PlayRequest
  | UndoRequest
  | ReachableRequest
  | MinLitRequest
  | ClassifyRequest;

export interface ErrorResponse {
  error: string;
  message?: string;
}

export interface NewResponse {
  session: string;
  state: StatePayload;
  legal: number[];
}

export interface StateResponse {
  state: StatePayload;
  legal: number[];
}

export interface ReachableResponse {
  verdict: "same" | "different";
  certificate: string | null;
  witness?: number[];
}

export interface MinLitResponse {
  count: number;
  lamps: number[];
  moves: number[];
}

export interface ClassifyResponse {
  components: number[][];
  per_component: ("orthogonal" | "line_graph")[];
  roots: ({ vertices: number; edges: [number, number][] } | null)[];
  root?: { vertices: number; edges: [number, number][] };
}

export type Response =
  | ErrorResponse
  | NewResponse
  | StateResponse
  | ReachableResponse
  | MinLitResponse
  | ClassifyResponse;

export function isError(r: Response): r is ErrorResponse {
  return typeof (r as ErrorResponse).error === "string";
}
