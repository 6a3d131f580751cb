// Protocol client: one in-flight request per session, later actions queued.

import {
  ClassifyResponse,
  GraphSpec,
  MinLitResponse,
  NewResponse,
  ReachableResponse,
  Request,
  Response,
  StateResponse,
  isError,
} from "./protocol.js";
import {
  Point,
  ViewState,
  applyVerdict,
  initialViewState,
  witnessFrames,
} from "./state.js";

export interface Transport {
  send(request: Request): Promise<Response>;
}

export class HttpTransport implements Transport {
  constructor(private readonly url: string = "/api") {}

  async send(request: Request): Promise<Response> {
    const reply = await fetch(this.url, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
    });
    if (!reply.ok) {
      throw new Error(`http ${reply.status}`);
    }
    return (await reply.json()) as Response;
  }
}

export type Listener = (state: ViewState) => void;

export class PlaygroundClient {
  readonly state: ViewState;
  private queue: (() => Promise<void>)[] = [];
  private listeners: Listener[] = [];

  constructor(private readonly transport: Transport, graph: GraphSpec, layout: Point[]) {
    this.state = initialViewState(graph, layout);
  }

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) {
      listener(this.state);
    }
  }

  /** Serialized request pipeline: at most one request in flight. */
  private enqueue(job: () => Promise<void>): Promise<void> {
    const run = async () => {
      try {
        await job();
      } catch (err) {
        this.state.error = err instanceof Error ? err.message : String(err);
      }
      this.queue.shift();
      this.notify();
      if (this.queue.length > 0) {
        void this.queue[0]();
      } else {
        this.state.busy = false;
        this.notify();
      }
    };
    this.state.busy = true;
    this.queue.push(run);
    if (this.queue.length === 1) {
      void run();
    }
    return Promise.resolve();
  }

  /** Wait until every queued request has been acknowledged. */
  async idle(): Promise<void> {
    while (this.queue.length > 0) {
      await new Promise((resolve) => setTimeout(resolve, 0));
    }
  }

  private adoptState(response: NewResponse | StateResponse): void {
    this.state.lamps = response.state.lamps.slice();
    this.state.history = response.state.history.slice();
    this.state.legal = response.legal.slice();
  }

  start(lamps: number[]): Promise<void> {
    return this.enqueue(async () => {
      const response = await this.transport.send({
        op: "new",
        graph: this.state.graph,
        lamps,
      });
      if (isError(response)) {
        this.state.error = response.error;
        return;
      }
      const ok = response as NewResponse;
      this.state.session = ok.session;
      this.adoptState(ok);
      this.state.error = null;
    });
  }

  /** Click a vertex: gated locally, only lit vertices produce a request. */
  userClick(vertex: number): Promise<void> {
    if (!this.state.legal.includes(vertex) || this.state.session === null) {
      return Promise.resolve();
    }
    return this.enqueue(async () => {
      const response = await this.transport.send({
        op: "play",
        session: this.state.session!,
        vertex,
      });
      if (isError(response)) {
        if (response.error === "IllegalMove") {
          // lost a race with another writer: re-sync by opening a fresh
          // session at the lamps we last saw acknowledged
          const fresh = await this.transport.send({
            op: "new",
            graph: this.state.graph,
            lamps: this.state.lamps,
          });
          if (!isError(fresh)) {
            const ok = fresh as NewResponse;
            this.state.session = ok.session;
            this.adoptState(ok);
          }
          this.state.error = "move rejected; re-synced session";
          return;
        }
        this.state.error = response.error;
        return;
      }
      this.adoptState(response as StateResponse);
      this.state.verdict = null;
      this.state.animation = null;
      this.state.error = null;
    });
  }

  undo(): Promise<void> {
    if (this.state.session === null) {
      return Promise.resolve();
    }
    return this.enqueue(async () => {
      const response = await this.transport.send({
        op: "undo",
        session: this.state.session!,
      });
      if (isError(response)) {
        this.state.error = response.error;
        return;
      }
      this.adoptState(response as StateResponse);
      this.state.verdict = null;
      this.state.animation = null;
      this.state.error = null;
    });
  }

  setTarget(target: number[]): void {
    if (target.length !== this.state.graph.vertices.length) {
      throw new Error("target length must match the vertex count");
    }
    this.state.target = target.slice();
    this.notify();
  }

  queryReachable(): Promise<void> {
    if (this.state.session === null) {
      return Promise.resolve();
    }
    return this.enqueue(async () => {
      const response = await this.transport.send({
        op: "reachable",
        session: this.state.session!,
        target: this.state.target,
      });
      if (isError(response)) {
        this.state.error = response.error;
        return;
      }
      applyVerdict(this.state, response as ReachableResponse);
      this.state.error = null;
    });
  }

  requestMinLit(): Promise<void> {
    if (this.state.session === null) {
      return Promise.resolve();
    }
    return this.enqueue(async () => {
      const response = await this.transport.send({
        op: "min_lit",
        session: this.state.session!,
      });
      if (isError(response)) {
        this.state.error = response.error;
        return;
      }
      this.state.minLit = response as MinLitResponse;
      this.state.error = null;
    });
  }

  requestClassify(): Promise<void> {
    if (this.state.session === null) {
      return Promise.resolve();
    }
    return this.enqueue(async () => {
      const response = await this.transport.send({
        op: "classify",
        session: this.state.session!,
      });
      if (isError(response)) {
        this.state.error = response.error;
        return;
      }
      this.state.classify = response as ClassifyResponse;
      this.state.error = null;
    });
  }

  /** Build the display-only animation frames for the last witness. */
  prepareWitnessAnimation(): number[][] | null {
    const info = this.state.verdict;
    if (!info || info.verdict !== "same" || info.witness === null) {
      return null;
    }
    const frames = witnessFrames(this.state.graph, this.state.lamps, info.witness);
    this.state.animation = frames;
    this.state.animationStep = 0;
    this.notify();
    return frames;
  }

  stepAnimation(): boolean {
    if (this.state.animation === null) {
      return false;
    }
    if (this.state.animationStep + 1 >= this.state.animation.length) {
      return false;
    }
    this.state.animationStep += 1;
    this.notify();
    return true;
  }
}
