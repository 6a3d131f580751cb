// Deterministic force-directed layout; a fixed seed keeps renders stable.

import { GraphSpec } from "./protocol.js";
import { Point, neighborsOf } from "./state.js";

/** mulberry32: tiny deterministic PRNG. */
export function rng(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function forceLayout(graph: GraphSpec, seed = 42, iterations = 300): Point[] {
  const n = graph.vertices.length;
  if (n === 0) return [];
  if (n === 1) return [{ x: 0.5, y: 0.5 }];
  const rand = rng(seed);
  const pos: Point[] = [];
  for (let i = 0; i < n; i++) {
    pos.push({ x: rand(), y: rand() });
  }
  const k = 1.0 / Math.sqrt(n);
  for (let it = 0; it < iterations; it++) {
    const disp: Point[] = pos.map(() => ({ x: 0, y: 0 }));
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let dx = pos[i].x - pos[j].x;
        let dy = pos[i].y - pos[j].y;
        let d2 = dx * dx + dy * dy;
        if (d2 < 1e-6) {
          dx = 1e-3 * (1 + i - j);
          dy = 1e-3;
          d2 = dx * dx + dy * dy;
        }
        const rep = (k * k) / d2;
        disp[i].x += dx * rep;
        disp[i].y += dy * rep;
        disp[j].x -= dx * rep;
        disp[j].y -= dy * rep;
      }
    }
    for (const [a, b] of graph.edges) {
      const dx = pos[a].x - pos[b].x;
      const dy = pos[a].y - pos[b].y;
      const d = Math.sqrt(dx * dx + dy * dy) + 1e-9;
      const att = (d * d) / k;
      disp[a].x -= (dx / d) * att * 0.01;
      disp[a].y -= (dy / d) * att * 0.01;
      disp[b].x += (dx / d) * att * 0.01;
      disp[b].y += (dy / d) * att * 0.01;
    }
    const temp = 0.05 * (1 - it / iterations) + 0.002;
    for (let i = 0; i < n; i++) {
      const d = Math.sqrt(disp[i].x ** 2 + disp[i].y ** 2) + 1e-9;
      const step = Math.min(d, temp);
      pos[i].x += (disp[i].x / d) * step;
      pos[i].y += (disp[i].y / d) * step;
      pos[i].x = Math.min(0.97, Math.max(0.03, pos[i].x));
      pos[i].y = Math.min(0.97, Math.max(0.03, pos[i].y));
    }
  }
  // nudge isolated vertices apart from overlaps
  for (let i = 0; i < n; i++) {
    if (neighborsOf(graph, i).length === 0) {
      pos[i].x = 0.1 + 0.8 * (i / Math.max(1, n - 1));
    }
  }
  return pos;
}
