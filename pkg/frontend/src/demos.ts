// Bundled demo graphs with fixed layouts for reproducible rendering.

import { GraphSpec } from "./protocol.js";
import { Point } from "./state.js";

export interface Demo {
  name: string;
  graph: GraphSpec;
  layout: Point[];
  lamps: number[];
}

export const DEMOS: Demo[] = [
  {
    name: "k2",
    graph: { vertices: [0, 1], edges: [[0, 1]] },
    layout: [
      { x: 0.35, y: 0.5 },
      { x: 0.65, y: 0.5 },
    ],
    lamps: [1, 0],
  },
  {
    name: "p3",
    graph: { vertices: [0, 1, 2], edges: [[0, 1], [1, 2]] },
    layout: [
      { x: 0.2, y: 0.5 },
      { x: 0.5, y: 0.5 },
      { x: 0.8, y: 0.5 },
    ],
    lamps: [0, 1, 0],
  },
  {
    name: "c4",
    graph: { vertices: [0, 1, 2, 3], edges: [[0, 1], [1, 2], [2, 3], [0, 3]] },
    layout: [
      { x: 0.3, y: 0.3 },
      { x: 0.7, y: 0.3 },
      { x: 0.7, y: 0.7 },
      { x: 0.3, y: 0.7 },
    ],
    lamps: [1, 1, 0, 0],
  },
  {
    name: "e6",
    graph: {
      vertices: [0, 1, 2, 3, 4, 5],
      edges: [[0, 1], [1, 2], [2, 3], [3, 4], [2, 5]],
    },
    layout: [
      { x: 0.1, y: 0.6 },
      { x: 0.3, y: 0.6 },
      { x: 0.5, y: 0.6 },
      { x: 0.7, y: 0.6 },
      { x: 0.9, y: 0.6 },
      { x: 0.5, y: 0.25 },
    ],
    lamps: [1, 0, 0, 0, 0, 0],
  },
  {
    name: "two_component",
    graph: { vertices: [0, 1, 2, 3], edges: [[0, 1], [2, 3]] },
    layout: [
      { x: 0.2, y: 0.35 },
      { x: 0.4, y: 0.35 },
      { x: 0.6, y: 0.65 },
      { x: 0.8, y: 0.65 },
    ],
    lamps: [1, 0, 1, 0],
  },
];

export function demoByName(name: string): Demo {
  const demo = DEMOS.find((d) => d.name === name);
  if (!demo) {
    throw new Error(`unknown demo ${name}`);
  }
  return demo;
}
