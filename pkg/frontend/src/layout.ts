// Diagram layout: boundary nodes pinned to fixed left/right columns,
// interior nodes placed by a small force simulation (spring edges,
// pairwise repulsion). Deterministic: initial positions derive from node
// ids, no randomness.

import { DiagramJson, LabelKind, PhaseJson } from './types.js';

export interface Point {
  x: number;
  y: number;
}

export interface LayoutOptions {
  width: number;
  height: number;
  margin: number;
  iterations: number;
}

export const DEFAULT_LAYOUT: LayoutOptions = {
  width: 640,
  height: 400,
  margin: 40,
  iterations: 120,
};

const spread = (count: number, extent: number, margin: number) => (i: number) =>
  count <= 1 ? extent / 2 : margin + (i * (extent - 2 * margin)) / (count - 1);

export function layoutDiagram(
  diagram: DiagramJson,
  opts: LayoutOptions = DEFAULT_LAYOUT,
): Map<number, Point> {
  const { width, height, margin, iterations } = opts;
  const pos = new Map<number, Point>();
  const pinned = new Set<number>();

  const inY = spread(diagram.inputs.length, height, margin);
  diagram.inputs.forEach((id, i) => {
    pos.set(id, { x: margin, y: inY(i) });
    pinned.add(id);
  });
  const outY = spread(diagram.outputs.length, height, margin);
  diagram.outputs.forEach((id, i) => {
    pos.set(id, { x: width - margin, y: outY(i) });
    pinned.add(id);
  });

  const interior = diagram.nodes.map((n) => n.id).filter((id) => !pinned.has(id));
  interior.forEach((id, i) => {
    // deterministic ring start so repeated renders are stable
    const angle = (2 * Math.PI * i) / Math.max(interior.length, 1);
    pos.set(id, {
      x: width / 2 + 0.25 * width * Math.cos(angle),
      y: height / 2 + 0.25 * height * Math.sin(angle),
    });
  });

  const ids = diagram.nodes.map((n) => n.id);
  const springLength = Math.min(width, height) / 4;
  for (let step = 0; step < iterations; step += 1) {
    const force = new Map<number, Point>(ids.map((id) => [id, { x: 0, y: 0 }]));
    for (let i = 0; i < ids.length; i += 1) {
      for (let j = i + 1; j < ids.length; j += 1) {
        const a = pos.get(ids[i])!;
        const b = pos.get(ids[j])!;
        const dx = a.x - b.x;
        const dy = a.y - b.y;
        const d2 = Math.max(dx * dx + dy * dy, 1);
        const push = 2000 / d2;
        const fa = force.get(ids[i])!;
        const fb = force.get(ids[j])!;
        const d = Math.sqrt(d2);
        fa.x += (push * dx) / d;
        fa.y += (push * dy) / d;
        fb.x -= (push * dx) / d;
        fb.y -= (push * dy) / d;
      }
    }
    for (const e of diagram.edges) {
      const a = pos.get(e.src)!;
      const b = pos.get(e.tgt)!;
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const d = Math.max(Math.sqrt(dx * dx + dy * dy), 1);
      const pull = 0.02 * (d - springLength);
      const fa = force.get(e.src)!;
      const fb = force.get(e.tgt)!;
      fa.x += pull * (dx / d);
      fa.y += pull * (dy / d);
      fb.x -= pull * (dx / d);
      fb.y -= pull * (dy / d);
    }
    const cool = 1 - step / iterations;
    for (const id of interior) {
      const p = pos.get(id)!;
      const f = force.get(id)!;
      p.x = Math.min(
        width - 2 * margin,
        Math.max(2 * margin, p.x + cool * f.x),
      );
      p.y = Math.min(height - margin, Math.max(margin, p.y + cool * f.y));
    }
  }
  return pos;
}

export const NODE_COLORS: Record<LabelKind, string> = {
  open: '#555555',
  green: '#6fcf6f',
  red: '#ef7070',
  h: '#f2d440',
  diamond: '#222222',
};

export function phaseLabel(phase?: PhaseJson): string {
  if (!phase || phase.num === 0) return '';
  if (phase.den === 1) return `${phase.num}·π`;
  return `${phase.num}/${phase.den}·π`;
}
