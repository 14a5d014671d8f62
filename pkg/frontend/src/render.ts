// SVG rendering of a diagram: spiders as colored circles with phase
// labels, the Hadamard generator as a yellow square, the scalar diamond
// as a rotated square, open boundary nodes as small dots. Produces a
// plain SVG string so it is testable without a DOM.

import { DiagramJson, DiagramNode } from './types.js';
import { DEFAULT_LAYOUT, LayoutOptions, NODE_COLORS, layoutDiagram, phaseLabel } from './layout.js';

const esc = (s: string) =>
  s.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;');

const isDiagram = (d: unknown): d is DiagramJson => {
  const obj = d as DiagramJson;
  return (
    !!obj &&
    Array.isArray(obj.nodes) &&
    Array.isArray(obj.edges) &&
    Array.isArray(obj.inputs) &&
    Array.isArray(obj.outputs)
  );
};

const nodeShape = (n: DiagramNode, x: number, y: number): string => {
  const color = NODE_COLORS[n.label] ?? '#999999';
  switch (n.label) {
    case 'h':
      return `<rect x="${x - 9}" y="${y - 9}" width="18" height="18" fill="${color}" stroke="black"/>`;
    case 'diamond':
      return (
        `<rect x="${x - 8}" y="${y - 8}" width="16" height="16" fill="${color}" ` +
        `stroke="black" transform="rotate(45 ${x} ${y})"/>`
      );
    case 'open':
      return `<circle cx="${x}" cy="${y}" r="4" fill="${color}"/>`;
    default: {
      const label = phaseLabel(n.phase);
      const text = label
        ? `<text x="${x}" y="${y + 4}" text-anchor="middle" font-size="11">${esc(label)}</text>`
        : '';
      return `<circle cx="${x}" cy="${y}" r="12" fill="${color}" stroke="black"/>${text}`;
    }
  }
};

export function renderSvg(
  diagram: unknown,
  opts: LayoutOptions = DEFAULT_LAYOUT,
  highlightNodes: number[] = [],
): string {
  const { width, height } = opts;
  const open = `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`;
  if (!isDiagram(diagram)) {
    return `${open}<text x="${width / 2}" y="${height / 2}" text-anchor="middle">invalid diagram</text></svg>`;
  }
  const pos = layoutDiagram(diagram, opts);
  const parts: string[] = [open];
  for (const e of diagram.edges) {
    const a = pos.get(e.src);
    const b = pos.get(e.tgt);
    if (!a || !b) continue;
    parts.push(
      `<line x1="${a.x}" y1="${a.y}" x2="${b.x}" y2="${b.y}" stroke="#333" stroke-width="1.5"/>`,
    );
  }
  const highlighted = new Set(highlightNodes);
  for (const n of diagram.nodes) {
    const p = pos.get(n.id);
    if (!p) continue;
    if (highlighted.has(n.id)) {
      parts.push(`<circle cx="${p.x}" cy="${p.y}" r="18" fill="none" stroke="#2b6cb0" stroke-width="3"/>`);
    }
    parts.push(nodeShape(n, p.x, p.y));
  }
  diagram.inputs.forEach((id, i) => {
    const p = pos.get(id);
    if (p) parts.push(`<text x="${p.x - 24}" y="${p.y + 4}" font-size="10">in ${i}</text>`);
  });
  diagram.outputs.forEach((id, i) => {
    const p = pos.get(id);
    if (p) parts.push(`<text x="${p.x + 10}" y="${p.y + 4}" font-size="10">out ${i}</text>`);
  });
  parts.push('</svg>');
  return parts.join('');
}
