import { describe, expect, it } from 'vitest';

import { DEFAULT_LAYOUT, layoutDiagram, phaseLabel } from '../src/layout.js';
import { renderSvg } from '../src/render.js';
import { DiagramJson } from '../src/types.js';

const identity1: DiagramJson = {
  nodes: [{ id: 0, label: 'open' }],
  edges: [],
  inputs: [0],
  outputs: [0],
};

// one input, one output, three interior generators on a path
const smallPath: DiagramJson = {
  nodes: [
    { id: 0, label: 'open' },
    { id: 1, label: 'green', phase: { num: 1, den: 2 } },
    { id: 2, label: 'h' },
    { id: 3, label: 'red', phase: { num: 0, den: 1 } },
    { id: 4, label: 'open' },
  ],
  edges: [
    { src: 0, tgt: 1 },
    { src: 1, tgt: 2 },
    { src: 2, tgt: 3 },
    { src: 3, tgt: 4 },
  ],
  inputs: [0],
  outputs: [4],
};

const bigDiagram = (): DiagramJson => {
  const nodes: DiagramJson['nodes'] = [];
  const edges: DiagramJson['edges'] = [];
  for (let i = 0; i < 50; i += 1) {
    nodes.push(
      i === 0 || i === 49
        ? { id: i, label: 'open' }
        : { id: i, label: 'green', phase: { num: 0, den: 1 } },
    );
    if (i > 0) edges.push({ src: i - 1, tgt: i });
  }
  return { nodes, edges, inputs: [0], outputs: [49] };
};

describe('layoutDiagram', () => {
  it('places a shared boundary node once, pinned to a column', () => {
    const pos = layoutDiagram(identity1);
    expect(pos.size).toBe(1);
    const p = pos.get(0)!;
    expect([DEFAULT_LAYOUT.margin, DEFAULT_LAYOUT.width - DEFAULT_LAYOUT.margin]).toContain(p.x);
  });

  it('pins inputs left and outputs right on a worked example', () => {
    const pos = layoutDiagram(smallPath);
    expect(pos.get(0)!.x).toBe(DEFAULT_LAYOUT.margin);
    expect(pos.get(4)!.x).toBe(DEFAULT_LAYOUT.width - DEFAULT_LAYOUT.margin);
    for (const id of [1, 2, 3]) {
      const p = pos.get(id)!;
      expect(p.x).toBeGreaterThan(DEFAULT_LAYOUT.margin);
      expect(p.x).toBeLessThan(DEFAULT_LAYOUT.width - DEFAULT_LAYOUT.margin);
    }
  });

  it('keeps boundary columns separated on a 50-node diagram', () => {
    const d = bigDiagram();
    const pos = layoutDiagram(d);
    expect(pos.size).toBe(50);
    const inX = pos.get(0)!.x;
    const outX = pos.get(49)!.x;
    expect(outX - inX).toBe(DEFAULT_LAYOUT.width - 2 * DEFAULT_LAYOUT.margin);
    for (let i = 1; i < 49; i += 1) {
      const p = pos.get(i)!;
      expect(p.x).toBeGreaterThan(inX);
      expect(p.x).toBeLessThan(outX);
    }
  });

  it('is deterministic across repeated runs', () => {
    const d = bigDiagram();
    expect(layoutDiagram(d)).toEqual(layoutDiagram(d));
  });
});

describe('phaseLabel', () => {
  it('formats rational multiples of pi', () => {
    expect(phaseLabel({ num: 1, den: 2 })).toBe('1/2·π');
    expect(phaseLabel({ num: -1, den: 1 })).toBe('-1·π');
    expect(phaseLabel({ num: 0, den: 1 })).toBe('');
    expect(phaseLabel(undefined)).toBe('');
  });
});

describe('renderSvg', () => {
  it('renders nodes, edges and boundary markers', () => {
    const svg = renderSvg(smallPath);
    expect(svg).toContain('<svg');
    expect((svg.match(/<line /g) ?? []).length).toBe(4);
    expect(svg).toContain('1/2·π');
    expect(svg).toContain('in 0');
    expect(svg).toContain('out 0');
  });

  it('renders a placeholder for malformed payloads', () => {
    expect(renderSvg({ junk: true })).toContain('invalid diagram');
    expect(renderSvg(null)).toContain('invalid diagram');
  });

  it('highlights requested nodes', () => {
    const svg = renderSvg(smallPath, DEFAULT_LAYOUT, [1]);
    expect(svg).toContain('stroke="#2b6cb0"');
  });
});
