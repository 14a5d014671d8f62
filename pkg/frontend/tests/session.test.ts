// Session model tested against a scripted stub of the documented HTTP
// contract: a three-node wire chain contracts to the identity in two
// rewrite clicks. The stub returns content-hash-style ids so the replay
// and undo invariants are exercised without a live server.

import { describe, expect, it } from 'vitest';

import { ApiClient, FetchLike } from '../src/api.js';
import { ProofSession } from '../src/session.js';
import { ApiError, DiagramJson } from '../src/types.js';

const openChain = (n: number): DiagramJson => ({
  nodes: Array.from({ length: n }, (_, i) => ({ id: i, label: 'open' as const })),
  edges: Array.from({ length: n - 1 }, (_, i) => ({ src: i, tgt: i + 1 })),
  inputs: [0],
  outputs: [n - 1],
});

const DIAGRAMS: Record<string, DiagramJson> = {
  chain3: openChain(3),
  chain2: openChain(2),
  chain1: openChain(1),
};

const NEXT: Record<string, string> = { chain3: 'chain2', chain2: 'chain1' };

const stubFetch: FetchLike = async (url, init) => {
  const body = init?.body ? JSON.parse(init.body) : {};
  const reply = (status: number, payload: unknown) => ({
    status,
    json: async () => payload,
  });
  const path = url.replace(/^https?:\/\/[^/]+/, '');

  if (path === '/diagrams') {
    if (body.term === '(w ; w)') return reply(200, { id: 'chain3', diagram: DIAGRAMS.chain3 });
    if (body.term === 'id[1]') return reply(200, { id: 'chain1', diagram: DIAGRAMS.chain1 });
    return reply(400, { detail: 'unknown term in stub' });
  }
  if (path.startsWith('/diagrams/')) {
    const id = path.split('/')[2];
    return DIAGRAMS[id] ? reply(200, DIAGRAMS[id]) : reply(404, { detail: 'unknown id' });
  }
  if (path === '/matches') {
    if (body.rule !== 'wire') return reply(400, { detail: 'unknown rule' });
    const count = body.diagramId === 'chain3' ? 2 : body.diagramId === 'chain2' ? 1 : 0;
    return reply(200, {
      matches: Array.from({ length: count }, (_, i) => ({
        rule: 'wire',
        direction: 'forward',
        nodeMap: { 0: i, 1: i + 1 },
      })),
    });
  }
  if (path === '/rewrite') {
    const next = NEXT[body.diagramId];
    const limit = body.diagramId === 'chain3' ? 2 : 1;
    if (!next || body.matchIndex >= limit) return reply(422, { detail: 'match index out of range' });
    return reply(200, { resultId: next, result: DIAGRAMS[next], witness: {} });
  }
  if (path === '/prove') {
    if (body.lhsId === body.rhsId) return reply(200, { found: true, steps: [] });
    if ((body.budget?.maxSteps ?? 16) === 0) return reply(504, { detail: 'budget exhausted' });
    return reply(200, { found: true, steps: [{ rule: 'wire', direction: 'forward' }] });
  }
  return reply(404, { detail: `no stub for ${path}` });
};

const client = new ApiClient('http://stub', stubFetch);

describe('ProofSession against the endpoint contract', () => {
  it('solves the wire chain in two clicks and replays', async () => {
    const session = await ProofSession.start(client, '(w ; w)', 'id[1]');
    expect(session.currentId).toBe('chain3');
    expect(await session.isSolved()).toBe(false);

    expect(await session.listMatches('wire')).toHaveLength(2);
    await session.applyMatch('wire', 0);
    expect(session.currentId).toBe('chain2');
    expect(await session.listMatches('wire')).toHaveLength(1);
    await session.applyMatch('wire', 0);

    expect(session.currentId).toBe('chain1');
    expect(session.timeline).toHaveLength(2);
    expect(await session.isSolved()).toBe(true);
    expect(await session.replay()).toBe(true);
  });

  it('undo restores the previous server state', async () => {
    const session = await ProofSession.start(client, '(w ; w)', 'id[1]');
    await session.applyMatch('wire', 0);
    await session.undo();
    expect(session.currentId).toBe('chain3');
    expect(session.currentDiagram).toEqual(DIAGRAMS.chain3);
    expect(session.timeline).toHaveLength(0);
  });

  it('surfaces stale matches as 422 errors', async () => {
    const session = await ProofSession.start(client, '(w ; w)', 'id[1]');
    await expect(session.applyMatch('wire', 7)).rejects.toThrowError(ApiError);
    await session.applyMatch('wire', 0);
    expect(session.currentId).toBe('chain2');
  });

  it('imports a derivation via auto', async () => {
    const session = await ProofSession.start(client, '(w ; w)', 'id[1]');
    const derivation = await session.auto({ maxSteps: 8 });
    expect(derivation.found).toBe(true);
    expect(session.importedDerivation()).toBe(derivation);
  });
});
