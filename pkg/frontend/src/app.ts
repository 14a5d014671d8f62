// Browser entry point: wires the proof session to a minimal DOM shell.
// Served as static files next to the rewriting service (CORS is open on
// the server side, so any origin works during development).

import { ApiClient } from './api.js';
import { ProofSession } from './session.js';
import { renderSvg } from './render.js';
import { ApiError, Direction, MatchJson } from './types.js';

interface Elements {
  lhs: HTMLInputElement;
  rhs: HTMLInputElement;
  rule: HTMLSelectElement;
  direction: HTMLSelectElement;
  start: HTMLButtonElement;
  auto: HTMLButtonElement;
  undo: HTMLButtonElement;
  canvas: HTMLElement;
  matches: HTMLElement;
  timeline: HTMLElement;
  status: HTMLElement;
}

const grab = (): Elements => {
  const byId = <T extends HTMLElement>(id: string) => document.getElementById(id) as T;
  return {
    lhs: byId('lhs'),
    rhs: byId('rhs'),
    rule: byId('rule'),
    direction: byId('direction'),
    start: byId('start'),
    auto: byId('auto'),
    undo: byId('undo'),
    canvas: byId('canvas'),
    matches: byId('matches'),
    timeline: byId('timeline'),
    status: byId('status'),
  };
};

export function mountApp(baseUrl: string): void {
  const el = grab();
  const client = new ApiClient(baseUrl);
  let session: ProofSession | null = null;

  const toast = (msg: string) => {
    el.status.textContent = msg;
  };

  const matchedNodes = (m: MatchJson): number[] =>
    m.expandNode !== undefined
      ? [m.expandNode]
      : Object.values(m.nodeMap ?? {});

  const redraw = async () => {
    if (!session) return;
    el.canvas.innerHTML = renderSvg(session.currentDiagram);
    el.timeline.innerHTML = session.timeline
      .map((s, i) => `<li>${i + 1}. ${s.rule} (${s.direction}) @ ${s.matchIndex}</li>`)
      .join('');
    if (await session.isSolved()) toast('solved: current diagram matches the goal');
  };

  const refreshMatches = async () => {
    if (!session) return;
    const direction = el.direction.value as Direction;
    try {
      const found = await session.listMatches(el.rule.value, direction);
      el.matches.innerHTML = '';
      found.forEach((m, i) => {
        const btn = document.createElement('button');
        btn.textContent = `match ${i}`;
        btn.onmouseenter = () => {
          el.canvas.innerHTML = renderSvg(session!.currentDiagram, undefined, matchedNodes(m));
        };
        btn.onclick = async () => {
          try {
            await session!.applyMatch(el.rule.value, i, direction);
            await redraw();
            await refreshMatches();
          } catch (err) {
            if (err instanceof ApiError && err.status === 422) {
              toast('match went stale, refreshing');
              await refreshMatches();
            } else {
              toast(String(err));
            }
          }
        };
        el.matches.appendChild(btn);
      });
    } catch (err) {
      toast(String(err));
    }
  };

  el.start.onclick = async () => {
    try {
      session = await ProofSession.start(client, el.lhs.value, el.rhs.value);
      const ruleSet = await client.rules();
      el.rule.innerHTML = ruleSet.concrete
        .map((r) => `<option>${r.name}</option>`)
        .join('');
      toast('session started');
      await redraw();
      await refreshMatches();
    } catch (err) {
      toast(String(err));
    }
  };

  el.auto.onclick = async () => {
    if (!session) return;
    try {
      const derivation = await session.auto({ maxSteps: 8, maxStates: 10000, maxNodes: 64 });
      toast(`auto: found a ${derivation.steps.length}-step derivation`);
    } catch (err) {
      if (err instanceof ApiError && err.status === 504) toast('auto: budget exhausted');
      else toast(String(err));
    }
  };

  el.undo.onclick = async () => {
    if (!session) return;
    await session.undo();
    await redraw();
    await refreshMatches();
  };
}
