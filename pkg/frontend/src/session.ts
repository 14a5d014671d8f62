// Proof session model: a goal (lhs, rhs), the current diagram id, and a
// timeline of applied rewrite steps. All rewriting happens server-side;
// the session only tracks server-issued content-hash ids, so undo is a
// matter of returning to the previous id (the server witness span of the
// undone step, read backwards, justifies it).

import { ApiClient } from './api.js';
import {
  ApiError,
  BudgetJson,
  DerivationJson,
  DiagramJson,
  Direction,
  MatchJson,
} from './types.js';

export interface TimelineStep {
  rule: string;
  direction: Direction;
  matchIndex: number;
  fromId: string;
  toId: string;
}

const ISO_CHECK_BUDGET: BudgetJson = { maxSteps: 0, maxStates: 4, maxNodes: 4096 };

export class ProofSession {
  readonly timeline: TimelineStep[] = [];
  private imported: DerivationJson | null = null;

  private constructor(
    private readonly client: ApiClient,
    readonly lhsId: string,
    readonly rhsId: string,
    public currentId: string,
    public currentDiagram: DiagramJson,
  ) {}

  static async start(client: ApiClient, lhsTerm: string, rhsTerm: string): Promise<ProofSession> {
    const lhs = await client.parseTerm(lhsTerm);
    const rhs = await client.parseTerm(rhsTerm);
    return new ProofSession(client, lhs.id, rhs.id, lhs.id, lhs.diagram);
  }

  listMatches(rule: string, direction: Direction = 'forward'): Promise<MatchJson[]> {
    return this.client.matches(this.currentId, rule, direction);
  }

  async applyMatch(
    rule: string,
    matchIndex: number,
    direction: Direction = 'forward',
  ): Promise<void> {
    const resp = await this.client.rewrite(this.currentId, rule, matchIndex, direction);
    this.timeline.push({ rule, direction, matchIndex, fromId: this.currentId, toId: resp.resultId });
    this.currentId = resp.resultId;
    this.currentDiagram = resp.result;
  }

  async undo(): Promise<void> {
    const last = this.timeline.pop();
    if (!last) return;
    this.currentId = last.fromId;
    this.currentDiagram = await this.client.getDiagram(last.fromId);
  }

  /** Ask the prover to close the remaining gap and import its derivation. */
  async auto(budget?: BudgetJson): Promise<DerivationJson> {
    const derivation = await this.client.prove(this.currentId, this.rhsId, budget);
    this.imported = derivation;
    return derivation;
  }

  importedDerivation(): DerivationJson | null {
    return this.imported;
  }

  /** Server-checked success: the current diagram is isomorphic to the goal. */
  async isSolved(): Promise<boolean> {
    try {
      const derivation = await this.client.prove(this.currentId, this.rhsId, ISO_CHECK_BUDGET);
      return derivation.found && derivation.steps.length === 0;
    } catch (err) {
      if (err instanceof ApiError && err.status === 504) return false;
      throw err;
    }
  }

  /** Re-run every timeline step against the server and confirm the ids. */
  async replay(): Promise<boolean> {
    for (const step of this.timeline) {
      const resp = await this.client.rewrite(
        step.fromId,
        step.rule,
        step.matchIndex,
        step.direction,
      );
      if (resp.resultId !== step.toId) return false;
    }
    const tail = this.timeline.length
      ? this.timeline[this.timeline.length - 1].toId
      : this.lhsId;
    return tail === this.currentId;
  }
}
