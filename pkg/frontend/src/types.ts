// JSON payload shapes of the rewriting service. The frontend never
// constructs or mutates diagrams itself; every shape here mirrors what
// the server emits.

export interface PhaseJson {
  num: number;
  den: number;
}

export type LabelKind = 'open' | 'green' | 'red' | 'h' | 'diamond';

export interface DiagramNode {
  id: number;
  label: LabelKind;
  phase?: PhaseJson;
}

export interface DiagramEdge {
  src: number;
  tgt: number;
}

export interface DiagramJson {
  nodes: DiagramNode[];
  edges: DiagramEdge[];
  inputs: number[];
  outputs: number[];
}

export interface StoredDiagram {
  id: string;
  diagram: DiagramJson;
}

export interface RuleJson {
  name: string;
  [key: string]: unknown;
}

export interface RuleSetJson {
  concrete: RuleJson[];
  families: string[];
}

export type Direction = 'forward' | 'reversed';

export interface MatchJson {
  rule: string;
  direction: Direction;
  nodeMap?: Record<string, number>;
  expandNode?: number;
}

export interface RewriteResponse {
  resultId: string;
  result: DiagramJson;
  witness: unknown;
}

export interface BudgetJson {
  maxSteps?: number;
  maxStates?: number;
  maxNodes?: number;
}

export interface StepJson {
  rule: string;
  direction: string;
  nodeMap?: Record<string, number>;
}

export interface DerivationJson {
  found: boolean;
  steps: StepJson[];
  [key: string]: unknown;
}

export interface MatrixJson {
  rows: number;
  cols: number;
  entries: [number, number][];
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}
