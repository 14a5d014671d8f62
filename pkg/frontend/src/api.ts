// Thin typed client over the rewriting service's HTTP/JSON API.
// The fetch implementation is injectable so tests can stub transport.

import {
  ApiError,
  BudgetJson,
  DerivationJson,
  DiagramJson,
  Direction,
  MatchJson,
  MatrixJson,
  RewriteResponse,
  RuleSetJson,
  StoredDiagram,
} from './types.js';

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ status: number; json(): Promise<unknown> }>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch as unknown as FetchLike,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const resp = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers: body === undefined ? undefined : { 'Content-Type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = (await resp.json()) as Record<string, unknown>;
    if (resp.status >= 400) {
      throw new ApiError(resp.status, String(payload['detail'] ?? 'request failed'));
    }
    return payload as T;
  }

  parseTerm(term: string): Promise<StoredDiagram> {
    return this.request('POST', '/diagrams', { term });
  }

  storeDiagram(diagram: DiagramJson): Promise<StoredDiagram> {
    return this.request('POST', '/diagrams', diagram);
  }

  getDiagram(id: string): Promise<DiagramJson> {
    return this.request('GET', `/diagrams/${id}`);
  }

  compose(leftId: string, rightId: string): Promise<StoredDiagram> {
    return this.request('POST', '/compose', { leftId, rightId });
  }

  tensor(leftId: string, rightId: string): Promise<StoredDiagram> {
    return this.request('POST', '/tensor', { leftId, rightId });
  }

  rules(): Promise<RuleSetJson> {
    return this.request('GET', '/rules');
  }

  async matches(
    diagramId: string,
    rule: string,
    direction: Direction = 'forward',
  ): Promise<MatchJson[]> {
    const body = await this.request<{ matches: MatchJson[] }>('POST', '/matches', {
      diagramId,
      rule,
      direction,
    });
    return body.matches;
  }

  rewrite(
    diagramId: string,
    rule: string,
    matchIndex: number,
    direction: Direction = 'forward',
  ): Promise<RewriteResponse> {
    return this.request('POST', '/rewrite', { diagramId, rule, matchIndex, direction });
  }

  prove(lhsId: string, rhsId: string, budget?: BudgetJson): Promise<DerivationJson> {
    return this.request('POST', '/prove', { lhsId, rhsId, budget });
  }

  evalDiagram(diagramId: string): Promise<MatrixJson> {
    return this.request('POST', '/eval', { diagramId });
  }
}
