// Thin fetch client for the recommendation service. Every UI interaction
// goes through these calls; no business logic lives on this side.

import type {
  FieldError,
  ProjectRecord,
  PatternSummary,
  RecommendationSet,
  SpecDoc,
  TaxonomyDoc,
} from "./types";

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: unknown,
  ) {
    super(`API error ${status}`);
  }

  fieldErrors(): FieldError[] {
    const detail = this.detail as { errors?: FieldError[] } | undefined;
    return detail && Array.isArray(detail.errors) ? detail.errors : [];
  }

  conflictPairs(): [string, string][] {
    const detail = this.detail as { conflicts?: [string, string][] } | undefined;
    return detail && Array.isArray(detail.conflicts) ? detail.conflicts : [];
  }
}

async function parseResponse<T>(resp: Response): Promise<T> {
  const body = resp.status === 204 ? null : await resp.json();
  if (!resp.ok) {
    const detail = body && typeof body === "object" && "detail" in body ? body.detail : body;
    throw new ApiError(resp.status, detail);
  }
  return body as T;
}

export class ApiClient {
  constructor(private base: string = "") {}

  private url(path: string): string {
    return `${this.base}${path}`;
  }

  async getTaxonomy(): Promise<TaxonomyDoc> {
    return parseResponse(await fetch(this.url("/api/taxonomy")));
  }

  async getPatterns(): Promise<PatternSummary[]> {
    return parseResponse(await fetch(this.url("/api/patterns")));
  }

  async nfrCheck(names: string[]): Promise<[string, string][]> {
    const resp = await fetch(this.url("/api/nfr-check"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ nfrs: names }),
    });
    const body = await parseResponse<{ conflicts: [string, string][] }>(resp);
    return body.conflicts;
  }

  async createProject(spec: SpecDoc): Promise<ProjectRecord> {
    const resp = await fetch(this.url("/api/projects"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(spec),
    });
    return parseResponse(resp);
  }

  async getProject(id: string): Promise<ProjectRecord> {
    return parseResponse(await fetch(this.url(`/api/projects/${id}`)));
  }

  async updateSpec(id: string, spec: SpecDoc): Promise<ProjectRecord> {
    const resp = await fetch(this.url(`/api/projects/${id}/spec`), {
      method: "PUT",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(spec),
    });
    return parseResponse(resp);
  }

  async recommend(
    id: string,
    priorities?: Record<string, number>,
  ): Promise<RecommendationSet> {
    const resp = await fetch(this.url(`/api/projects/${id}/recommend`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(priorities ? { priorities } : {}),
    });
    return parseResponse(resp);
  }
}
