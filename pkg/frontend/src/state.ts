// Form and result-view state containers. Pure data + computations so the
// ranking diff and dirty tracking are testable without a DOM.

import { validateSpec } from "./limits";
import type { FieldError, RecommendationSet, SpecDoc } from "./types";

export class SpecFormState {
  spec: SpecDoc;
  dirty = new Set<string>();
  serverErrors: FieldError[] = [];

  constructor(spec: SpecDoc) {
    this.spec = spec;
  }

  touch(field: string): void {
    this.dirty.add(field);
  }

  clearDirty(): void {
    this.dirty.clear();
  }

  isDirty(): boolean {
    return this.dirty.size > 0;
  }

  clientErrors(): FieldError[] {
    return validateSpec(this.spec);
  }

  /** All messages to show: client-side limits first, then verbatim server errors. */
  allErrors(): FieldError[] {
    return [...this.clientErrors(), ...this.serverErrors];
  }

  canSubmit(): boolean {
    return this.clientErrors().length === 0;
  }
}

export interface RankChange {
  pattern: string;
  from: number | null; // null = newly ranked
  to: number | null; // null = dropped out
}

/** Rank movements between two runs; unchanged patterns are omitted. */
export function rankChanges(
  previous: RecommendationSet | null,
  next: RecommendationSet,
): RankChange[] {
  if (!previous) return [];
  const before = new Map(previous.recommendations.map((r) => [r.pattern_name, r.rank]));
  const after = new Map(next.recommendations.map((r) => [r.pattern_name, r.rank]));
  const changes: RankChange[] = [];
  for (const [pattern, to] of after) {
    const from = before.get(pattern) ?? null;
    if (from !== to) changes.push({ pattern, from, to });
  }
  for (const [pattern, from] of before) {
    if (!after.has(pattern)) changes.push({ pattern, from, to: null });
  }
  changes.sort((a, b) => (a.to ?? 99) - (b.to ?? 99));
  return changes;
}

export class ResultViewState {
  projectId: string | null = null;
  last: RecommendationSet | null = null;
  comparison: RecommendationSet | null = null;
  private comparisonProject: string | null = null;

  /** Store a fresh run; the previous one becomes the comparison slot, but
   * only when it belongs to the same project. */
  record(projectId: string, result: RecommendationSet): void {
    if (this.last && this.projectId === projectId) {
      this.comparison = this.last;
      this.comparisonProject = this.projectId;
    } else {
      this.comparison = null;
      this.comparisonProject = null;
    }
    this.projectId = projectId;
    this.last = result;
  }

  changes(): RankChange[] {
    if (!this.last || !this.comparison || this.comparisonProject !== this.projectId) {
      return [];
    }
    return rankChanges(this.comparison, this.last);
  }
}
