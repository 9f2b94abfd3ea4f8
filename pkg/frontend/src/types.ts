// Wire types for the documented HTTP API.

export interface UseCaseDoc {
  id: string;
  name: string;
  objective: string;
  actors: string;
  pre_conditions: string;
  post_conditions: string;
  constraints: string;
  normal_flow: string;
  importance_score: number | null;
}

export interface NfrDoc {
  name: string;
  priority: number | null;
  free_text: string;
}

export interface SpecDoc {
  short_description: string;
  detailed_description: string;
  use_cases: UseCaseDoc[];
  nfrs: NfrDoc[];
  software_type: string;
}

export interface TaxonomyNode {
  key: string;
  label: string;
  path: string;
  children?: TaxonomyNode[];
}

export interface TaxonomyDoc {
  version: string;
  nodes: TaxonomyNode[];
}

export interface PatternSummary {
  pattern_name: string;
  basic_definition: string;
  source: string;
}

export interface TraceTerm {
  term: string;
  source: string;
  target: string;
  value: number;
  active: boolean;
}

export interface PatternTrace {
  pattern_name: string;
  total: number;
  terms: TraceTerm[];
}

export interface Recommendation {
  rank: number;
  pattern_name: string;
  confidence: number;
  sentiment_label: string;
  sentiment_score: number;
  evidence_count: number;
}

export interface RecommendationSet {
  recommendations: Recommendation[];
  trace: Record<string, PatternTrace>;
  config: Record<string, unknown>;
}

export interface ProjectRecord {
  id: string;
  spec: SpecDoc;
  last_result: RecommendationSet | null;
  created_at: string;
  updated_at: string;
}

export interface FieldError {
  field: string;
  message: string;
}

export function emptyUseCase(id: string): UseCaseDoc {
  return {
    id,
    name: "",
    objective: "",
    actors: "",
    pre_conditions: "",
    post_conditions: "",
    constraints: "",
    normal_flow: "",
    importance_score: 1.0,
  };
}

export function emptySpec(): SpecDoc {
  return {
    short_description: "",
    detailed_description: "",
    use_cases: [emptyUseCase("uc-01")],
    nfrs: [],
    software_type: "",
  };
}
