// Shapes of the HTTP API payloads. The UI renders these verbatim and never
// computes scores or similarities itself.

export interface SessionConfig {
  k: number;
  h: number;
  q: number;
  n: number;
  theta: number;
  top_n: number;
}

export interface SubcategoryRef {
  category: string;
  subcategory: string;
}

export interface SessionState {
  basket: string[];
  activation_counts: Record<string, number>;
  active_categories: string[];
  subcategory_scores: Record<string, Record<string, number>>;
  active_subcategories: SubcategoryRef[];
  config: SessionConfig;
}

export interface EventReport {
  items_added: string[];
  items_removed: string[];
  duplicate: boolean;
  activated_categories: string[];
  activated_subcategories: SubcategoryRef[];
  deactivated_categories: string[];
  deactivated_subcategories: SubcategoryRef[];
}

export interface SessionResponse {
  session_id: string;
  state: SessionState;
}

export interface MutationResponse extends SessionResponse {
  report: EventReport;
}

export interface Recommendation {
  dish: string;
  recipe_id: string;
  category: string;
  subcategory: string;
  similarity: number;
  missing_items: string[];
}

export interface RecommendationsResponse {
  session_id: string;
  recommendations: Recommendation[];
}

export interface CorpusSummary {
  categories: {
    name: string;
    subcategories: { name: string; dish_count: number }[];
    identifiers: string[];
  }[];
  vocabulary_size: number;
  vocabulary: string[];
}

export interface ErrorEnvelope {
  error: {
    code: string;
    message: string;
    details: Record<string, unknown>;
  };
}
