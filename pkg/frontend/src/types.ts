// Wire formats shared with the solver service.

export type Category =
  | 'keep_together'
  | 'better_together'
  | 'better_apart'
  | 'keep_apart';

export const CATEGORIES: Category[] = [
  'keep_together',
  'better_together',
  'better_apart',
  'keep_apart',
];

export const CATEGORY_WEIGHTS: Record<Category, number> = {
  keep_together: 10,
  better_together: 1,
  better_apart: -1,
  keep_apart: -10,
};

export interface Guest {
  id: string;
  name: string;
}

export interface RelationshipEntry {
  person_a: string;
  person_b: string;
  category: Category;
}

export interface TableSpecEntry {
  table_id: string;
  capacity: number;
}

export interface SolveConfigBody {
  epsilon?: number | null;
  max_iter?: number;
  neutral_weight?: number;
  seed?: number;
  component_threshold?: number;
}

export interface SolveRequestBody {
  people: Guest[];
  relationships: RelationshipEntry[];
  tables: TableSpecEntry[];
  config?: SolveConfigBody;
}

export interface TableReport {
  table_id: string;
  seated: number;
  volume: number;
  components: number;
}

export interface PlanDocument {
  assignments: Record<string, string>;
  per_table: TableReport[];
  objective: number | null;
  warnings: string[];
  seed: number;
  residual_history: number[];
  config: Record<string, unknown>;
}

export interface ContradictionWarning {
  people: string[];
  description: string;
}

export interface ValidateResponseBody {
  warnings: ContradictionWarning[];
}

export interface MetricsRequestBody {
  people: Guest[];
  relationships: RelationshipEntry[];
  tables: TableSpecEntry[];
  assignments: Record<string, string>;
  config?: SolveConfigBody;
}

export interface MetricsResponseBody {
  per_table: TableReport[];
  objective: number | null;
  warnings: string[];
}
