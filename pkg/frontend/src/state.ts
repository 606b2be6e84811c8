import { SolverClient, createRequestGate } from './api.js';
import { parseGuestCsv } from './csv.js';
import { RelationshipStore } from './relationships.js';
import { MoveBlocked, buildSeatingView, moveGuest } from './seating.js';
import type { SeatingView } from './seating.js';
import type {
  Category,
  ContradictionWarning,
  Guest,
  MetricsResponseBody,
  PlanDocument,
  TableSpecEntry,
} from './types.js';

export interface AppSnapshot {
  guests: Guest[];
  tables: TableSpecEntry[];
  contradictions: ContradictionWarning[];
  plan: PlanDocument | null;
  assignments: Record<string, string> | null;
  metrics: MetricsResponseBody | null;
  perspective: string | null;
  lastError: string | null;
}

/**
 * Application state: one instance per page. Holds the roster, the
 * relationship buckets, the current plan, and any manual overrides.
 * Every server interaction goes through the injected client, and solve
 * responses that were superseded by a newer request are discarded.
 */
export class AppState {
  guests: Guest[] = [];
  tables: TableSpecEntry[] = [];
  relationships = new RelationshipStore();
  contradictions: ContradictionWarning[] = [];
  plan: PlanDocument | null = null;
  /** Current assignments: the solved plan plus any manual moves. */
  assignments: Record<string, string> | null = null;
  metrics: MetricsResponseBody | null = null;
  perspective: string | null = null;
  lastError: string | null = null;
  seed = 0;
  neutralWeight = 0.1;

  private solveGate = createRequestGate();

  constructor(private client: SolverClient) {}

  importGuests(csvText: string): Guest[] {
    this.guests = parseGuestCsv(csvText);
    this.relationships.clear();
    this.contradictions = [];
    this.plan = null;
    this.assignments = null;
    this.metrics = null;
    this.perspective = this.guests[0]?.id ?? null;
    this.lastError = null;
    return this.guests;
  }

  setTables(tables: TableSpecEntry[]): void {
    this.tables = tables.map((t) => ({ ...t }));
  }

  async setRelationship(focus: string, other: string, category: Category): Promise<void> {
    this.relationships.set(focus, other, category);
    await this.refreshWarnings();
  }

  async removeRelationship(a: string, b: string): Promise<void> {
    this.relationships.remove(a, b);
    await this.refreshWarnings();
  }

  private async refreshWarnings(): Promise<void> {
    const response = await this.client.validate(this.relationships.toEntries());
    this.contradictions = response.warnings;
  }

  async solve(): Promise<PlanDocument | null> {
    const token = this.solveGate.begin();
    const request = {
      people: this.guests,
      relationships: this.relationships.toEntries(),
      tables: this.tables,
      config: { seed: this.seed, neutral_weight: this.neutralWeight },
    };
    const plan = await this.client.solve(request);
    if (!this.solveGate.isCurrent(token)) {
      return null; // superseded by a newer solve
    }
    this.plan = plan;
    this.assignments = { ...plan.assignments };
    this.metrics = {
      per_table: plan.per_table,
      objective: plan.objective,
      warnings: [...plan.warnings],
    };
    this.lastError = null;
    return plan;
  }

  seatingView(): SeatingView | null {
    if (!this.assignments) return null;
    return buildSeatingView(this.tables, this.assignments);
  }

  /** Manual override; blocked client-side when the target table is full. */
  async move(person: string, targetTable: string): Promise<boolean> {
    if (!this.assignments) {
      this.lastError = 'solve first';
      return false;
    }
    let next: Record<string, string>;
    try {
      next = moveGuest(this.tables, this.assignments, person, targetTable);
    } catch (error) {
      if (error instanceof MoveBlocked) {
        this.lastError = error.message;
        return false;
      }
      throw error;
    }
    this.assignments = next;
    this.lastError = null;
    this.metrics = await this.client.metrics({
      people: this.guests,
      relationships: this.relationships.toEntries(),
      tables: this.tables,
      assignments: this.assignments,
      config: { seed: this.seed, neutral_weight: this.neutralWeight },
    });
    return true;
  }

  snapshot(): AppSnapshot {
    return {
      guests: [...this.guests],
      tables: this.tables.map((t) => ({ ...t })),
      contradictions: [...this.contradictions],
      plan: this.plan,
      assignments: this.assignments ? { ...this.assignments } : null,
      metrics: this.metrics,
      perspective: this.perspective,
      lastError: this.lastError,
    };
  }
}
