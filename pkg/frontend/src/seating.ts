import type { TableSpecEntry } from './types.js';
import { CATEGORY_WEIGHTS } from './types.js';
import type { RelationshipStore } from './relationships.js';

export type SeatColor =
  | 'strong-positive' // green: keep_together (+10)
  | 'positive' //        blue:  better_together (+1)
  | 'negative' //        yellow: better_apart (-1)
  | 'strong-negative' // red:   keep_apart (-10)
  | 'neutral' //         gray:  unspecified pair
  | 'self';

const COLOR_BY_WEIGHT: Record<number, SeatColor> = {
  10: 'strong-positive',
  1: 'positive',
  [-1]: 'negative',
  [-10]: 'strong-negative',
};

/** Color of `other`'s seat when the plan is viewed as `perspective`. */
export function seatColor(
  perspective: string,
  other: string,
  store: RelationshipStore,
): SeatColor {
  if (perspective === other) return 'self';
  const category = store.categoryOf(perspective, other);
  if (category === undefined) return 'neutral';
  return COLOR_BY_WEIGHT[CATEGORY_WEIGHTS[category]];
}

export interface SeatingView {
  tables: { table_id: string; capacity: number; members: string[] }[];
}

export class MoveBlocked extends Error {}

export function buildSeatingView(
  tables: TableSpecEntry[],
  assignments: Record<string, string>,
): SeatingView {
  const members = new Map<string, string[]>(tables.map((t) => [t.table_id, []]));
  for (const person of Object.keys(assignments).sort()) {
    const list = members.get(assignments[person]);
    if (!list) {
      throw new Error(`assignment refers to unknown table "${assignments[person]}"`);
    }
    list.push(person);
  }
  return {
    tables: tables.map((t) => ({
      table_id: t.table_id,
      capacity: t.capacity,
      members: members.get(t.table_id) ?? [],
    })),
  };
}

export function occupancy(view: SeatingView, tableId: string): number {
  const table = view.tables.find((t) => t.table_id === tableId);
  if (!table) throw new Error(`unknown table "${tableId}"`);
  return table.members.length;
}

export function isFull(view: SeatingView, tableId: string): boolean {
  const table = view.tables.find((t) => t.table_id === tableId);
  if (!table) throw new Error(`unknown table "${tableId}"`);
  return table.members.length >= table.capacity;
}

/**
 * Apply a manual override. Moves into a full table are blocked here, so
 * no client action can ever produce an over-capacity plan.
 */
export function moveGuest(
  tables: TableSpecEntry[],
  assignments: Record<string, string>,
  person: string,
  targetTable: string,
): Record<string, string> {
  if (!(person in assignments)) {
    throw new Error(`unknown guest "${person}"`);
  }
  const spec = tables.find((t) => t.table_id === targetTable);
  if (!spec) {
    throw new Error(`unknown table "${targetTable}"`);
  }
  if (assignments[person] === targetTable) {
    return { ...assignments };
  }
  const view = buildSeatingView(tables, assignments);
  if (isFull(view, targetTable)) {
    throw new MoveBlocked(`table "${targetTable}" is full (${spec.capacity} seats)`);
  }
  return { ...assignments, [person]: targetTable };
}
