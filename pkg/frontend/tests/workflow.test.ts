// The full UI workflow against recorded responses of the real solver
// service (tests/fixtures/backend.json is captured from the backend, not
// hand-written): import guests, flag a contradiction, solve and check
// co-seating, and block a move to a full table.

import { describe, expect, it, vi } from 'vitest';

import { SolverClient } from '../src/api.js';
import { AppState } from '../src/state.js';
import type {
  MetricsResponseBody,
  PlanDocument,
  RelationshipEntry,
  ValidateResponseBody,
} from '../src/types.js';
import fixtures from './fixtures/backend.json';

const SIX_GUEST_CSV = [
  'id,name',
  'ann,Ann Park',
  'ben,Ben Ruiz',
  'cho,Cho Lee',
  'dev,Dev Patel',
  'eli,Eli Moss',
  'fay,Fay Chen',
  '',
].join('\n');

const CONTRADICTION_TRIPLE = (fixtures.validateRequest as {
  relationships: RelationshipEntry[];
}).relationships;

function sameRelationships(a: RelationshipEntry[], b: RelationshipEntry[]): boolean {
  const canonical = (entries: RelationshipEntry[]) =>
    entries
      .map((e) => {
        const [x, y] = [e.person_a, e.person_b].sort();
        return `${x}|${y}|${e.category}`;
      })
      .sort()
      .join(';');
  return canonical(a) === canonical(b);
}

function stubClient(): SolverClient {
  const client = new SolverClient('stub://');
  client.validate = vi.fn(async (relationships: RelationshipEntry[]) => {
    if (sameRelationships(relationships, CONTRADICTION_TRIPLE)) {
      return fixtures.validateResponse as ValidateResponseBody;
    }
    return { warnings: [] };
  }) as SolverClient['validate'];
  client.solve = vi.fn(async (request) => {
    const expected = fixtures.solveRequest;
    expect(request.people).toEqual(expected.people);
    expect(sameRelationships(request.relationships, expected.relationships as RelationshipEntry[])).toBe(true);
    expect(request.tables).toEqual(expected.tables);
    expect(request.config?.seed ?? 0).toBe(expected.config.seed);
    expect(request.config?.neutral_weight ?? 0.1).toBeCloseTo(0.1);
    return fixtures.solveResponse as PlanDocument;
  }) as SolverClient['solve'];
  client.metrics = vi.fn(async () => fixtures.metricsResponseAfterSwap as MetricsResponseBody) as SolverClient['metrics'];
  return client;
}

describe('UI workflow', () => {
  it('imports a six-guest CSV', () => {
    const state = new AppState(stubClient());
    const guests = state.importGuests(SIX_GUEST_CSV);
    expect(guests).toHaveLength(6);
    expect(guests.map((g) => g.id)).toEqual(['ann', 'ben', 'cho', 'dev', 'eli', 'fay']);
  });

  it('shows a warning for the contradiction triple', async () => {
    const state = new AppState(stubClient());
    state.importGuests(SIX_GUEST_CSV);
    await state.setRelationship('ann', 'ben', 'keep_together');
    await state.setRelationship('ann', 'cho', 'keep_together');
    expect(state.contradictions).toHaveLength(0);
    await state.setRelationship('ben', 'cho', 'keep_apart');
    expect(state.contradictions).toHaveLength(1);
    expect(new Set(state.contradictions[0].people)).toEqual(new Set(['ann', 'ben', 'cho']));
  });

  it('solving co-seats each keep_together pair', async () => {
    const state = new AppState(stubClient());
    state.importGuests(SIX_GUEST_CSV);
    state.setTables(fixtures.solveRequest.tables);
    await state.setRelationship('ann', 'ben', 'keep_together');
    await state.setRelationship('cho', 'dev', 'keep_together');
    const plan = await state.solve();
    expect(plan).not.toBeNull();
    const assignments = state.assignments!;
    expect(assignments['ann']).toBe(assignments['ben']);
    expect(assignments['cho']).toBe(assignments['dev']);
    const view = state.seatingView()!;
    expect(view.tables.map((t) => t.members.length)).toEqual([3, 3]);
  });

  it('blocks moving a guest to a full table', async () => {
    const state = new AppState(stubClient());
    state.importGuests(SIX_GUEST_CSV);
    state.setTables(fixtures.solveRequest.tables);
    await state.setRelationship('ann', 'ben', 'keep_together');
    await state.setRelationship('cho', 'dev', 'keep_together');
    await state.solve();
    const before = { ...state.assignments! };
    const target = before['ann'] === 'alpha' ? 'beta' : 'alpha'; // other table is full
    const moved = await state.move('ann', target);
    expect(moved).toBe(false);
    expect(state.lastError).toMatch(/full/);
    expect(state.assignments).toEqual(before);
  });

  it('a legal move refreshes metrics from the service', async () => {
    const client = stubClient();
    const state = new AppState(client);
    state.importGuests(SIX_GUEST_CSV);
    state.setTables([
      { table_id: 'alpha', capacity: 4 },
      { table_id: 'beta', capacity: 4 },
    ]);
    await state.setRelationship('ann', 'ben', 'keep_together');
    await state.setRelationship('cho', 'dev', 'keep_together');
    client.solve = vi.fn(async () => fixtures.solveResponse as PlanDocument) as SolverClient['solve'];
    await state.solve();
    const from = state.assignments!['eli'];
    const target = from === 'alpha' ? 'beta' : 'alpha';
    const moved = await state.move('eli', target);
    expect(moved).toBe(true);
    expect(state.assignments!['eli']).toBe(target);
    const metricsMock = client.metrics as ReturnType<typeof vi.fn>;
    expect(metricsMock).toHaveBeenCalledOnce();
    const sent = metricsMock.mock.calls[0][0] as { assignments: Record<string, string> };
    expect(sent.assignments['eli']).toBe(target);
    expect(state.metrics).toEqual(fixtures.metricsResponseAfterSwap);
  });

  it('discards a solve response superseded by a newer request', async () => {
    const client = stubClient();
    const state = new AppState(client);
    state.importGuests(SIX_GUEST_CSV);
    state.setTables(fixtures.solveRequest.tables);

    let releaseFirst: (plan: PlanDocument) => void = () => {};
    const slow = new Promise<PlanDocument>((resolve) => {
      releaseFirst = resolve;
    });
    const stale: PlanDocument = {
      ...(fixtures.solveResponse as PlanDocument),
      assignments: { stale: 'alpha' },
    };
    client.solve = vi
      .fn()
      .mockReturnValueOnce(slow)
      .mockResolvedValueOnce(fixtures.solveResponse as PlanDocument) as SolverClient['solve'];

    const first = state.solve();
    const second = state.solve();
    releaseFirst(stale);
    const [firstResult, secondResult] = await Promise.all([first, second]);
    expect(firstResult).toBeNull(); // superseded
    expect(secondResult).not.toBeNull();
    expect(state.assignments).toEqual(
      (fixtures.solveResponse as PlanDocument).assignments,
    );
  });
});
