import { afterEach, describe, expect, it, vi } from 'vitest';

import { ApiError, SolverClient, createRequestGate } from '../src/api.js';
import fixtures from './fixtures/backend.json';

function mockFetch(status: number, body: unknown): ReturnType<typeof vi.fn> {
  const mock = vi.fn(async () => ({
    ok: status >= 200 && status < 300,
    status,
    text: async () => JSON.stringify(body),
    json: async () => body,
  }));
  vi.stubGlobal('fetch', mock);
  return mock;
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe('SolverClient', () => {
  it('posts the solve request and returns the plan document', async () => {
    const mock = mockFetch(200, fixtures.solveResponse);
    const client = new SolverClient('http://solver');
    const plan = await client.solve(fixtures.solveRequest as never);
    expect(plan).toEqual(fixtures.solveResponse);
    expect(mock).toHaveBeenCalledOnce();
    const [url, options] = mock.mock.calls[0] as unknown as [string, RequestInit];
    expect(url).toBe('http://solver/api/solve');
    expect(options.method).toBe('POST');
    expect(JSON.parse(options.body as string)).toEqual(fixtures.solveRequest);
  });

  it('wraps validate relationships in the expected body', async () => {
    const mock = mockFetch(200, fixtures.validateResponse);
    const client = new SolverClient();
    const response = await client.validate(
      (fixtures.validateRequest as { relationships: never[] }).relationships,
    );
    expect(response.warnings).toHaveLength(1);
    const [, options] = mock.mock.calls[0] as unknown as [string, RequestInit];
    expect(JSON.parse(options.body as string)).toEqual(fixtures.validateRequest);
  });

  it('raises ApiError with the backend detail on failure', async () => {
    mockFetch(422, { detail: 'capacities sum to 2 but 6 guests need seats' });
    const client = new SolverClient();
    await expect(client.solve(fixtures.solveRequest as never)).rejects.toThrowError(
      ApiError,
    );
    await expect(client.solve(fixtures.solveRequest as never)).rejects.toMatchObject({
      status: 422,
      message: 'capacities sum to 2 but 6 guests need seats',
    });
  });

  it('maps network failures to status 0', async () => {
    vi.stubGlobal(
      'fetch',
      vi.fn(async () => {
        throw new Error('connection refused');
      }),
    );
    const client = new SolverClient();
    await expect(client.health()).rejects.toThrow();
    await expect(client.solve(fixtures.solveRequest as never)).rejects.toMatchObject({
      status: 0,
    });
  });
});

describe('createRequestGate', () => {
  it('marks superseded requests stale', () => {
    const gate = createRequestGate();
    const first = gate.begin();
    const second = gate.begin();
    expect(gate.isCurrent(first)).toBe(false);
    expect(gate.isCurrent(second)).toBe(true);
  });
});
