// DOM wiring for the seating planner. All behavior lives in the logic
// modules; this file only renders state and translates browser events.

import { SolverClient, ApiError } from './api.js';
import { AppState } from './state.js';
import { seatColor } from './seating.js';
import type { Category, TableSpecEntry } from './types.js';
import { CATEGORIES } from './types.js';

const BUCKET_LABELS: Record<Category, string> = {
  keep_together: 'Keep together',
  better_together: 'Better together',
  better_apart: 'Better apart',
  keep_apart: 'Keep apart',
};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function readTables(): TableSpecEntry[] {
  const text = el<HTMLTextAreaElement>('tables-input').value;
  const tables: TableSpecEntry[] = [];
  for (const line of text.split('\n')) {
    const trimmed = line.trim();
    if (!trimmed) continue;
    const [id, capacity] = trimmed.split(/[,:]\s*/);
    const seats = Number(capacity);
    if (!id || !Number.isInteger(seats) || seats < 1) {
      throw new Error(`bad table line: "${trimmed}" (expected "name, seats")`);
    }
    tables.push({ table_id: id, capacity: seats });
  }
  if (!tables.length) throw new Error('define at least one table');
  return tables;
}

function showError(message: string | null): void {
  const banner = el<HTMLDivElement>('error-banner');
  banner.textContent = message ?? '';
  banner.hidden = !message;
}

export function startApp(): void {
  const client = new SolverClient(
    (window as { SEATPLAN_API_URL?: string }).SEATPLAN_API_URL ?? '',
  );
  const state = new AppState(client);
  let focusGuest: string | null = null;

  const guestList = el<HTMLUListElement>('guest-list');
  const bucketRow = el<HTMLDivElement>('buckets');
  const warningsBox = el<HTMLDivElement>('warnings');
  const tablesBox = el<HTMLDivElement>('seating');
  const metricsBox = el<HTMLDivElement>('metrics');
  const perspectiveSelect = el<HTMLSelectElement>('perspective');

  function renderGuests(): void {
    guestList.replaceChildren();
    perspectiveSelect.replaceChildren();
    for (const guest of state.guests) {
      const item = document.createElement('li');
      item.textContent = `${guest.name || guest.id} (${guest.id})`;
      item.draggable = true;
      item.dataset.guest = guest.id;
      item.classList.toggle('focus', guest.id === focusGuest);
      item.addEventListener('dragstart', (event) => {
        event.dataTransfer?.setData('text/plain', guest.id);
      });
      item.addEventListener('click', () => {
        focusGuest = guest.id;
        renderGuests();
        renderBuckets();
      });
      guestList.append(item);

      const option = document.createElement('option');
      option.value = guest.id;
      option.textContent = guest.name || guest.id;
      perspectiveSelect.append(option);
    }
    if (state.perspective) perspectiveSelect.value = state.perspective;
  }

  function renderBuckets(): void {
    bucketRow.replaceChildren();
    if (!focusGuest) return;
    const heading = document.createElement('h3');
    heading.textContent = `Relationships of ${focusGuest} (drag guests into a bucket)`;
    bucketRow.append(heading);
    const buckets = state.relationships.bucketsFor(focusGuest);
    for (const category of CATEGORIES) {
      const zone = document.createElement('div');
      zone.className = `bucket ${category}`;
      const title = document.createElement('h4');
      title.textContent = BUCKET_LABELS[category];
      zone.append(title);
      for (const other of buckets[category]) {
        const chip = document.createElement('span');
        chip.className = 'chip';
        chip.textContent = other;
        chip.title = 'click to remove';
        chip.addEventListener('click', () => {
          void state.removeRelationship(focusGuest as string, other).then(() => {
            renderBuckets();
            renderWarnings();
          });
        });
        zone.append(chip);
      }
      zone.addEventListener('dragover', (event) => event.preventDefault());
      zone.addEventListener('drop', (event) => {
        event.preventDefault();
        const dropped = event.dataTransfer?.getData('text/plain');
        if (!dropped || !focusGuest || dropped === focusGuest) return;
        void state
          .setRelationship(focusGuest, dropped, category)
          .then(() => {
            renderBuckets();
            renderWarnings();
          })
          .catch((error: unknown) => showError(String(error)));
      });
      bucketRow.append(zone);
    }
  }

  function renderWarnings(): void {
    warningsBox.replaceChildren();
    warningsBox.hidden = !state.contradictions.length;
    for (const warning of state.contradictions) {
      const row = document.createElement('div');
      row.className = 'warning';
      row.textContent = warning.description;
      warningsBox.append(row);
    }
  }

  function renderSeating(): void {
    tablesBox.replaceChildren();
    const view = state.seatingView();
    if (!view) return;
    const perspective = perspectiveSelect.value || state.perspective || '';
    for (const table of view.tables) {
      const card = document.createElement('div');
      card.className = 'table-card';
      const title = document.createElement('h4');
      title.textContent = `${table.table_id} (${table.members.length}/${table.capacity})`;
      card.append(title);
      for (const member of table.members) {
        const seat = document.createElement('span');
        seat.className = `seat ${seatColor(perspective, member, state.relationships)}`;
        seat.textContent = member;
        seat.draggable = true;
        seat.addEventListener('dragstart', (event) => {
          event.dataTransfer?.setData('text/plain', member);
        });
        card.append(seat);
      }
      card.addEventListener('dragover', (event) => event.preventDefault());
      card.addEventListener('drop', (event) => {
        event.preventDefault();
        const person = event.dataTransfer?.getData('text/plain');
        if (!person) return;
        void state.move(person, table.table_id).then((moved) => {
          showError(moved ? null : state.lastError);
          renderSeating();
          renderMetrics();
        });
      });
      tablesBox.append(card);
    }
  }

  function renderMetrics(): void {
    metricsBox.replaceChildren();
    if (!state.metrics) return;
    const table = document.createElement('table');
    table.innerHTML =
      '<tr><th>table</th><th>seated</th><th>volume</th><th>components</th></tr>';
    for (const row of state.metrics.per_table) {
      const tr = document.createElement('tr');
      tr.innerHTML = `<td>${row.table_id}</td><td>${row.seated}</td><td>${row.volume}</td><td>${row.components}</td>`;
      table.append(tr);
    }
    metricsBox.append(table);
    const objective = document.createElement('p');
    objective.textContent =
      state.metrics.objective === null
        ? 'objective: skipped (degenerate)'
        : `objective: ${state.metrics.objective.toFixed(6)}`;
    metricsBox.append(objective);
  }

  el<HTMLInputElement>('guest-file').addEventListener('change', (event) => {
    const input = event.target as HTMLInputElement;
    const file = input.files?.[0];
    if (!file) return;
    void file.text().then((text) => {
      try {
        state.importGuests(text);
        focusGuest = state.guests[0]?.id ?? null;
        showError(null);
      } catch (error) {
        showError(String(error));
        return;
      }
      renderGuests();
      renderBuckets();
      renderWarnings();
      renderSeating();
    });
  });

  el<HTMLButtonElement>('solve-button').addEventListener('click', () => {
    try {
      state.setTables(readTables());
    } catch (error) {
      showError(String(error));
      return;
    }
    state.seed = Number(el<HTMLInputElement>('seed-input').value) || 0;
    void state
      .solve()
      .then(() => {
        showError(null);
        renderSeating();
        renderMetrics();
      })
      .catch((error: unknown) => {
        showError(error instanceof ApiError ? error.message : String(error));
      });
  });

  perspectiveSelect.addEventListener('change', () => {
    state.perspective = perspectiveSelect.value;
    renderSeating();
  });
}

if (typeof document !== 'undefined' && document.getElementById('guest-list')) {
  startApp();
}
