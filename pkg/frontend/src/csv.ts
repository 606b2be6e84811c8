import type { Guest } from './types.js';

export class CsvError extends Error {}

/** Parse a guest roster; the header must be exactly `id,name`. */
export function parseGuestCsv(text: string): Guest[] {
  const lines = text.split(/\r?\n/);
  if (!lines.length || lines.every((line) => !line.trim())) {
    throw new CsvError('the file is empty');
  }
  const header = splitRow(lines[0]);
  if (header.length !== 2 || header[0] !== 'id' || header[1] !== 'name') {
    throw new CsvError(`line 1: expected header "id,name", got "${lines[0].trim()}"`);
  }
  const guests: Guest[] = [];
  const seen = new Set<string>();
  for (let index = 1; index < lines.length; index += 1) {
    const raw = lines[index];
    if (!raw.trim()) continue;
    const cells = splitRow(raw);
    if (cells.length !== 2) {
      throw new CsvError(`line ${index + 1}: expected 2 fields, got ${cells.length}`);
    }
    const [id, name] = cells;
    if (!id) {
      throw new CsvError(`line ${index + 1}: empty guest id`);
    }
    if (seen.has(id)) {
      throw new CsvError(`line ${index + 1}: duplicate guest id "${id}"`);
    }
    seen.add(id);
    guests.push({ id, name });
  }
  if (!guests.length) {
    throw new CsvError('no guests listed');
  }
  return guests;
}

function splitRow(row: string): string[] {
  return row.split(',').map((cell) => cell.trim());
}
