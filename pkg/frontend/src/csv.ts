/** CSV loading and typed row access for the simulator's output files. */

import Papa from "papaparse";

export type Row = Record<string, number>;

/**
 * Parse a simulator CSV into numeric rows.
 *
 * Every cell is numeric by construction (booleans are written as 0/1),
 * so the whole table converts to numbers up front. Throws on an empty
 * table or if any required column is missing from the header.
 */
export function parseCsv(text: string, requiredColumns: string[]): Row[] {
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    throw new Error(`CSV parse error: ${parsed.errors[0].message}`);
  }
  const fields = parsed.meta.fields ?? [];
  for (const col of requiredColumns) {
    if (!fields.includes(col)) {
      throw new Error(`CSV is missing required column '${col}'`);
    }
  }
  if (parsed.data.length === 0) {
    throw new Error("CSV contains no data rows");
  }
  return parsed.data.map((raw, i) => {
    const row: Row = {};
    for (const field of fields) {
      const value = Number(raw[field]);
      if (!Number.isFinite(value)) {
        throw new Error(`row ${i + 1}: non-numeric value '${raw[field]}' in '${field}'`);
      }
      row[field] = value;
    }
    return row;
  });
}

/** Group rows by the (numeric) value of one column, keys sorted ascending. */
export function groupBy(rows: Row[], column: string): Map<number, Row[]> {
  const groups = new Map<number, Row[]>();
  for (const row of rows) {
    const key = row[column];
    const bucket = groups.get(key);
    if (bucket) bucket.push(row);
    else groups.set(key, [row]);
  }
  return new Map([...groups.entries()].sort((a, b) => a[0] - b[0]));
}
