/**
 * Results-table rows and CSV export.
 *
 * The CSV uses the engine's canonical import schema (decimal degrees,
 * H:MM-H:MM hours, bare-hertz min/max columns), so a downloaded file
 * re-imports as-is.
 */

import { TransmitterJson } from './types.js';

export const TABLE_COLUMNS = ['name', 'location', 'hours', 'frequency range'] as const;

const CSV_HEADER = [
  'name',
  'latitude',
  'longitude',
  'hours',
  'centre_frequency',
  'bandwidth',
  'min_frequency',
  'max_frequency',
];

function formatMinutes(total: number): string {
  const h = Math.floor(total / 60);
  const m = total % 60;
  return `${h}:${String(m).padStart(2, '0')}`;
}

function formatHours(fromMin: number, toMin: number): string {
  return `${formatMinutes(fromMin)}-${formatMinutes(toMin)}`;
}

/** Display cells for the results table, one row per match. */
export function tableRows(matches: TransmitterJson[]): string[][] {
  return matches.map((t) => [
    t.name,
    t.location ? `${t.location.lat}, ${t.location.lon}` : '—',
    formatHours(t.hours.from_min, t.hours.to_min),
    `${t.band.low_hz}..${t.band.high_hz} Hz`,
  ]);
}

function csvCell(value: string): string {
  if (/[",\r\n]/.test(value)) {
    return `"${value.replace(/"/g, '""')}"`;
  }
  return value;
}

/** Canonical CSV of exactly the displayed rows (header always present). */
export function toCsv(matches: TransmitterJson[]): string {
  const lines = [CSV_HEADER.join(',')];
  for (const t of matches) {
    lines.push(
      [
        csvCell(t.name),
        t.location ? String(t.location.lat) : '',
        t.location ? String(t.location.lon) : '',
        formatHours(t.hours.from_min, t.hours.to_min),
        '',
        '',
        String(t.band.low_hz),
        String(t.band.high_hz),
      ].join(','),
    );
  }
  return lines.join('\r\n') + '\r\n';
}
