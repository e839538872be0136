/**
 * Validation and serialization of the form state into query JSON.
 *
 * The emitted document is exactly what the engine's canonical codec
 * produces for the equivalent query: snake_case keys in schema order, a
 * `connectors` array one shorter than `clauses`, and centre/tolerance
 * frequency rows desugared to a plain band before serialization.
 */

import {
  ClauseFormState,
  MAX_HZ,
  MINUTES_PER_DAY,
} from './types.js';

type PredicateObj =
  | { type: 'name'; value: string }
  | { type: 'within'; lat: number; lon: number; radius_km: number }
  | { type: 'active'; from_min: number; to_min: number }
  | { type: 'band'; low_hz: number; high_hz: number };

interface ClauseObj {
  include: boolean;
  predicate: PredicateObj;
}

export interface QueryDoc {
  clauses: ClauseObj[];
  connectors: ('and' | 'or')[];
}

const isInt = (v: number | null): v is number => v !== null && Number.isInteger(v);
const isNum = (v: number | null): v is number => v !== null && Number.isFinite(v);

/**
 * Human-readable problems with one row; an empty list means the row is
 * complete and locally valid.
 */
export function validateRow(row: ClauseFormState): string[] {
  const problems: string[] = [];
  switch (row.kind) {
    case 'name': {
      if (!row.name.value) problems.push('pick a transmitter name');
      break;
    }
    case 'location': {
      const loc = row.location;
      if (loc.mode === 'address' && (loc.lat === null || loc.lon === null)) {
        problems.push('resolve the address to coordinates');
      }
      if (!isNum(loc.lat) || loc.lat < -90 || loc.lat > 90) {
        problems.push('latitude must be between -90 and 90');
      }
      if (!isNum(loc.lon) || loc.lon < -180 || loc.lon > 180) {
        problems.push('longitude must be between -180 and 180');
      }
      if (!isNum(loc.radiusKm) || loc.radiusKm <= 0) {
        problems.push('radius must be a positive number of km');
      }
      break;
    }
    case 'hours': {
      const { fromMin, toMin } = row.hours;
      if (!isInt(fromMin) || fromMin < 0 || fromMin >= MINUTES_PER_DAY) {
        problems.push('start must be between 00:00 and 23:59');
      }
      if (!isInt(toMin) || toMin < 0 || toMin > MINUTES_PER_DAY) {
        problems.push('end must be between 00:00 and 24:00');
      }
      if (isInt(fromMin) && isInt(toMin) && fromMin === toMin) {
        problems.push('start and end must differ (full day is 00:00 to 24:00)');
      }
      break;
    }
    case 'frequency': {
      const f = row.frequency;
      if (f.mode === 'centre') {
        if (!isInt(f.centreHz) || f.centreHz < 0) {
          problems.push('centre frequency must be a whole number of hertz');
        }
        if (!isInt(f.toleranceHz) || f.toleranceHz < 0) {
          problems.push('tolerance must be a whole number of hertz');
        }
        if (
          isInt(f.centreHz) &&
          isInt(f.toleranceHz) &&
          f.centreHz + f.toleranceHz > MAX_HZ
        ) {
          problems.push('band top exceeds 1 THz');
        }
      } else {
        if (!isInt(f.lowHz) || f.lowHz < 0) {
          problems.push('minimum frequency must be a whole number of hertz');
        }
        if (!isInt(f.highHz) || f.highHz < 0) {
          problems.push('maximum frequency must be a whole number of hertz');
        }
        if (isInt(f.lowHz) && isInt(f.highHz)) {
          if (f.lowHz > f.highHz) problems.push('minimum is above maximum');
          if (f.highHz > MAX_HZ) problems.push('band top exceeds 1 THz');
        }
      }
      break;
    }
  }
  return problems;
}

export function formIsValid(rows: ClauseFormState[]): boolean {
  return rows.length > 0 && rows.every((row) => validateRow(row).length === 0);
}

function predicateOf(row: ClauseFormState): PredicateObj {
  switch (row.kind) {
    case 'name':
      return { type: 'name', value: row.name.value as string };
    case 'location':
      return {
        type: 'within',
        lat: row.location.lat as number,
        lon: row.location.lon as number,
        radius_km: row.location.radiusKm as number,
      };
    case 'hours':
      return {
        type: 'active',
        from_min: row.hours.fromMin as number,
        to_min: row.hours.toMin as number,
      };
    case 'frequency': {
      const f = row.frequency;
      if (f.mode === 'centre') {
        const centre = f.centreHz as number;
        const tolerance = f.toleranceHz as number;
        return {
          type: 'band',
          low_hz: Math.max(0, centre - tolerance),
          high_hz: centre + tolerance,
        };
      }
      return { type: 'band', low_hz: f.lowHz as number, high_hz: f.highHz as number };
    }
  }
}

export function buildQueryDoc(rows: ClauseFormState[]): QueryDoc {
  if (!formIsValid(rows)) {
    throw new Error('query form has incomplete or invalid rows');
  }
  return {
    clauses: rows.map((row) => ({ include: row.include, predicate: predicateOf(row) })),
    connectors: rows.slice(0, -1).map((row) => row.connectorToNext),
  };
}

/** Canonical JSON text of the form's query. */
export function buildQueryJson(rows: ClauseFormState[]): string {
  return JSON.stringify(buildQueryDoc(rows));
}
