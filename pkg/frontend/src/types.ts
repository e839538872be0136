/**
 * Form-state model for the visual query builder.
 *
 * Each row of the builder edits one clause: a property kind, its
 * kind-specific fields, an include checkbox (on by default; off renders the
 * row red and negates the clause), and the connector joining it to the next
 * row. A row keeps the field groups of every kind so switching the kind
 * selector back and forth never loses input; only the active group matters
 * when the query is built.
 */

export type ClauseKind = 'name' | 'location' | 'hours' | 'frequency';
export type ConnectorChoice = 'and' | 'or';

export interface NameFields {
  /** Chosen from the dropdown of dataset names; null until picked. */
  value: string | null;
}

export interface LocationFields {
  mode: 'coords' | 'address';
  /** Free-text address; resolved to lat/lon through the service geocoder. */
  address: string;
  lat: number | null;
  lon: number | null;
  radiusKm: number | null;
}

export interface HoursFields {
  fromMin: number | null;
  toMin: number | null;
}

export interface FrequencyFields {
  mode: 'centre' | 'range';
  centreHz: number | null;
  toleranceHz: number | null;
  lowHz: number | null;
  highHz: number | null;
}

export interface ClauseFormState {
  kind: ClauseKind;
  include: boolean;
  connectorToNext: ConnectorChoice;
  name: NameFields;
  location: LocationFields;
  hours: HoursFields;
  frequency: FrequencyFields;
}

export function newClauseFormState(kind: ClauseKind = 'name'): ClauseFormState {
  return {
    kind,
    include: true,
    connectorToNext: 'and',
    name: { value: null },
    location: { mode: 'coords', address: '', lat: null, lon: null, radiusKm: null },
    hours: { fromMin: null, toMin: null },
    frequency: {
      mode: 'centre',
      centreHz: null,
      toleranceHz: null,
      lowHz: null,
      highHz: null,
    },
  };
}

/** Wire shapes mirrored from the service (snake_case). */
export interface TransmitterJson {
  name: string;
  location: { lat: number; lon: number } | null;
  hours: { from_min: number; to_min: number };
  band: { low_hz: number; high_hz: number };
}

export interface QueryResponse {
  matches: TransmitterJson[];
  sql: { text: string; params: unknown[] };
}

export const MAX_HZ = 1_000_000_000_000;
export const MINUTES_PER_DAY = 1440;
