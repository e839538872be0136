/**
 * Pure view-model builders for the live query visualizations.
 *
 * Every descriptor carries exactly one style state, 'included' (green) or
 * 'excluded' (red), mirroring the row's checkbox. Rendering is best-effort:
 * a row contributes only the descriptors its completed fields support, so
 * half-filled rows draw what they can and nothing else.
 */

import { frequencyAxisPosition, hoursAxisPosition } from './axes.js';
import { ClauseFormState, MINUTES_PER_DAY } from './types.js';

export type StyleState = 'included' | 'excluded';

export function styleState(include: boolean): StyleState {
  return include ? 'included' : 'excluded';
}

export interface BarSegment {
  startFrac: number;
  endFrac: number;
  state: StyleState;
}

export interface CircleDescriptor {
  lat: number;
  lon: number;
  radiusKm: number;
  state: StyleState;
}

/**
 * Hours-axis bars for a window; a midnight-wrapping window renders as two
 * segments (start..24:00 and 0:00..end).
 */
export function hoursBarSegments(
  fromMin: number,
  toMin: number,
  include: boolean,
): BarSegment[] {
  const state = styleState(include);
  if (fromMin > toMin) {
    const segments: BarSegment[] = [
      { startFrac: hoursAxisPosition(fromMin), endFrac: 1, state },
    ];
    if (toMin > 0) {
      segments.push({ startFrac: 0, endFrac: hoursAxisPosition(toMin), state });
    }
    return segments;
  }
  return [
    {
      startFrac: hoursAxisPosition(fromMin),
      endFrac: hoursAxisPosition(toMin),
      state,
    },
  ];
}

/** Frequency-axis bar on the log scale; zero-width bands still get a sliver. */
export function frequencyBarSegment(
  lowHz: number,
  highHz: number,
  include: boolean,
): BarSegment {
  return {
    startFrac: frequencyAxisPosition(lowHz),
    endFrac: frequencyAxisPosition(highHz),
    state: styleState(include),
  };
}

export interface RowVisuals {
  hoursSegments: BarSegment[];
  frequencySegment: BarSegment | null;
  circle: CircleDescriptor | null;
}

/** Descriptors for whatever parts of a row are complete. */
export function rowVisuals(row: ClauseFormState): RowVisuals {
  const visuals: RowVisuals = { hoursSegments: [], frequencySegment: null, circle: null };
  if (row.kind === 'hours') {
    const { fromMin, toMin } = row.hours;
    if (
      fromMin !== null &&
      toMin !== null &&
      fromMin >= 0 &&
      fromMin < MINUTES_PER_DAY &&
      toMin >= 0 &&
      toMin <= MINUTES_PER_DAY &&
      fromMin !== toMin
    ) {
      visuals.hoursSegments = hoursBarSegments(fromMin, toMin, row.include);
    }
  } else if (row.kind === 'frequency') {
    const f = row.frequency;
    if (f.mode === 'centre' && f.centreHz !== null && f.toleranceHz !== null) {
      visuals.frequencySegment = frequencyBarSegment(
        Math.max(0, f.centreHz - f.toleranceHz),
        f.centreHz + f.toleranceHz,
        row.include,
      );
    } else if (f.mode === 'range' && f.lowHz !== null && f.highHz !== null && f.lowHz <= f.highHz) {
      visuals.frequencySegment = frequencyBarSegment(f.lowHz, f.highHz, row.include);
    }
  } else if (row.kind === 'location') {
    const { lat, lon, radiusKm } = row.location;
    if (lat !== null && lon !== null && radiusKm !== null && radiusKm > 0) {
      visuals.circle = { lat, lon, radiusKm, state: styleState(row.include) };
    }
  }
  return visuals;
}
