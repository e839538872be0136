/**
 * Axis mappings shared by every visualization.
 *
 * The frequency axis spans 1 Hz to 1 THz on a log-10 scale, so
 * position(f) = log10(f) / 12, clamped to [0, 1]; the hours axis spans the
 * 1440 minutes of a day linearly.
 */

import { MAX_HZ, MINUTES_PER_DAY } from './types.js';

export function frequencyAxisPosition(hz: number): number {
  if (hz <= 0) return 0;
  return Math.min(1, Math.max(0, Math.log10(hz) / 12));
}

export function hoursAxisPosition(minute: number): number {
  return Math.min(1, Math.max(0, minute / MINUTES_PER_DAY));
}

/** Tick positions for the frequency axis, one per decade. */
export function frequencyDecadeTicks(): { position: number; label: string }[] {
  const labels = [
    '1Hz', '10Hz', '100Hz', '1kHz', '10kHz', '100kHz',
    '1MHz', '10MHz', '100MHz', '1GHz', '10GHz', '100GHz', '1THz',
  ];
  return labels.map((label, i) => ({ position: i / 12, label }));
}

/** Tick positions for the hours axis, every three hours. */
export function hoursTicks(): { position: number; label: string }[] {
  const ticks = [];
  for (let hour = 0; hour <= 24; hour += 3) {
    ticks.push({ position: (hour * 60) / MINUTES_PER_DAY, label: `${hour}:00` });
  }
  return ticks;
}

export { MAX_HZ, MINUTES_PER_DAY };
