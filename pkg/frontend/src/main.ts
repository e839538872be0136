/**
 * Application wiring: form rows, live visualizations, query execution,
 * results table, and CSV download.
 *
 * Visualizations refresh on every field change; only fetching results
 * needs a click. At most one query request is in flight: a new run aborts
 * the previous one.
 */

import { ApiError, fetchTransmitters, geocodeAddress, runQuery } from './api.js';
import { frequencyDecadeTicks, hoursTicks } from './axes.js';
import { MapWidget } from './map.js';
import { buildQueryJson, formIsValid, validateRow } from './queryBuilder.js';
import { TABLE_COLUMNS, tableRows, toCsv } from './resultsTable.js';
import {
  ClauseFormState,
  ClauseKind,
  QueryResponse,
  TransmitterJson,
  newClauseFormState,
} from './types.js';
import { rowVisuals, styleState } from './viz.js';

const API_BASE =
  new URLSearchParams(window.location.search).get('api') ?? window.location.origin;

const el = <T extends HTMLElement>(id: string): T => {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
};

const rowsHost = el<HTMLDivElement>('rows');
const runButton = el<HTMLButtonElement>('run');
const exportButton = el<HTMLButtonElement>('export');
const addButton = el<HTMLButtonElement>('add-row');
const banner = el<HTMLDivElement>('banner');
const resultsHost = el<HTMLDivElement>('results');
const sqlHost = el<HTMLPreElement>('sql');
const hoursAxis = el<HTMLDivElement>('hours-axis');
const freqAxis = el<HTMLDivElement>('freq-axis');
const mapSvg = document.getElementById('map') as unknown as SVGSVGElement;

let rows: ClauseFormState[] = [newClauseFormState()];
let transmitters: TransmitterJson[] = [];
let lastResponse: QueryResponse | null = null;
let inflight: AbortController | null = null;

const map = new MapWidget(mapSvg, {
  onMarkerMoved(id, lat, lon) {
    const row = rows[id];
    if (!row) return;
    row.location.lat = lat;
    row.location.lon = lon;
    renderRows();
    renderViz();
  },
  onRadiusChanged(id, radiusKm) {
    const row = rows[id];
    if (!row) return;
    row.location.radiusKm = radiusKm;
    renderRows();
    renderViz();
  },
});

function showBanner(message: string): void {
  banner.textContent = message;
  banner.hidden = false;
}

function clearBanner(): void {
  banner.hidden = true;
}

// ---------------------------------------------------------------------------
// Row editors

function numberInput(
  value: number | null,
  placeholder: string,
  onChange: (v: number | null) => void,
  step = 'any',
): HTMLInputElement {
  const input = document.createElement('input');
  input.type = 'number';
  input.step = step;
  input.placeholder = placeholder;
  if (value !== null) input.value = String(value);
  input.addEventListener('input', () => {
    onChange(input.value === '' ? null : Number(input.value));
    renderViz();
    updateRunState();
  });
  return input;
}

function timeInput(value: number | null, onChange: (v: number | null) => void): HTMLInputElement {
  const input = document.createElement('input');
  input.type = 'text';
  input.placeholder = 'HH:MM';
  input.size = 5;
  if (value !== null) {
    input.value = `${String(Math.floor(value / 60)).padStart(2, '0')}:${String(value % 60).padStart(2, '0')}`;
  }
  input.addEventListener('input', () => {
    const m = /^(\d{1,2}):(\d{2})$/.exec(input.value.trim());
    onChange(m ? Number(m[1]) * 60 + Number(m[2]) : null);
    renderViz();
    updateRunState();
  });
  return input;
}

function kindFields(row: ClauseFormState, index: number): HTMLElement {
  const host = document.createElement('span');
  host.className = 'fields';
  switch (row.kind) {
    case 'name': {
      const select = document.createElement('select');
      const blank = document.createElement('option');
      blank.value = '';
      blank.textContent = 'choose a name…';
      select.appendChild(blank);
      for (const t of transmitters) {
        const option = document.createElement('option');
        option.value = t.name;
        option.textContent = t.name;
        if (row.name.value === t.name) option.selected = true;
        select.appendChild(option);
      }
      select.addEventListener('change', () => {
        row.name.value = select.value || null;
        renderViz();
        updateRunState();
      });
      host.appendChild(select);
      break;
    }
    case 'location': {
      const mode = document.createElement('select');
      for (const value of ['coords', 'address'] as const) {
        const option = document.createElement('option');
        option.value = value;
        option.textContent = value === 'coords' ? 'lat/lon' : 'address';
        if (row.location.mode === value) option.selected = true;
        mode.appendChild(option);
      }
      mode.addEventListener('change', () => {
        row.location.mode = mode.value as 'coords' | 'address';
        renderRows();
        updateRunState();
      });
      host.appendChild(mode);

      if (row.location.mode === 'address') {
        const address = document.createElement('input');
        address.type = 'text';
        address.placeholder = 'address';
        address.value = row.location.address;
        address.addEventListener('input', () => {
          row.location.address = address.value;
        });
        const resolve = document.createElement('button');
        resolve.type = 'button';
        resolve.textContent = 'find';
        resolve.addEventListener('click', async () => {
          clearBanner();
          try {
            const point = await geocodeAddress(API_BASE, row.location.address);
            row.location.lat = point.lat;
            row.location.lon = point.lon;
            renderRows();
            renderViz();
            updateRunState();
          } catch (err) {
            showBanner(err instanceof ApiError ? `geocoding: ${err.message}` : String(err));
          }
        });
        host.append(address, resolve);
      } else {
        host.append(
          numberInput(row.location.lat, 'lat', (v) => (row.location.lat = v)),
          numberInput(row.location.lon, 'lon', (v) => (row.location.lon = v)),
        );
      }
      const radius = numberInput(row.location.radiusKm, 'radius', (v) => (row.location.radiusKm = v));
      host.append(radius, document.createTextNode(' km'));
      break;
    }
    case 'hours': {
      host.append(
        timeInput(row.hours.fromMin, (v) => (row.hours.fromMin = v)),
        document.createTextNode(' to '),
        timeInput(row.hours.toMin, (v) => (row.hours.toMin = v)),
      );
      break;
    }
    case 'frequency': {
      const mode = document.createElement('select');
      for (const value of ['centre', 'range'] as const) {
        const option = document.createElement('option');
        option.value = value;
        option.textContent = value === 'centre' ? 'centre ± tolerance' : 'min / max';
        if (row.frequency.mode === value) option.selected = true;
        mode.appendChild(option);
      }
      mode.addEventListener('change', () => {
        row.frequency.mode = mode.value as 'centre' | 'range';
        renderRows();
        updateRunState();
      });
      host.appendChild(mode);
      if (row.frequency.mode === 'centre') {
        host.append(
          numberInput(row.frequency.centreHz, 'centre Hz', (v) => (row.frequency.centreHz = v), '1'),
          document.createTextNode(' ± '),
          numberInput(row.frequency.toleranceHz, 'tolerance Hz', (v) => (row.frequency.toleranceHz = v), '1'),
          document.createTextNode(' Hz'),
        );
      } else {
        host.append(
          numberInput(row.frequency.lowHz, 'min Hz', (v) => (row.frequency.lowHz = v), '1'),
          document.createTextNode(' .. '),
          numberInput(row.frequency.highHz, 'max Hz', (v) => (row.frequency.highHz = v), '1'),
          document.createTextNode(' Hz'),
        );
      }
      break;
    }
  }
  void index;
  return host;
}

function renderRows(): void {
  rowsHost.replaceChildren();
  rows.forEach((row, index) => {
    const card = document.createElement('div');
    card.className = `row ${styleState(row.include)}`;
    card.dataset.state = styleState(row.include);

    const include = document.createElement('input');
    include.type = 'checkbox';
    include.checked = row.include;
    include.title = 'include (green) or exclude (red)';
    include.addEventListener('change', () => {
      row.include = include.checked;
      renderRows();
      renderViz();
    });
    card.appendChild(include);

    const kind = document.createElement('select');
    for (const value of ['name', 'location', 'hours', 'frequency'] as ClauseKind[]) {
      const option = document.createElement('option');
      option.value = value;
      option.textContent = value;
      if (row.kind === value) option.selected = true;
      kind.appendChild(option);
    }
    kind.addEventListener('change', () => {
      row.kind = kind.value as ClauseKind;
      renderRows();
      renderViz();
      updateRunState();
    });
    card.appendChild(kind);

    card.appendChild(kindFields(row, index));

    const problems = validateRow(row);
    if (problems.length) {
      const note = document.createElement('span');
      note.className = 'problems';
      note.textContent = problems.join('; ');
      card.appendChild(note);
    }

    const remove = document.createElement('button');
    remove.type = 'button';
    remove.textContent = '−';
    remove.title = 'remove this property';
    remove.disabled = rows.length === 1;
    remove.addEventListener('click', () => {
      rows.splice(index, 1);
      renderRows();
      renderViz();
      updateRunState();
    });
    card.appendChild(remove);

    rowsHost.appendChild(card);

    if (index < rows.length - 1) {
      const connector = document.createElement('select');
      connector.className = 'connector';
      for (const value of ['and', 'or'] as const) {
        const option = document.createElement('option');
        option.value = value;
        option.textContent = value.toUpperCase();
        if (row.connectorToNext === value) option.selected = true;
        connector.appendChild(option);
      }
      connector.addEventListener('change', () => {
        row.connectorToNext = connector.value as 'and' | 'or';
        updateRunState();
      });
      rowsHost.appendChild(connector);
    }
  });
}

// ---------------------------------------------------------------------------
// Visualizations

function renderAxis(host: HTMLDivElement, ticks: { position: number; label: string }[]): void {
  host.replaceChildren();
  const lane = document.createElement('div');
  lane.className = 'axis-lane';
  host.appendChild(lane);
  for (const tick of ticks) {
    const mark = document.createElement('span');
    mark.className = 'tick';
    mark.style.left = `${tick.position * 100}%`;
    mark.textContent = tick.label;
    host.appendChild(mark);
  }
}

function renderViz(): void {
  renderAxis(hoursAxis, hoursTicks());
  renderAxis(freqAxis, frequencyDecadeTicks());
  const hoursLane = hoursAxis.querySelector('.axis-lane') as HTMLDivElement;
  const freqLane = freqAxis.querySelector('.axis-lane') as HTMLDivElement;

  const circles = [];
  for (let i = 0; i < rows.length; i += 1) {
    const row = rows[i];
    if (!row) continue;
    const visuals = rowVisuals(row);
    for (const segment of visuals.hoursSegments) {
      const bar = document.createElement('div');
      bar.className = `bar ${segment.state}`;
      bar.style.left = `${segment.startFrac * 100}%`;
      bar.style.width = `${Math.max(0.4, (segment.endFrac - segment.startFrac) * 100)}%`;
      hoursLane.appendChild(bar);
    }
    if (visuals.frequencySegment) {
      const segment = visuals.frequencySegment;
      const bar = document.createElement('div');
      bar.className = `bar ${segment.state}`;
      bar.style.left = `${segment.startFrac * 100}%`;
      bar.style.width = `${Math.max(0.4, (segment.endFrac - segment.startFrac) * 100)}%`;
      freqLane.appendChild(bar);
    }
    if (visuals.circle) {
      circles.push({
        id: i,
        lat: visuals.circle.lat,
        lon: visuals.circle.lon,
        radiusKm: visuals.circle.radiusKm,
        state: visuals.circle.state,
      });
    }
  }
  map.setCircles(circles);
}

function updateRunState(): void {
  runButton.disabled = !formIsValid(rows);
}

// ---------------------------------------------------------------------------
// Results

function renderResults(response: QueryResponse): void {
  lastResponse = response;
  exportButton.disabled = false;
  sqlHost.textContent = `${response.sql.text}\n-- params: ${JSON.stringify(response.sql.params)}`;

  const table = document.createElement('table');
  const head = table.createTHead().insertRow();
  for (const column of TABLE_COLUMNS) {
    const th = document.createElement('th');
    th.textContent = column;
    head.appendChild(th);
  }
  const body = table.createTBody();
  for (const cells of tableRows(response.matches)) {
    const tr = body.insertRow();
    for (const cell of cells) {
      tr.insertCell().textContent = cell;
    }
  }
  const caption = table.createCaption();
  caption.textContent = `${response.matches.length} match(es)`;
  resultsHost.replaceChildren(table);
}

async function run(): Promise<void> {
  clearBanner();
  inflight?.abort();
  const controller = new AbortController();
  inflight = controller;
  try {
    const response = await runQuery(API_BASE, buildQueryJson(rows), controller.signal);
    if (inflight === controller) renderResults(response);
  } catch (err) {
    if (controller.signal.aborted) return;
    showBanner(err instanceof ApiError ? `query failed: ${err.message}` : String(err));
  } finally {
    if (inflight === controller) inflight = null;
  }
}

function exportCsv(): void {
  if (!lastResponse) return;
  const blob = new Blob([toCsv(lastResponse.matches)], { type: 'text/csv' });
  const link = document.createElement('a');
  link.href = URL.createObjectURL(blob);
  link.download = 'results.csv';
  link.click();
  URL.revokeObjectURL(link.href);
}

// ---------------------------------------------------------------------------
// Boot

addButton.addEventListener('click', () => {
  rows.push(newClauseFormState());
  renderRows();
  renderViz();
  updateRunState();
});
runButton.addEventListener('click', () => void run());
exportButton.addEventListener('click', exportCsv);

async function boot(): Promise<void> {
  renderRows();
  renderViz();
  updateRunState();
  try {
    transmitters = await fetchTransmitters(API_BASE);
    map.setSites(
      transmitters
        .filter((t) => t.location)
        .map((t) => ({ name: t.name, lat: t.location!.lat, lon: t.location!.lon })),
    );
    renderRows();
  } catch (err) {
    showBanner(
      err instanceof ApiError
        ? `cannot load transmitters: ${err.message}`
        : `service unreachable at ${API_BASE} (append ?api=http://host:port to point elsewhere)`,
    );
  }
}

void boot();
