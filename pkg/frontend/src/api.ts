/**
 * Thin fetch client for the stsq HTTP API. All failures become ApiError
 * carrying the service's error envelope, so the UI can show one banner.
 */

import { QueryResponse, TransmitterJson } from './types.js';

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly path: string,
    message: string,
  ) {
    super(message);
  }
}

async function errorFrom(resp: Response): Promise<ApiError> {
  try {
    const body = await resp.json();
    return new ApiError(resp.status, body.error?.path ?? '', body.error?.message ?? resp.statusText);
  } catch {
    return new ApiError(resp.status, '', resp.statusText);
  }
}

export async function fetchTransmitters(baseUrl: string): Promise<TransmitterJson[]> {
  const resp = await fetch(`${baseUrl}/api/transmitters`);
  if (!resp.ok) throw await errorFrom(resp);
  return (await resp.json()).transmitters;
}

export async function runQuery(
  baseUrl: string,
  queryJson: string,
  signal?: AbortSignal,
): Promise<QueryResponse> {
  const resp = await fetch(`${baseUrl}/api/query`, {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: queryJson,
    signal,
  });
  if (!resp.ok) throw await errorFrom(resp);
  return resp.json();
}

export async function geocodeAddress(
  baseUrl: string,
  address: string,
): Promise<{ lat: number; lon: number }> {
  const resp = await fetch(`${baseUrl}/api/geocode?address=${encodeURIComponent(address)}`);
  if (!resp.ok) throw await errorFrom(resp);
  return resp.json();
}
