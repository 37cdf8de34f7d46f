/** Thin typed client for the search service; all semantics live server-side. */

import type { FacetsResponse, SearchResponse, ApiErrorBody } from './types.js'
import type { QueryState } from './state.js'
import { toApiParams } from './state.js'

export class ApiError extends Error {
  code: string
  detail: Record<string, unknown>

  constructor(code: string, message: string, detail?: Record<string, unknown>) {
    super(message)
    this.code = code
    this.detail = detail ?? {}
  }
}

export type FetchLike = (url: string) => Promise<Response>

async function getJson<T>(url: string, fetchFn: FetchLike): Promise<T> {
  const response = await fetchFn(url)
  const body = await response.json()
  if (!response.ok) {
    const error = (body as ApiErrorBody).error
    if (error && typeof error.code === 'string') {
      throw new ApiError(error.code, error.message, error.detail)
    }
    throw new Error(`request failed with status ${response.status}`)
  }
  return body as T
}

export function fetchFacets(
  fetchFn: FetchLike = (url) => fetch(url),
): Promise<FacetsResponse> {
  return getJson<FacetsResponse>('/api/facets', fetchFn)
}

export function searchUrl(state: QueryState): string {
  return `/api/search?${toApiParams(state).toString()}`
}

export function runSearch(
  state: QueryState,
  fetchFn: FetchLike = (url) => fetch(url),
): Promise<SearchResponse> {
  return getJson<SearchResponse>(searchUrl(state), fetchFn)
}

/**
 * Hands out request sequence numbers; a response is applied only when no
 * newer request was issued meanwhile, so a slow stale search can never
 * overwrite fresher results.
 */
export class RequestSequencer {
  private issued = 0

  next(): number {
    this.issued += 1
    return this.issued
  }

  isCurrent(ticket: number): boolean {
    return ticket === this.issued
  }
}
