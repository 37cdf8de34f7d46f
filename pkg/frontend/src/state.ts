/**
 * The whole query lives in the page URL, mirroring the API parameter
 * names, so any search is shareable and the back button replays history.
 */

import type { SearchMode } from './types.js'

export const PAGE_SIZE = 10

const MODES: SearchMode[] = ['literal', 'regex', 'keywords']

export interface QueryState {
  /** one optional value per facet name */
  facets: Record<string, string>
  pattern: string
  mode: SearchMode
  caseSensitive: boolean
  page: number
}

export function emptyState(): QueryState {
  return { facets: {}, pattern: '', mode: 'literal', caseSensitive: false, page: 1 }
}

/** Encode state into a URL query string ('' when everything is default). */
export function encodeState(state: QueryState): string {
  const params = new URLSearchParams()
  if (state.pattern) params.set('q', state.pattern)
  if (state.mode !== 'literal') params.set('mode', state.mode)
  if (state.caseSensitive) params.set('case', '1')
  for (const [facet, value] of Object.entries(state.facets)) {
    if (value) params.set(`facet.${facet}`, value)
  }
  if (state.page > 1) params.set('page', String(state.page))
  return params.toString()
}

/**
 * Decode a URL query string; malformed or unknown parameters fall back
 * to their defaults rather than breaking the page.
 */
export function decodeState(search: string): QueryState {
  const state = emptyState()
  let params: URLSearchParams
  try {
    params = new URLSearchParams(search)
  } catch {
    return state
  }
  for (const [key, value] of params) {
    if (key === 'q') {
      state.pattern = value
    } else if (key === 'mode' && (MODES as string[]).includes(value)) {
      state.mode = value as SearchMode
    } else if (key === 'case') {
      state.caseSensitive = value === '1'
    } else if (key.startsWith('facet.') && key.length > 'facet.'.length) {
      state.facets[key.slice('facet.'.length)] = value
    } else if (key === 'page') {
      const page = Number.parseInt(value, 10)
      if (Number.isFinite(page) && page >= 1) state.page = page
    }
  }
  return state
}

/** API query parameters for this state (page becomes limit/offset). */
export function toApiParams(state: QueryState): URLSearchParams {
  const params = new URLSearchParams()
  params.set('q', state.pattern)
  params.set('mode', state.mode)
  params.set('case', state.caseSensitive ? '1' : '0')
  for (const [facet, value] of Object.entries(state.facets)) {
    if (value) params.set(`facet.${facet}`, value)
  }
  params.set('limit', String(PAGE_SIZE))
  params.set('offset', String((state.page - 1) * PAGE_SIZE))
  return params
}

export function totalPages(total: number): number {
  return Math.max(1, Math.ceil(total / PAGE_SIZE))
}
