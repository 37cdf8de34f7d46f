/** Wire types for the search service API. */

export interface FacetsResponse {
  facets: Record<string, string[]>
}

export interface Span {
  start: number
  end: number
}

export interface Hit {
  id: string
  title: string
  matched_field: string
  span: Span
  snippet: string
  snippet_span: Span
}

export interface SearchResponse {
  total: number
  hits: Hit[]
  query: Record<string, unknown>
}

export interface ApiErrorBody {
  error: {
    code: string
    message: string
    detail?: Record<string, unknown>
  }
}

export type SearchMode = 'literal' | 'regex' | 'keywords'
