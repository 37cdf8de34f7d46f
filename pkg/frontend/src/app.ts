/**
 * Controller: form state in, API calls out, URL kept in sync. At most one
 * search result is ever applied per issued sequence number, and submitting
 * resets to page 1 while back/forward restores whole past queries.
 */

import { ApiError, RequestSequencer, fetchFacets, runSearch } from './api.js'
import { QueryState, decodeState, emptyState, encodeState } from './state.js'
import {
  ANY,
  Elements,
  buildFacetDropdowns,
  clearBanner,
  clearPatternError,
  renderResults,
  showBanner,
  showPatternError,
} from './view.js'

const DEBOUNCE_MS = 300

export class App {
  private el: Elements
  private dropdowns = new Map<string, HTMLSelectElement>()
  private sequencer = new RequestSequencer()
  private debounceTimer: number | undefined
  private state: QueryState = emptyState()

  constructor(elements: Elements) {
    this.el = elements
  }

  async start(): Promise<void> {
    try {
      const response = await fetchFacets()
      this.dropdowns = buildFacetDropdowns(this.el.facetRow, response.facets, () =>
        this.onFormChanged(),
      )
    } catch {
      showBanner(this.el, 'Search service unreachable.', () => void this.start())
      return
    }
    clearBanner(this.el)

    this.el.pattern.addEventListener('input', () => this.onPatternEdited())
    this.el.mode.addEventListener('change', () => this.onFormChanged())
    this.el.caseBox.addEventListener('change', () => this.onFormChanged())
    this.el.prev.addEventListener('click', () => this.goToPage(this.state.page - 1))
    this.el.next.addEventListener('click', () => this.goToPage(this.state.page + 1))
    window.addEventListener('popstate', () => {
      this.applyState(decodeState(window.location.search))
      void this.search()
    })

    this.applyState(decodeState(window.location.search))
    await this.search()
  }

  submit(): void {
    window.clearTimeout(this.debounceTimer)
    this.state = this.readForm(1)
    this.pushUrl()
    void this.search()
  }

  private onFormChanged(): void {
    window.clearTimeout(this.debounceTimer)
    this.state = this.readForm(1)
    this.pushUrl()
    void this.search()
  }

  private onPatternEdited(): void {
    window.clearTimeout(this.debounceTimer)
    this.debounceTimer = window.setTimeout(() => this.onFormChanged(), DEBOUNCE_MS)
  }

  private goToPage(page: number): void {
    this.state = this.readForm(Math.max(1, page))
    this.pushUrl()
    void this.search()
  }

  private readForm(page: number): QueryState {
    const facets: Record<string, string> = {}
    for (const [facet, select] of this.dropdowns) {
      if (select.value !== ANY) facets[facet] = select.value
    }
    const mode = this.el.mode.value
    return {
      facets,
      pattern: this.el.pattern.value,
      mode: mode === 'regex' || mode === 'keywords' ? mode : 'literal',
      caseSensitive: this.el.caseBox.checked,
      page,
    }
  }

  private applyState(state: QueryState): void {
    this.state = state
    this.el.pattern.value = state.pattern
    this.el.mode.value = state.mode
    this.el.caseBox.checked = state.caseSensitive
    for (const [facet, select] of this.dropdowns) {
      select.value = state.facets[facet] ?? ANY
    }
  }

  private pushUrl(): void {
    const encoded = encodeState(this.state)
    const url = encoded ? `${window.location.pathname}?${encoded}` : window.location.pathname
    window.history.pushState(null, '', url)
  }

  private async search(): Promise<void> {
    const ticket = this.sequencer.next()
    try {
      const response = await runSearch(this.state)
      if (!this.sequencer.isCurrent(ticket)) return // superseded; drop it
      clearBanner(this.el)
      clearPatternError(this.el)
      renderResults(this.el, response, this.state.page)
    } catch (err) {
      if (!this.sequencer.isCurrent(ticket)) return
      if (err instanceof ApiError && err.code === 'pattern_syntax') {
        const offset = typeof err.detail.offset === 'number' ? err.detail.offset : undefined
        showPatternError(this.el, err.message, offset)
      } else if (err instanceof ApiError) {
        showBanner(this.el, `${err.code}: ${err.message}`)
      } else {
        showBanner(this.el, 'Search service unreachable.', () => void this.search())
      }
    }
  }
}
