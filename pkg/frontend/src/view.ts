/** DOM rendering; no business logic, everything text goes through textContent. */

import type { SearchResponse } from './types.js'
import { hitView } from './highlight.js'
import { totalPages } from './state.js'

export interface Elements {
  facetRow: HTMLElement
  pattern: HTMLInputElement
  patternError: HTMLElement
  mode: HTMLSelectElement
  caseBox: HTMLInputElement
  banner: HTMLElement
  summary: HTMLElement
  results: HTMLOListElement
  pager: HTMLElement
  prev: HTMLButtonElement
  next: HTMLButtonElement
  pageLabel: HTMLElement
}

export const ANY = ''

export function buildFacetDropdowns(
  container: HTMLElement,
  facets: Record<string, string[]>,
  onChange: () => void,
): Map<string, HTMLSelectElement> {
  container.replaceChildren()
  const dropdowns = new Map<string, HTMLSelectElement>()
  for (const [facet, values] of Object.entries(facets)) {
    const label = document.createElement('label')
    label.className = 'facet'
    const caption = document.createElement('span')
    caption.textContent = facet.replace(/_/g, ' ')
    const select = document.createElement('select')
    select.name = `facet.${facet}`
    const any = document.createElement('option')
    any.value = ANY
    any.textContent = 'Any'
    select.append(any)
    for (const value of values) {
      const option = document.createElement('option')
      option.value = value
      option.textContent = value
      select.append(option)
    }
    select.addEventListener('change', onChange)
    label.append(caption, select)
    container.append(label)
    dropdowns.set(facet, select)
  }
  return dropdowns
}

export function renderResults(el: Elements, response: SearchResponse, page: number): void {
  el.results.replaceChildren()
  if (response.total === 0) {
    el.summary.textContent = 'No results within these boundaries.'
    el.pager.hidden = true
    return
  }
  el.summary.textContent =
    response.total === 1 ? '1 result' : `${response.total} results`

  for (const hit of response.hits) {
    const view = hitView(hit)
    const item = document.createElement('li')
    item.className = 'card'

    const title = document.createElement('h3')
    title.textContent = view.title
    const meta = document.createElement('div')
    meta.className = 'meta'
    meta.textContent = `${view.id} · matched in ${view.fieldLabel}`

    const snippet = document.createElement('p')
    snippet.className = 'snippet'
    const mark = document.createElement('mark')
    mark.textContent = view.match
    snippet.append(view.before, mark, view.after)

    item.append(title, meta, snippet)
    el.results.append(item)
  }

  const pages = totalPages(response.total)
  el.pager.hidden = pages <= 1
  el.pageLabel.textContent = `page ${page} of ${pages}`
  el.prev.disabled = page <= 1
  el.next.disabled = page >= pages
}

export function showBanner(el: Elements, message: string, onRetry?: () => void): void {
  el.banner.replaceChildren()
  el.banner.hidden = false
  const text = document.createElement('span')
  text.textContent = message
  el.banner.append(text)
  if (onRetry) {
    const retry = document.createElement('button')
    retry.type = 'button'
    retry.textContent = 'Retry'
    retry.addEventListener('click', onRetry)
    el.banner.append(retry)
  }
}

export function clearBanner(el: Elements): void {
  el.banner.hidden = true
  el.banner.replaceChildren()
}

export function showPatternError(el: Elements, message: string, offset?: number): void {
  el.patternError.hidden = false
  el.patternError.textContent =
    offset === undefined ? message : `${message} (offset ${offset})`
}

export function clearPatternError(el: Elements): void {
  el.patternError.hidden = true
  el.patternError.textContent = ''
}
