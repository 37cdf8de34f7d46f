// @vitest-environment happy-dom
import { beforeEach, describe, expect, it } from 'vitest'

import { buildFacetDropdowns, renderResults } from '../src/view.js'
import type { Elements } from '../src/view.js'
import type { SearchResponse } from '../src/types.js'
import scenario from './fixtures/scenario-response.json'

const response = scenario as SearchResponse

function makeElements(): Elements {
  document.body.innerHTML = `
    <div id="facet-row"></div>
    <input id="pattern">
    <div id="pattern-error" hidden></div>
    <select id="mode"></select>
    <input id="case" type="checkbox">
    <div id="banner" hidden></div>
    <div id="summary"></div>
    <ol id="results"></ol>
    <nav id="pager" hidden>
      <button id="prev"></button>
      <span id="page-label"></span>
      <button id="next"></button>
    </nav>`
  const byId = (id: string) => document.getElementById(id) as never
  return {
    facetRow: byId('facet-row'),
    pattern: byId('pattern'),
    patternError: byId('pattern-error'),
    mode: byId('mode'),
    caseBox: byId('case'),
    banner: byId('banner'),
    summary: byId('summary'),
    results: byId('results'),
    pager: byId('pager'),
    prev: byId('prev'),
    next: byId('next'),
    pageLabel: byId('page-label'),
  }
}

describe('buildFacetDropdowns', () => {
  beforeEach(() => makeElements())

  it('builds one dropdown per facet with a leading Any option', () => {
    const container = document.getElementById('facet-row')!
    const dropdowns = buildFacetDropdowns(
      container,
      { property_type: ['Student Hostel', 'Flat'], transaction_type: ['Rent'] },
      () => {},
    )
    expect([...dropdowns.keys()]).toEqual(['property_type', 'transaction_type'])
    const single = dropdowns.get('transaction_type')!
    expect([...single.options].map((o) => o.textContent)).toEqual(['Any', 'Rent'])
    expect(single.value).toBe('')
  })
})

describe('renderResults', () => {
  it('renders one card per API hit with the span region marked', () => {
    const el = makeElements()
    renderResults(el, response, 1)
    const cards = [...el.results.querySelectorAll('li')]
    expect(cards.length).toBe(response.hits.length)
    cards.forEach((card, n) => {
      const hit = response.hits[n]
      expect(card.querySelector('h3')!.textContent).toBe(hit.title)
      expect(card.querySelector('.meta')!.textContent).toContain(hit.id)
      const snippet = card.querySelector('.snippet')!
      expect(snippet.textContent).toBe(hit.snippet)
      const marked = snippet.querySelector('mark')!.textContent
      expect(marked).toBe(
        hit.snippet.slice(hit.snippet_span.start, hit.snippet_span.end),
      )
    })
    expect(el.summary.textContent).toBe('6 results')
    expect(el.pager.hidden).toBe(true) // 6 hits fit one page
  })

  it('shows the explicit empty message on zero hits', () => {
    const el = makeElements()
    renderResults(el, { total: 0, hits: [], query: {} }, 1)
    expect(el.summary.textContent).toBe('No results within these boundaries.')
    expect(el.results.children.length).toBe(0)
  })

  it('pages beyond one page of results', () => {
    const el = makeElements()
    const many = { ...response, total: 23 }
    renderResults(el, many, 2)
    expect(el.pager.hidden).toBe(false)
    expect(el.pageLabel.textContent).toBe('page 2 of 3')
    expect(el.prev.disabled).toBe(false)
    expect(el.next.disabled).toBe(false)
  })
})
