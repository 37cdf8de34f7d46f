import { App } from './app.js'
import type { Elements } from './view.js'

function grab<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id)
  if (!node) throw new Error(`missing #${id}`)
  return node as T
}

document.addEventListener('DOMContentLoaded', () => {
  const elements: Elements = {
    facetRow: grab('facet-row'),
    pattern: grab<HTMLInputElement>('pattern'),
    patternError: grab('pattern-error'),
    mode: grab<HTMLSelectElement>('mode'),
    caseBox: grab<HTMLInputElement>('case'),
    banner: grab('banner'),
    summary: grab('summary'),
    results: grab<HTMLOListElement>('results'),
    pager: grab('pager'),
    prev: grab<HTMLButtonElement>('prev'),
    next: grab<HTMLButtonElement>('next'),
    pageLabel: grab('page-label'),
  }
  const app = new App(elements)
  grab<HTMLFormElement>('search-form').addEventListener('submit', (event) => {
    event.preventDefault()
    app.submit()
  })
  void app.start()
})
