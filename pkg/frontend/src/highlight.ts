/** Pure view models for result cards; keeps span arithmetic testable. */

import type { Hit } from './types.js'

export interface HitView {
  id: string
  title: string
  fieldLabel: string
  before: string
  match: string
  after: string
}

const FIELD_LABELS: Record<string, string> = {
  location_street: 'street',
  location_locality: 'locality',
  location_state: 'state',
  title: 'title',
  description: 'description',
}

/**
 * Split a hit's snippet at its highlight span. API spans count Unicode
 * scalars, not UTF-16 units, so slicing goes through a code-point array.
 * The match part is exactly the substring the API designated; the three
 * parts concatenate back to the snippet, so nothing is invented or lost.
 */
export function hitView(hit: Hit): HitView {
  const { start, end } = hit.snippet_span
  const scalars = Array.from(hit.snippet)
  if (start < 0 || end < start || end > scalars.length) {
    throw new RangeError(`snippet span [${start},${end}) outside snippet`)
  }
  return {
    id: hit.id,
    title: hit.title,
    fieldLabel: FIELD_LABELS[hit.matched_field] ?? hit.matched_field,
    before: scalars.slice(0, start).join(''),
    match: scalars.slice(start, end).join(''),
    after: scalars.slice(end).join(''),
  }
}
