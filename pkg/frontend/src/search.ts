import { ApiClient, ApiError } from "./api"
import type { ConferenceSummary } from "./types"
import { escapeHtml, renderError } from "./render"

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs: number,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined
  return (...args: A) => {
    if (timer !== undefined) {
      clearTimeout(timer)
    }
    timer = setTimeout(() => fn(...args), waitMs)
  }
}

export function renderResults(conferences: ConferenceSummary[]): string {
  if (conferences.length === 0) {
    return `<p class="no-results">No conferences match.</p>`
  }
  const items = conferences.map((c) => {
    const years = c.editions
      .map(
        (year) =>
          `<a href="#/${encodeURIComponent(c.slug)}/${year}" data-edition="${c.slug}-${year}">${year}</a>`,
      )
      .join(" ")
    return `<li><strong>${escapeHtml(c.name)}</strong> ${years}</li>`
  })
  return `<ul class="conference-list">${items.join("")}</ul>`
}

export function attachSearch(
  input: HTMLInputElement,
  results: HTMLElement,
  client: ApiClient,
  waitMs = 200,
): () => Promise<void> {
  let generation = 0
  const run = async () => {
    const current = ++generation
    try {
      const found = await client.searchConferences(input.value.trim())
      if (current === generation) {
        results.innerHTML = renderResults(found)
      }
    } catch (err) {
      if (current === generation) {
        results.innerHTML = renderError(
          err instanceof ApiError ? err.message : "Search failed.",
        )
      }
    }
  }
  input.addEventListener("input", debounce(run, waitMs))
  return run
}
