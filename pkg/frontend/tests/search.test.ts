import { afterEach, describe, expect, it, vi } from "vitest"
import { ApiClient } from "../src/api"
import { attachSearch, debounce, renderResults } from "../src/search"
import { jsonResponse } from "./helpers"

afterEach(() => {
  vi.unstubAllGlobals()
  vi.useRealTimers()
})

describe("debounce", () => {
  it("collapses a burst into one trailing call", () => {
    vi.useFakeTimers()
    const fn = vi.fn()
    const debounced = debounce(fn, 100)
    debounced("a")
    debounced("b")
    debounced("c")
    vi.advanceTimersByTime(99)
    expect(fn).not.toHaveBeenCalled()
    vi.advanceTimersByTime(1)
    expect(fn).toHaveBeenCalledTimes(1)
    expect(fn).toHaveBeenCalledWith("c")
  })
})

describe("renderResults", () => {
  it("links each edition", () => {
    const html = renderResults([
      { slug: "toyconf", name: "TOYCONF", editions: [2020, 2021] },
    ])
    expect(html).toContain('data-edition="toyconf-2020"')
    expect(html).toContain('data-edition="toyconf-2021"')
    expect(html).toContain("#/toyconf/2021")
  })

  it("says when nothing matches", () => {
    expect(renderResults([])).toContain("No conferences match")
  })
})

describe("attachSearch", () => {
  it("queries with the input value and renders the list", async () => {
    const fetchSpy = vi.fn(async () =>
      jsonResponse([{ slug: "toyconf", name: "TOYCONF", editions: [2021] }]),
    )
    vi.stubGlobal("fetch", fetchSpy)
    document.body.innerHTML = `<input id="q"><div id="r"></div>`
    const input = document.getElementById("q") as HTMLInputElement
    const results = document.getElementById("r") as HTMLElement
    input.value = "toy"
    const run = attachSearch(input, results, new ApiClient(""), 0)
    await run()
    expect(String(fetchSpy.mock.calls[0][0])).toBe("/api/conferences?q=toy")
    expect(results.innerHTML).toContain("TOYCONF")
  })
})
