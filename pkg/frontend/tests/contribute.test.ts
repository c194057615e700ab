import { afterEach, describe, expect, it, vi } from "vitest"
import { ApiClient } from "../src/api"
import { renderOutcome, submitContribution, wireContributeForm } from "../src/contribute"
import { EXPECTED_HEADER } from "../src/csv"
import { jsonResponse } from "./helpers"

const GOOD_CSV =
  `${EXPECTED_HEADER.join(",")}\n` + "toyconf,2021,keynote,Ada Allen,MIT,,woman,academia,US\n"

const ACCEPTED = {
  edition_id: "toyconf-2021",
  ingest_report: {
    coverage: {},
    participations_per_role: { keynote: 1 },
    provider_failures: [],
    skipped_rows: [{ row: 3, reason: "unknown role 'speaker'" }],
    warnings: [],
  },
}

afterEach(() => {
  vi.unstubAllGlobals()
})

describe("submitContribution", () => {
  it("blocks a wrong header before any network call", async () => {
    const fetchSpy = vi.fn()
    vi.stubGlobal("fetch", fetchSpy)
    const outcome = await submitContribution(new ApiClient(""), {
      conference: "toyconf",
      year: "2021",
      annotationsCsv: "name,role,year\nAda,keynote,2021\n",
      token: "tok",
    })
    expect(outcome.kind).toBe("rejected")
    expect(fetchSpy).not.toHaveBeenCalled()
  })

  it("blocks missing fields locally too", async () => {
    const fetchSpy = vi.fn()
    vi.stubGlobal("fetch", fetchSpy)
    for (const fields of [
      { conference: "", year: "2021", annotationsCsv: GOOD_CSV, token: "t" },
      { conference: "toyconf", year: "21", annotationsCsv: GOOD_CSV, token: "t" },
      {
        conference: "toyconf",
        year: "2021",
        annotationsCsv: `${EXPECTED_HEADER.join(",")}\n`,
        token: "t",
      },
    ]) {
      const outcome = await submitContribution(new ApiClient(""), fields)
      expect(outcome.kind).toBe("rejected")
    }
    expect(fetchSpy).not.toHaveBeenCalled()
  })

  it("posts a valid file with the token header and returns the report", async () => {
    const fetchSpy = vi.fn(async () => jsonResponse(ACCEPTED))
    vi.stubGlobal("fetch", fetchSpy)
    const outcome = await submitContribution(new ApiClient(""), {
      conference: "ToyConf",
      year: "2021",
      annotationsCsv: GOOD_CSV,
      token: "tok",
    })
    expect(outcome.kind).toBe("accepted")
    expect(fetchSpy).toHaveBeenCalledTimes(1)
    const [url, init] = fetchSpy.mock.calls[0] as unknown as [string, RequestInit]
    expect(url).toBe("/api/contributions")
    expect((init.headers as Record<string, string>)["x-divmeter-token"]).toBe("tok")
    const body = JSON.parse(init.body as string)
    expect(body.conference).toBe("toyconf")
    expect(body.year).toBe("2021")
  })

  it("surfaces a 401 verbatim", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () =>
        jsonResponse({ error: "bad-token", message: "missing or invalid submission token" }, 401),
      ),
    )
    const outcome = await submitContribution(new ApiClient(""), {
      conference: "toyconf",
      year: "2021",
      annotationsCsv: GOOD_CSV,
      token: "wrong",
    })
    expect(outcome).toMatchObject({
      kind: "error",
      status: 401,
      code: "bad-token",
      message: "missing or invalid submission token",
    })
  })
})

describe("renderOutcome", () => {
  it("lists skipped rows from the ingest report", () => {
    const html = renderOutcome({ kind: "accepted", result: ACCEPTED })
    expect(html).toContain("toyconf-2021")
    expect(html).toContain("keynote: 1")
    expect(html).toContain("row 3")
    expect(html).toContain("unknown role")
  })

  it("labels a 401 as not authorized", () => {
    const html = renderOutcome({
      kind: "error",
      status: 401,
      code: "bad-token",
      message: "missing or invalid submission token",
    })
    expect(html).toContain("Not authorized")
  })
})

describe("wireContributeForm", () => {
  it("rejects a bad pasted CSV without touching the network", async () => {
    const fetchSpy = vi.fn()
    vi.stubGlobal("fetch", fetchSpy)
    document.body.innerHTML = `
      <form id="f">
        <input name="conference" value="toyconf">
        <input name="year" value="2021">
        <textarea name="annotations_csv">name,year\nAda,2021</textarea>
        <input name="token" value="tok">
      </form>
      <div id="status"></div>`
    const form = document.getElementById("f") as HTMLFormElement
    const status = document.getElementById("status") as HTMLElement
    wireContributeForm(form, status, new ApiClient(""))
    form.dispatchEvent(new Event("submit", { cancelable: true }))
    await vi.waitFor(() => {
      expect(status.querySelector('[data-outcome="rejected"]')).toBeTruthy()
    })
    expect(fetchSpy).not.toHaveBeenCalled()
  })
})
