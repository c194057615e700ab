import { vi } from "vitest"
import type {
  Distributions,
  DiversityReport,
  EditionContext,
  TimelinePoint,
} from "../src/types"

export const TOYCONF_REPORT: DiversityReport = {
  gdi: 0.9727652780181631,
  bdi: 0.7189015160714461,
  geodi: 0.15396379935132606,
  cdi: 0.6152101978136452,
  per_role: {
    keynote: { gender: 1.0, business: 0.6309297535714574, geography: 0.0 },
    organizer: {
      gender: 0.9182958340544894,
      business: 0.5793801642856949,
      geography: 0.20875488566366093,
    },
    author: {
      gender: 1.0,
      business: 0.946394630357186,
      geography: 0.2531365123903172,
    },
  },
  coverage: {
    keynote: { gender: 1.0, business: 1.0, geography: 1.0 },
    organizer: { gender: 1.0, business: 1.0, geography: 1.0 },
    author: { gender: 0.8, business: 0.8, geography: 1.0 },
  },
  missing_roles: { gender: [], business: [], geography: [] },
}

// keynote + organizer only: the author role is absent on purpose so tests can
// check the "no data" panels
export const TOYCONF_DISTRIBUTIONS: Distributions = {
  keynote: {
    gender: { woman: 50.0, man: 50.0 },
    business: { academia: 100.0 },
    countries: { US: 2 },
  },
  organizer: {
    gender: { woman: 33.33333333333333, man: 66.66666666666666 },
    business: { academia: 66.66666666666666, industry: 33.33333333333333 },
    countries: { DE: 1, GB: 1, US: 1 },
  },
}

export const TOYCONF_TIMELINE: TimelinePoint[] = [
  { year: 2019, cdi: 0.41 },
  { year: 2020, cdi: null },
  { year: 2021, cdi: 0.6152101978136452 },
]

export const TOYCONF_CONTEXT: EditionContext = {
  boxplot: { min: 0.41, q1: 0.46, median: 0.51, q3: 0.56, max: 0.62 },
  this: 0.6152101978136452,
}

export function jsonResponse(body: unknown, status = 200) {
  return {
    ok: status < 400,
    status,
    json: async () => body,
  } as Response
}

/** fetch stub that routes toyconf dashboard URLs to canned payloads. */
export function stubToyconfFetch() {
  return vi.fn(async (input: RequestInfo | URL) => {
    const url = String(input)
    if (url.includes("/api/editions/toyconf/2021/report")) {
      return jsonResponse(TOYCONF_REPORT)
    }
    if (url.includes("/api/editions/toyconf/2021/distributions")) {
      return jsonResponse(TOYCONF_DISTRIBUTIONS)
    }
    if (url.includes("/api/conferences/toyconf/timeline")) {
      return jsonResponse(TOYCONF_TIMELINE)
    }
    if (url.includes("/api/editions/toyconf/2021/context")) {
      return jsonResponse(TOYCONF_CONTEXT)
    }
    return jsonResponse({ error: "not-found", message: "not found" }, 404)
  })
}
