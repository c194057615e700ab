import type {
  ConferenceSummary,
  ContributionResult,
  Distributions,
  DiversityReport,
  EditionContext,
  TimelinePoint,
} from "./types"

export class ApiError extends Error {
  status: number
  code: string

  constructor(status: number, code: string, message: string) {
    super(message)
    this.status = status
    this.code = code
  }
}

async function getJson<T>(url: string): Promise<T> {
  let response: Response
  try {
    response = await fetch(url)
  } catch {
    throw new ApiError(0, "network", "Could not reach the API. Check your connection.")
  }
  const body = await response.json().catch(() => null)
  if (!response.ok) {
    const code = body?.error ?? "http-error"
    const message = body?.message ?? `Request failed with status ${response.status}`
    throw new ApiError(response.status, code, message)
  }
  return body as T
}

/** Thin typed client over the dashboard API; never computes an index itself. */
export class ApiClient {
  constructor(private baseUrl: string = "") {}

  searchConferences(query: string): Promise<ConferenceSummary[]> {
    const suffix = query ? `?q=${encodeURIComponent(query)}` : ""
    return getJson(`${this.baseUrl}/api/conferences${suffix}`)
  }

  report(slug: string, year: number): Promise<DiversityReport> {
    return getJson(`${this.baseUrl}/api/editions/${slug}/${year}/report`)
  }

  distributions(slug: string, year: number): Promise<Distributions> {
    return getJson(`${this.baseUrl}/api/editions/${slug}/${year}/distributions`)
  }

  timeline(slug: string): Promise<TimelinePoint[]> {
    return getJson(`${this.baseUrl}/api/conferences/${slug}/timeline`)
  }

  context(slug: string, year: number): Promise<EditionContext> {
    return getJson(`${this.baseUrl}/api/editions/${slug}/${year}/context`)
  }

  async contribute(
    slug: string,
    year: number,
    annotationsCsv: string,
    token: string,
  ): Promise<ContributionResult> {
    let response: Response
    try {
      response = await fetch(`${this.baseUrl}/api/contributions`, {
        method: "POST",
        headers: {
          "content-type": "application/json",
          "x-divmeter-token": token,
        },
        body: JSON.stringify({
          conference: slug,
          year: String(year),
          annotations_csv: annotationsCsv,
        }),
      })
    } catch {
      throw new ApiError(0, "network", "Upload failed before reaching the server.")
    }
    const body = await response.json().catch(() => null)
    if (!response.ok) {
      throw new ApiError(
        response.status,
        body?.error ?? "http-error",
        body?.message ?? `Upload failed with status ${response.status}`,
      )
    }
    return body as ContributionResult
  }
}
