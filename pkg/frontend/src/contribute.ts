import { ApiClient, ApiError } from "./api"
import { countDataRows, validateAnnotationsHeader } from "./csv"
import type { ContributionResult } from "./types"
import { escapeHtml } from "./render"

export interface ContributionFields {
  conference: string
  year: string
  annotationsCsv: string
  token: string
}

export type SubmitOutcome =
  | { kind: "rejected"; message: string }
  | { kind: "error"; status: number; code: string; message: string }
  | { kind: "accepted"; result: ContributionResult }

/** Validates everything locally first; the network is only touched once the
 * header and the basic fields pass. */
export async function submitContribution(
  client: ApiClient,
  fields: ContributionFields,
): Promise<SubmitOutcome> {
  const slug = fields.conference.trim().toLowerCase()
  if (!slug) {
    return { kind: "rejected", message: "Conference slug is required." }
  }
  if (!/^\d{4}$/.test(fields.year.trim())) {
    return { kind: "rejected", message: "Year must be a four-digit number." }
  }
  const headerProblem = validateAnnotationsHeader(fields.annotationsCsv)
  if (headerProblem !== null) {
    return { kind: "rejected", message: headerProblem }
  }
  if (countDataRows(fields.annotationsCsv) === 0) {
    return { kind: "rejected", message: "The file has a header but no data rows." }
  }
  try {
    const result = await client.contribute(
      slug,
      Number(fields.year.trim()),
      fields.annotationsCsv,
      fields.token,
    )
    return { kind: "accepted", result }
  } catch (err) {
    if (err instanceof ApiError) {
      return { kind: "error", status: err.status, code: err.code, message: err.message }
    }
    throw err
  }
}

export function renderOutcome(outcome: SubmitOutcome): string {
  if (outcome.kind === "rejected") {
    return `<p class="form-error" data-outcome="rejected">${escapeHtml(outcome.message)}</p>`
  }
  if (outcome.kind === "error") {
    const label = outcome.status === 401 ? "Not authorized" : "Submission failed"
    return (
      `<p class="form-error" data-outcome="error">${label}: ` +
      `${escapeHtml(outcome.message)}</p>`
    )
  }
  const report = outcome.result.ingest_report
  const roles = Object.entries(report.participations_per_role)
    .map(([role, count]) => `${escapeHtml(role)}: ${count}`)
    .join(", ")
  const skipped = report.skipped_rows
    .map((s) => `<li>row ${s.row}: ${escapeHtml(s.reason)}</li>`)
    .join("")
  const warnings = report.warnings
    .map((w) => `<li>${escapeHtml(w)}</li>`)
    .join("")
  return (
    `<div class="form-success" data-outcome="accepted">` +
    `<p>Accepted as ${escapeHtml(outcome.result.edition_id)} (${roles || "no participations"}).</p>` +
    (skipped ? `<p>Skipped rows:</p><ul class="skipped">${skipped}</ul>` : "") +
    (warnings ? `<p>Warnings:</p><ul class="warnings">${warnings}</ul>` : "") +
    `</div>`
  )
}

export function wireContributeForm(
  form: HTMLFormElement,
  status: HTMLElement,
  client: ApiClient,
): void {
  form.addEventListener("submit", async (event) => {
    event.preventDefault()
    const value = (name: string) =>
      (form.elements.namedItem(name) as HTMLInputElement | HTMLTextAreaElement | null)
        ?.value ?? ""
    const fileInput = form.elements.namedItem("annotations") as HTMLInputElement | null
    let csv = value("annotations_csv")
    const file = fileInput?.files?.[0]
    if (file) {
      csv = await file.text()
    }
    status.innerHTML = "<p>submitting…</p>"
    const outcome = await submitContribution(client, {
      conference: value("conference"),
      year: value("year"),
      annotationsCsv: csv,
      token: value("token"),
    })
    status.innerHTML = renderOutcome(outcome)
  })
}
