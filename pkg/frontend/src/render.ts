// Pure HTML/SVG string builders. No fetch, no DOM reads: same inputs, same
// markup, which is what the snapshot tests rely on.

import type {
  Distributions,
  DiversityReport,
  EditionContext,
  FacetName,
  RoleName,
  TimelinePoint,
} from "./types"

export const ROLES: RoleName[] = ["keynote", "organizer", "author"]
export const FACETS: FacetName[] = ["gender", "business", "geography"]

const INDEX_TITLES: [keyof DiversityReport & string, string][] = [
  ["gdi", "Gender diversity"],
  ["bdi", "Business diversity"],
  ["geodi", "Geographic diversity"],
  ["cdi", "Conference diversity"],
]

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
}

/** Indices are shown at two decimals; an undefined index reads "n/a",
 * never "0.00". */
export function formatIndex(value: number | null | undefined): string {
  if (value === null || value === undefined) {
    return "n/a"
  }
  return value.toFixed(2)
}

function gauge(id: string, title: string, value: number | null): string {
  const text = formatIndex(value)
  const angle = value === null ? 0 : Math.round(value * 180)
  const cls = value === null ? "gauge gauge-empty" : "gauge"
  return (
    `<div class="${cls}" data-index="${id}">` +
    `<svg viewBox="0 0 100 60" role="img" aria-label="${escapeHtml(title)}: ${text}">` +
    `<path d="M 10 50 A 40 40 0 0 1 90 50" fill="none" stroke="#ddd" stroke-width="8"/>` +
    `<line x1="50" y1="50" x2="50" y2="14" stroke="#333" stroke-width="3" ` +
    `transform="rotate(${angle - 90} 50 50)"/>` +
    `</svg>` +
    `<span class="gauge-value">${text}</span>` +
    `<span class="gauge-title">${escapeHtml(title)}</span>` +
    `</div>`
  )
}

export function renderGauges(report: DiversityReport): string {
  const cells = INDEX_TITLES.map(([key, title]) =>
    gauge(key, title, report[key] as number | null),
  )
  return `<div class="gauges">${cells.join("")}</div>`
}

function percentBar(label: string, percent: number): string {
  const width = Math.max(0, Math.min(100, percent)).toFixed(1)
  return (
    `<div class="bar-row">` +
    `<span class="bar-label">${escapeHtml(label)}</span>` +
    `<span class="bar" style="width:${width}%"></span>` +
    `<span class="bar-value">${percent.toFixed(1)}%</span>` +
    `</div>`
  )
}

export function renderHistogram(
  title: string,
  percentages: Record<string, number> | undefined,
): string {
  if (!percentages || Object.keys(percentages).length === 0) {
    return `<div class="panel panel-empty"><h4>${escapeHtml(title)}</h4><p>no data</p></div>`
  }
  const rows = Object.keys(percentages)
    .sort()
    .map((label) => percentBar(label, percentages[label]))
  return `<div class="panel"><h4>${escapeHtml(title)}</h4>${rows.join("")}</div>`
}

export function renderCountryPanel(
  title: string,
  counts: Record<string, number> | undefined,
): string {
  if (!counts || Object.keys(counts).length === 0) {
    return `<div class="panel panel-empty"><h4>${escapeHtml(title)}</h4><p>no data</p></div>`
  }
  const max = Math.max(...Object.values(counts))
  const cells = Object.keys(counts)
    .sort()
    .map((code) => {
      const count = counts[code]
      const shade = max > 0 ? 0.25 + 0.75 * (count / max) : 0
      return (
        `<span class="country" data-country="${escapeHtml(code)}" ` +
        `style="opacity:${shade.toFixed(2)}" title="${escapeHtml(code)}: ${count}">` +
        `${escapeHtml(code)} (${count})</span>`
      )
    })
  const legend = `<p class="legend">darker = more participants (max ${max})</p>`
  return `<div class="panel panel-map"><h4>${escapeHtml(title)}</h4>${cells.join(" ")}${legend}</div>`
}

/** One panel per (role, facet) pair; roles absent from the distributions or
 * listed in missing_roles get an explicit "no data" panel rather than being
 * dropped from the grid. */
export function renderRoleGrid(distributions: Distributions): string {
  const panels: string[] = []
  for (const role of ROLES) {
    const dist = distributions[role]
    panels.push(renderHistogram(`${role} — gender`, dist?.gender))
    panels.push(renderHistogram(`${role} — business`, dist?.business))
    panels.push(renderCountryPanel(`${role} — countries`, dist?.countries))
  }
  return `<div class="role-grid">${panels.join("")}</div>`
}

/** CDI over the years, with gap years drawn as labelled gaps: the polyline
 * breaks, nothing is interpolated across a null. */
export function renderTimeline(points: TimelinePoint[]): string {
  if (points.length === 0) {
    return `<div class="panel panel-empty"><h4>Timeline</h4><p>no data</p></div>`
  }
  const years = points.map((p) => p.year)
  const minYear = Math.min(...years)
  const span = Math.max(Math.max(...years) - minYear, 1)
  const x = (year: number) => 10 + (80 * (year - minYear)) / span
  const y = (cdi: number) => 55 - 50 * cdi

  const segments: string[] = []
  let run: string[] = []
  const flush = () => {
    if (run.length > 1) {
      segments.push(
        `<polyline points="${run.join(" ")}" fill="none" stroke="#36c" stroke-width="1.5"/>`,
      )
    }
    run = []
  }
  const marks: string[] = []
  for (const point of points) {
    if (point.cdi === null) {
      flush()
      marks.push(
        `<text x="${x(point.year).toFixed(2)}" y="58" class="gap-year" ` +
        `data-gap-year="${point.year}" font-size="4" text-anchor="middle">` +
        `${point.year}: no data</text>`,
      )
      continue
    }
    const px = x(point.year).toFixed(2)
    const py = y(point.cdi).toFixed(2)
    run.push(`${px},${py}`)
    marks.push(
      `<circle cx="${px}" cy="${py}" r="1.5" data-year="${point.year}">` +
      `<title>${point.year}: ${formatIndex(point.cdi)}</title></circle>`,
    )
  }
  flush()
  return (
    `<div class="panel panel-timeline"><h4>Timeline</h4>` +
    `<svg viewBox="0 0 100 62">${segments.join("")}${marks.join("")}</svg></div>`
  )
}

export function renderContext(context: EditionContext | null): string {
  if (!context) {
    return `<div class="panel panel-empty"><h4>Comparison</h4><p>no data</p></div>`
  }
  const { min, q1, median, q3, max } = context.boxplot
  const x = (v: number) => (10 + 80 * v).toFixed(2)
  const marker =
    context.this === null
      ? ""
      : `<line x1="${x(context.this)}" y1="2" x2="${x(context.this)}" y2="28" ` +
        `stroke="#c33" stroke-width="1.5" data-this="${formatIndex(context.this)}"/>`
  return (
    `<div class="panel panel-context"><h4>Comparison</h4>` +
    `<svg viewBox="0 0 100 30">` +
    `<line x1="${x(min)}" y1="15" x2="${x(q1)}" y2="15" stroke="#888"/>` +
    `<rect x="${x(q1)}" y="8" width="${(80 * (q3 - q1)).toFixed(2)}" height="14" ` +
    `fill="#cde" stroke="#888"/>` +
    `<line x1="${x(median)}" y1="8" x2="${x(median)}" y2="22" stroke="#333" stroke-width="1.5"/>` +
    `<line x1="${x(q3)}" y1="15" x2="${x(max)}" y2="15" stroke="#888"/>` +
    marker +
    `</svg>` +
    `<p>This edition: ${formatIndex(context.this)} · ` +
    `all editions median ${formatIndex(median)}</p></div>`
  )
}

export function renderError(message: string): string {
  return `<div class="panel panel-error"><p>${escapeHtml(message)}</p></div>`
}

export function renderLoading(): string {
  return `<div class="panel panel-loading"><p>loading…</p></div>`
}
