export type RoleName = "keynote" | "organizer" | "author"
export type FacetName = "gender" | "business" | "geography"

export interface DiversityReport {
  gdi: number | null
  bdi: number | null
  geodi: number | null
  cdi: number | null
  per_role: Partial<Record<RoleName, Partial<Record<FacetName, number>>>>
  coverage: Partial<Record<RoleName, Partial<Record<FacetName, number>>>>
  missing_roles: Record<FacetName, RoleName[]>
}

export interface RoleDistributions {
  gender?: Record<string, number>
  business?: Record<string, number>
  countries?: Record<string, number>
}

export type Distributions = Partial<Record<RoleName, RoleDistributions>>

export interface TimelinePoint {
  year: number
  cdi: number | null
}

export interface BoxplotStats {
  min: number
  q1: number
  median: number
  q3: number
  max: number
}

export interface EditionContext {
  boxplot: BoxplotStats
  this: number | null
}

export interface ConferenceSummary {
  slug: string
  name: string
  editions: number[]
}

export interface IngestReportSummary {
  coverage: Record<string, Record<string, number>>
  participations_per_role: Record<string, number>
  provider_failures: string[]
  skipped_rows: { row: number; reason: string }[]
  warnings: string[]
}

export interface ContributionResult {
  edition_id: string
  ingest_report: IngestReportSummary
}

export interface ApiErrorBody {
  error: string
  message: string
  details?: Record<string, unknown>
}
