// Client-side mirror of the server's annotation CSV contract. The server is
// still the authority; this only saves contributors a round trip.

export const EXPECTED_HEADER = [
  "conference",
  "year",
  "role",
  "name",
  "affiliation",
  "affiliation2",
  "gender",
  "business",
  "country",
]

function firstLine(text: string): string {
  const newline = text.indexOf("\n")
  const line = newline === -1 ? text : text.slice(0, newline)
  return line.replace(/\r$/, "").replace(/^﻿/, "")
}

/** Returns null when the header is acceptable, otherwise a human-readable
 * message. Extra trailing columns are fine, same as on the server. */
export function validateAnnotationsHeader(text: string): string | null {
  if (!text.trim()) {
    return "The file is empty."
  }
  const cells = firstLine(text).split(",").map((c) => c.trim().toLowerCase())
  for (let i = 0; i < EXPECTED_HEADER.length; i++) {
    if (cells[i] !== EXPECTED_HEADER[i]) {
      return (
        `Header mismatch at column ${i + 1}: expected "${EXPECTED_HEADER[i]}", ` +
        `got "${cells[i] ?? ""}". The first line must start with: ` +
        EXPECTED_HEADER.join(",")
      )
    }
  }
  return null
}

/** Rough pre-flight row count (excludes the header and blank lines). */
export function countDataRows(text: string): number {
  return text
    .split("\n")
    .slice(1)
    .filter((line) => line.trim().length > 0).length
}
