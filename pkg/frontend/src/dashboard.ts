import { ApiClient, ApiError } from "./api"
import {
  renderContext,
  renderError,
  renderGauges,
  renderLoading,
  renderRoleGrid,
  renderTimeline,
} from "./render"

function panelHost(container: HTMLElement, name: string): HTMLElement {
  const host = document.createElement("section")
  host.dataset.panel = name
  host.innerHTML = renderLoading()
  container.appendChild(host)
  return host
}

async function fill(
  host: HTMLElement,
  load: () => Promise<string>,
): Promise<void> {
  try {
    host.innerHTML = await load()
  } catch (err) {
    const message =
      err instanceof ApiError ? err.message : "Something went wrong loading this panel."
    host.innerHTML = renderError(message)
  }
}

/** Builds the four dashboard panels and fetches each independently, so one
 * failing endpoint degrades to an inline notice instead of blanking the page. */
export function renderDashboard(
  container: HTMLElement,
  client: ApiClient,
  slug: string,
  year: number,
): Promise<void> {
  container.innerHTML = ""
  const heading = document.createElement("h2")
  heading.textContent = `${slug.toUpperCase()} ${year}`
  container.appendChild(heading)

  const gauges = panelHost(container, "gauges")
  const grid = panelHost(container, "distributions")
  const timeline = panelHost(container, "timeline")
  const context = panelHost(container, "context")

  return Promise.all([
    fill(gauges, async () => renderGauges(await client.report(slug, year))),
    fill(grid, async () => renderRoleGrid(await client.distributions(slug, year))),
    fill(timeline, async () => renderTimeline(await client.timeline(slug))),
    fill(context, async () => {
      try {
        return renderContext(await client.context(slug, year))
      } catch (err) {
        if (err instanceof ApiError && err.code === "no-comparable-data") {
          return renderContext(null)
        }
        throw err
      }
    }),
  ]).then(() => undefined)
}
