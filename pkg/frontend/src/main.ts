import { ApiClient } from "./api"
import { renderDashboard } from "./dashboard"
import { attachSearch } from "./search"
import { wireContributeForm } from "./contribute"

function route(client: ApiClient, view: HTMLElement): void {
  const match = /^#\/([^/]+)\/(\d{4})$/.exec(window.location.hash)
  if (match) {
    void renderDashboard(view, client, decodeURIComponent(match[1]), Number(match[2]))
  }
}

export function bootstrap(root: Document = document): void {
  const client = new ApiClient("")
  const view = root.getElementById("view")
  const search = root.getElementById("search") as HTMLInputElement | null
  const results = root.getElementById("results")
  const form = root.getElementById("contribute-form") as HTMLFormElement | null
  const formStatus = root.getElementById("contribute-status")

  if (search && results) {
    void attachSearch(search, results, client)()
  }
  if (form && formStatus) {
    wireContributeForm(form, formStatus, client)
  }
  if (view) {
    window.addEventListener("hashchange", () => route(client, view))
    route(client, view)
  }
}

if (typeof document !== "undefined" && document.getElementById("view")) {
  bootstrap()
}
