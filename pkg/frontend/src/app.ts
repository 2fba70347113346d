/** Route controller: one API round-trip per navigation, rendered to a view.
 *
 * Navigations cancel any in-flight requests from the previous route, so a
 * stale slow response can never overwrite the current page.
 */

import { ApiClient, ApiError } from "./api.js";
import {
  renderCheckerForm,
  renderError,
  renderNotFound,
  renderPropertyDetail,
  renderPropertyList,
  renderSearch,
  renderSearchError,
  renderSpaceDetail,
  renderSpaceList,
  renderTheoremDetail,
  renderTheoremList,
} from "./render.js";
import { parseHash, Route } from "./router.js";

export interface View {
  setContent(html: string): void;
}

export class App {
  private controller: AbortController | null = null;

  constructor(
    private readonly client: ApiClient,
    private readonly view: View,
  ) {}

  /** Abort whatever the previous route is still loading. */
  cancelInFlight(): void {
    if (this.controller) {
      this.controller.abort();
      this.controller = null;
    }
  }

  async navigate(hash: string): Promise<void> {
    this.cancelInFlight();
    const controller = new AbortController();
    this.controller = controller;
    const route = parseHash(hash);
    try {
      const html = await this.load(route, controller.signal);
      if (!controller.signal.aborted) {
        this.view.setContent(html);
      }
    } catch (error) {
      if (controller.signal.aborted) return; // superseded by a newer route
      if (error instanceof ApiError) {
        if (route.page === "search") {
          this.view.setContent(renderSearchError(error.payload));
          return;
        }
        this.view.setContent(renderError(`${error.status}: ${error.message}`));
        return;
      }
      this.view.setContent(renderError(`request failed: ${String(error)}`));
    }
  }

  private async load(route: Route, signal: AbortSignal): Promise<string> {
    switch (route.page) {
      case "spaces":
        return renderSpaceList(await this.client.listSpaces(signal));
      case "space": {
        const [space, traits] = await Promise.all([
          this.client.getSpace(route.uid, signal),
          this.client.getTraits(route.uid, signal),
        ]);
        return renderSpaceDetail(space, traits);
      }
      case "properties":
        return renderPropertyList(await this.client.listProperties(signal));
      case "property":
        return renderPropertyDetail(await this.client.getProperty(route.uid, signal));
      case "theorems":
        return renderTheoremList(await this.client.listTheorems(signal));
      case "theorem":
        return renderTheoremDetail(await this.client.getTheorem(route.uid, signal));
      case "search":
        if (route.q.trim() === "") {
          return renderSearchFormOnly();
        }
        return renderSearchPage(route.q, await this.client.search(route.q, signal));
      case "check":
        return renderCheckerForm("", "");
      case "not-found":
        return renderNotFound(route.hash);
    }
  }
}

function searchBox(q: string): string {
  return (
    `<form id="search-form">` +
    `<input name="q" value="${q.replace(/"/g, "&quot;")}" ` +
    `placeholder="Discrete + ~T0" size="40">` +
    `<button type="submit">Search</button></form>`
  );
}

function renderSearchFormOnly(): string {
  return `<h1>Search</h1>${searchBox("")}<p>Conjunctions of properties; prefix a term with ~ to negate it.</p>`;
}

function renderSearchPage(q: string, payload: Parameters<typeof renderSearch>[0]): string {
  return searchBox(q) + renderSearch(payload);
}
