/** Browser bootstrap: wire the hash router, the content pane, and the two
 * interactive affordances (proof expansion, checker form). */

import { ApiClient, ApiError } from "./api.js";
import { App } from "./app.js";
import { renderCheckerResult, renderError, renderProof } from "./render.js";

declare global {
  interface Window {
    __TRAITBASE_API__?: string;
  }
}

function parseLiteralList(text: string): Record<string, boolean> {
  const out: Record<string, boolean> = {};
  for (const part of text.split(",")) {
    const trimmed = part.trim();
    if (!trimmed) continue;
    const eq = trimmed.lastIndexOf("=");
    if (eq === -1) throw new Error(`expected name=true|false, got "${trimmed}"`);
    const name = trimmed.slice(0, eq).trim();
    const value = trimmed.slice(eq + 1).trim().toLowerCase();
    if (value !== "true" && value !== "false") {
      throw new Error(`expected true or false after "=", got "${value}"`);
    }
    out[name] = value === "true";
  }
  return out;
}

export function start(): void {
  const base = window.__TRAITBASE_API__ ?? "";
  const client = new ApiClient(base);
  const content = document.getElementById("content");
  if (!content) throw new Error("missing #content element");
  const app = new App(client, {
    setContent(html: string) {
      content.innerHTML = html;
    },
  });

  const rerender = () => void app.navigate(window.location.hash);
  window.addEventListener("hashchange", rerender);
  rerender();

  content.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    if (!target.classList.contains("show-proof")) return;
    const space = target.dataset.space;
    const property = target.dataset.property;
    if (!space || !property) return;
    const slot = document.getElementById(`proof-${space}-${property}`);
    if (!slot) return;
    client
      .getProof(space, property)
      .then((proof) => {
        slot.innerHTML = renderProof(proof.steps);
        target.remove();
      })
      .catch((error) => {
        slot.innerHTML = renderError(String(error));
      });
  });

  content.addEventListener("submit", (event) => {
    const form = event.target as HTMLFormElement;
    if (form.id === "search-form") {
      event.preventDefault();
      const q = (form.elements.namedItem("q") as HTMLInputElement).value;
      window.location.hash = `#/search?q=${encodeURIComponent(q)}`;
      return;
    }
    if (form.id !== "checker-form") return;
    event.preventDefault();
    const resultPane = document.getElementById("checker-result");
    if (!resultPane) return;
    try {
      const premises = parseLiteralList(
        (form.elements.namedItem("premises") as HTMLInputElement).value,
      );
      const conclusion = parseLiteralList(
        (form.elements.namedItem("conclusion") as HTMLInputElement).value,
      );
      client
        .checkTheorem(premises, conclusion)
        .then((verdict) => {
          resultPane.innerHTML = renderCheckerResult(verdict);
        })
        .catch((error) => {
          if (error instanceof ApiError && error.payload.location) {
            resultPane.innerHTML = renderError(
              `${error.message} (${error.payload.location})`,
            );
          } else {
            resultPane.innerHTML = renderError(String(error));
          }
        });
    } catch (error) {
      resultPane.innerHTML = renderError(String(error));
    }
  });
}

start();
