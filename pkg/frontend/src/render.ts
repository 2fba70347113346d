/** Pure HTML renderers: payload in, markup out.
 *
 * Nothing here computes a mathematical fact; every value, provenance tag,
 * and proof step is taken verbatim from a service payload, and every
 * theorem or space uid becomes a link to its own page.
 */

import { escapeHtml, renderMarkup } from "./markup.js";
import { propertyHref, searchHref, spaceHref, theoremHref } from "./router.js";
import type {
  ApiErrorPayload,
  CheckPayload,
  CitationPayload,
  ListPayload,
  LiteralPayload,
  ProofStepPayload,
  PropertyPayload,
  SearchPayload,
  SpacePayload,
  TheoremPayload,
  TraitsPayload,
} from "./types.js";

export function renderLiteral(literal: LiteralPayload): string {
  const name = renderMarkup(literal.name ?? literal.property);
  const value = literal.value ? "true" : "false";
  const href = propertyHref(literal.property);
  return `<a class="literal" href="${href}">${name}</a> = <code>${value}</code>`;
}

export function renderProof(steps: ProofStepPayload[]): string {
  if (steps.length === 0) return "";
  const items = steps
    .map((step) => {
      const supports = step.supports.map(renderLiteral).join(" and ");
      const theorem = `<a class="theorem-link" href="${theoremHref(step.theorem)}">${step.theorem}</a>`;
      return (
        `<li>since ${supports}, ${theorem} <span class="mode">(${escapeHtml(step.mode)})</span>` +
        ` gives ${renderLiteral(step.derived)}</li>`
      );
    })
    .join("");
  return `<ol class="proof">${items}</ol>`;
}

function renderCitation(ref: CitationPayload): string {
  const label = ref.name ?? `${ref.scheme}:${ref.key}`;
  return `<span class="citation" title="${escapeHtml(ref.scheme)}:${escapeHtml(ref.key)}">${escapeHtml(label)}</span>`;
}

function renderRefs(refs: CitationPayload[]): string {
  if (refs.length === 0) return "";
  return `<p class="refs">References: ${refs.map(renderCitation).join("; ")}</p>`;
}

// --- entity pages -------------------------------------------------------------

export function renderSpaceList(payload: ListPayload<SpacePayload>): string {
  const rows = payload.items
    .map(
      (space) =>
        `<li><a href="${spaceHref(space.uid)}">${space.uid}</a> ${renderMarkup(space.name)}</li>`,
    )
    .join("");
  return `<h1>Spaces (${payload.total})</h1><ul class="entity-list">${rows}</ul>`;
}

export function renderPropertyList(payload: ListPayload<PropertyPayload>): string {
  const rows = payload.items
    .map(
      (property) =>
        `<li><a href="${propertyHref(property.uid)}">${property.uid}</a> ${renderMarkup(property.name)}</li>`,
    )
    .join("");
  return `<h1>Properties (${payload.total})</h1><ul class="entity-list">${rows}</ul>`;
}

export function renderPropertyDetail(payload: PropertyPayload): string {
  const aliases = payload.aliases.length
    ? `<p class="aliases">Also known as: ${payload.aliases.map(renderMarkup).join(", ")}</p>`
    : "";
  return (
    `<h1>${renderMarkup(payload.name)} <span class="uid">${payload.uid}</span></h1>` +
    aliases +
    renderRefs(payload.refs) +
    `<div class="description">${renderMarkup(payload.description)}</div>` +
    `<p><a href="${searchHref(payload.uid)}">Spaces with this property</a> · ` +
    `<a href="${searchHref("~" + payload.uid)}">Spaces without it</a></p>`
  );
}

export function renderTheoremList(payload: ListPayload<TheoremPayload>): string {
  const rows = payload.items
    .map((theorem) => {
      const left = theorem.premises.map(renderLiteral).join(" and ");
      return (
        `<li><a href="${theoremHref(theorem.uid)}">${theorem.uid}</a>: ` +
        `${left} ⇒ ${renderLiteral(theorem.conclusion)}</li>`
      );
    })
    .join("");
  return `<h1>Theorems (${payload.total})</h1><ul class="entity-list">${rows}</ul>`;
}

export function renderTheoremDetail(payload: TheoremPayload): string {
  const premises = payload.premises.map((p) => `<li>${renderLiteral(p)}</li>`).join("");
  return (
    `<h1>Theorem <span class="uid">${payload.uid}</span></h1>` +
    `<p>If</p><ul class="premises">${premises}</ul>` +
    `<p>then ${renderLiteral(payload.conclusion)}.</p>` +
    renderRefs(payload.refs) +
    `<div class="description">${renderMarkup(payload.description)}</div>`
  );
}

// --- space detail ---------------------------------------------------------------

export function renderSpaceDetail(space: SpacePayload, traits: TraitsPayload): string {
  const header =
    `<h1>${renderMarkup(space.name)} <span class="uid">${space.uid}</span></h1>` +
    renderRefs(space.refs) +
    `<div class="description">${renderMarkup(space.description)}</div>`;
  if (traits.traits.length === 0) {
    return (
      header +
      `<p class="empty-state">Nothing is known about this space yet: no trait is asserted ` +
      `and none can be derived.</p>` +
      renderOpenQuestions(traits)
    );
  }
  const rows = traits.traits
    .map((row) => {
      const provenance =
        row.provenance === "asserted"
          ? `<span class="badge asserted">asserted</span> ${(row.refs ?? []).map(renderCitation).join("; ")}`
          : `<span class="badge derived">derived</span> ` +
            `<button class="show-proof" data-space="${traits.space}" data-property="${row.property}">show proof</button>` +
            `<div class="proof-slot" id="proof-${traits.space}-${row.property}"></div>`;
      return (
        `<tr class="trait ${row.value ? "holds" : "fails"}">` +
        `<td><a href="${propertyHref(row.property)}">${renderMarkup(row.name)}</a></td>` +
        `<td><code>${row.value ? "true" : "false"}</code></td>` +
        `<td>${provenance}</td></tr>`
      );
    })
    .join("");
  const table =
    `<table class="traits"><thead><tr><th>Property</th><th>Value</th><th>Why</th></tr></thead>` +
    `<tbody>${rows}</tbody></table>`;
  return header + table + renderOpenQuestions(traits);
}

function renderOpenQuestions(traits: TraitsPayload): string {
  if (traits.unknown.length === 0) return "";
  const items = traits.unknown
    .map(
      (entry) =>
        `<li><a href="${propertyHref(entry.property)}">${renderMarkup(entry.name)}</a></li>`,
    )
    .join("");
  return (
    `<h2>Open questions</h2>` +
    `<p>Neither value is asserted or deducible for:</p>` +
    `<ul class="open-questions">${items}</ul>`
  );
}

// --- search ----------------------------------------------------------------------

export function renderSearch(payload: SearchPayload): string {
  const heading = `<h1>Search</h1>`;
  const matches =
    payload.matches.length === 0
      ? `<p class="empty-state">No spaces match <code>${escapeHtml(payload.query)}</code>.</p>`
      : `<ul class="results">` +
        payload.matches
          .map(
            (m) =>
              `<li class="result-card"><a href="${spaceHref(m.uid)}">${m.uid}</a> ${renderMarkup(m.name)}</li>`,
          )
          .join("") +
        `</ul>`;
  let impossibility = "";
  if (payload.impossibility) {
    impossibility =
      `<section class="impossibility"><h2>No such object can exist</h2>` +
      `<p>The theorems alone rule this query out:</p>` +
      renderProof(payload.impossibility.steps) +
      `</section>`;
  }
  return heading + matches + impossibility;
}

export function renderSearchError(error: ApiErrorPayload): string {
  const term = error.location ? `<code class="bad-term">${escapeHtml(error.location)}</code>` : "";
  const suggestions =
    error.suggestions && error.suggestions.length
      ? `<p class="suggestions">Did you mean ` +
        error.suggestions
          .map((s) => `<a href="${searchHref(s)}">${escapeHtml(s)}</a>`)
          .join(", ") +
        `?</p>`
      : "";
  return (
    `<div class="query-error"><p>${escapeHtml(error.message)} ${term}</p>${suggestions}</div>`
  );
}

// --- theorem checker ----------------------------------------------------------------

export function renderCheckerResult(payload: CheckPayload): string {
  if (payload.verdict === "redundant") {
    return (
      `<div class="verdict redundant"><h2>Redundant</h2>` +
      `<p>This already follows from the corpus:</p>` +
      renderProof(payload.proof ?? []) +
      `</div>`
    );
  }
  if (payload.verdict === "refuted") {
    const byTheory = payload.refutation
      ? `<p>The corpus derives the opposite conclusion:</p>` +
        renderProof(payload.refutation.proof)
      : "";
    const witnesses = (payload.counterexamples ?? [])
      .map(
        (w) =>
          `<li class="counterexample"><a href="${spaceHref(w.space)}">${w.space}</a> ` +
          `${renderMarkup(w.name)}: ${renderLiteral(w.refuting)} ` +
          `<span class="badge ${w.provenance}">${escapeHtml(w.provenance)}</span></li>`,
      )
      .join("");
    const witnessBlock = witnesses
      ? `<p>Counterexample spaces:</p><ul class="counterexamples">${witnesses}</ul>`
      : "";
    return `<div class="verdict refuted"><h2>Refuted</h2>${byTheory}${witnessBlock}</div>`;
  }
  if (payload.verdict === "premises_inconsistent") {
    return (
      `<div class="verdict inconsistent"><h2>Premises inconsistent</h2>` +
      `<p>The premises alone already contradict the corpus theorems.</p></div>`
    );
  }
  const undecided = (payload.undecided ?? [])
    .map(
      (entry) =>
        `<li><a href="${spaceHref(entry.space)}">${entry.space}</a> ${renderMarkup(entry.name)} ` +
        `<span class="missing">(unknown: ${entry.missing.map(escapeHtml).join(", ")})</span></li>`,
    )
    .join("");
  const undecidedBlock = undecided
    ? `<p>Spaces still undecided on the relevant properties — candidates to settle next:</p>` +
      `<ul class="undecided">${undecided}</ul>`
    : `<p>No space is close to witnessing either way.</p>`;
  return (
    `<div class="verdict not-derivable"><h2>Not derivable</h2>` +
    `<p>Nothing in the corpus proves or refutes this implication; it may be new.</p>` +
    undecidedBlock +
    `</div>`
  );
}

export function renderCheckerForm(premises: string, conclusion: string): string {
  return (
    `<h1>Theorem checker</h1>` +
    `<p>Is an implication already known, contradicted, or new?</p>` +
    `<form id="checker-form">` +
    `<label>If (comma-separated <code>name=true|false</code>)<br>` +
    `<input name="premises" value="${escapeHtml(premises)}" placeholder="Discrete=true"></label><br>` +
    `<label>Then<br>` +
    `<input name="conclusion" value="${escapeHtml(conclusion)}" placeholder="T0=true"></label><br>` +
    `<button type="submit">Check</button>` +
    `</form>` +
    `<div id="checker-result"></div>`
  );
}

export function renderError(message: string): string {
  return `<div class="error"><p>${escapeHtml(message)}</p></div>`;
}

export function renderNotFound(hash: string): string {
  return `<h1>Not found</h1><p>No page at <code>${escapeHtml(hash)}</code>.</p>`;
}
