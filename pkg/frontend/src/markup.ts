/** HTML escaping and best-effort math markup.
 *
 * Names and descriptions may carry TeX-ish fragments like `$T_0$`. We only
 * style balanced `$...$` spans; anything else renders as escaped raw text,
 * so markup failures can degrade but never hide content.
 */

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

const SUBSCRIPTS: Record<string, string> = {
  "0": "₀",
  "1": "₁",
  "2": "₂",
  "3": "₃",
  "4": "₄",
  "5": "₅",
  "6": "₆",
};

function styleTex(fragment: string): string {
  // `T_0` reads better as `T₀`; unknown subscripts keep the raw form
  const substituted = fragment.replace(
    /_([0-9])/g,
    (whole, digit: string) => SUBSCRIPTS[digit] ?? whole,
  );
  return `<em class="math">${escapeHtml(substituted)}</em>`;
}

export function renderMarkup(text: string): string {
  const parts: string[] = [];
  let rest = text;
  for (;;) {
    const open = rest.indexOf("$");
    if (open === -1) break;
    const close = rest.indexOf("$", open + 1);
    if (close === -1) return escapeHtml(text); // unbalanced: degrade to raw
    parts.push(escapeHtml(rest.slice(0, open)));
    parts.push(styleTex(rest.slice(open + 1, close)));
    rest = rest.slice(close + 1);
  }
  parts.push(escapeHtml(rest));
  return parts.join("");
}
