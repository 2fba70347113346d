/** Hash-based routes; every fact shown on a page comes from one API call. */

export type Route =
  | { page: "spaces" }
  | { page: "space"; uid: string }
  | { page: "properties" }
  | { page: "property"; uid: string }
  | { page: "theorems" }
  | { page: "theorem"; uid: string }
  | { page: "search"; q: string }
  | { page: "check" }
  | { page: "not-found"; hash: string };

const UID = /^[PST][0-9]{6}$/;

export function parseHash(hash: string): Route {
  const trimmed = hash.replace(/^#\/?/, "").replace(/\/$/, "");
  if (trimmed === "" || trimmed === "spaces") return { page: "spaces" };
  if (trimmed === "properties") return { page: "properties" };
  if (trimmed === "theorems") return { page: "theorems" };
  if (trimmed === "check") return { page: "check" };
  if (trimmed.startsWith("search")) {
    const query = trimmed.includes("?") ? trimmed.slice(trimmed.indexOf("?") + 1) : "";
    const params = new URLSearchParams(query);
    return { page: "search", q: params.get("q") ?? "" };
  }
  const parts = trimmed.split("/");
  if (parts.length === 2 && UID.test(parts[1])) {
    if (parts[0] === "spaces") return { page: "space", uid: parts[1] };
    if (parts[0] === "properties") return { page: "property", uid: parts[1] };
    if (parts[0] === "theorems") return { page: "theorem", uid: parts[1] };
  }
  return { page: "not-found", hash };
}

export function spaceHref(uid: string): string {
  return `#/spaces/${uid}`;
}

export function propertyHref(uid: string): string {
  return `#/properties/${uid}`;
}

export function theoremHref(uid: string): string {
  return `#/theorems/${uid}`;
}

export function searchHref(q: string): string {
  return `#/search?q=${encodeURIComponent(q)}`;
}
