/** Typed client for the corpus service. All inference happens server-side;
 * this client only fetches and decodes payloads. */

import type {
  ApiErrorPayload,
  CheckPayload,
  ListPayload,
  ProofPayload,
  PropertyPayload,
  SearchPayload,
  SpacePayload,
  TheoremPayload,
  TraitsPayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly payload: ApiErrorPayload,
  ) {
    super(payload.message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(
    path: string,
    init?: RequestInit,
    signal?: AbortSignal,
  ): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, { ...init, signal });
    const body = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, body as ApiErrorPayload);
    }
    return body as T;
  }

  listSpaces(signal?: AbortSignal): Promise<ListPayload<SpacePayload>> {
    return this.request("/spaces", undefined, signal);
  }

  getSpace(uid: string, signal?: AbortSignal): Promise<SpacePayload> {
    return this.request(`/spaces/${uid}`, undefined, signal);
  }

  getTraits(uid: string, signal?: AbortSignal): Promise<TraitsPayload> {
    return this.request(`/spaces/${uid}/traits`, undefined, signal);
  }

  getProof(space: string, property: string, signal?: AbortSignal): Promise<ProofPayload> {
    return this.request(`/spaces/${space}/traits/${property}/proof`, undefined, signal);
  }

  listProperties(signal?: AbortSignal): Promise<ListPayload<PropertyPayload>> {
    return this.request("/properties", undefined, signal);
  }

  getProperty(uid: string, signal?: AbortSignal): Promise<PropertyPayload> {
    return this.request(`/properties/${uid}`, undefined, signal);
  }

  listTheorems(signal?: AbortSignal): Promise<ListPayload<TheoremPayload>> {
    return this.request("/theorems", undefined, signal);
  }

  getTheorem(uid: string, signal?: AbortSignal): Promise<TheoremPayload> {
    return this.request(`/theorems/${uid}`, undefined, signal);
  }

  search(q: string, signal?: AbortSignal): Promise<SearchPayload> {
    return this.request(`/search?q=${encodeURIComponent(q)}`, undefined, signal);
  }

  checkTheorem(
    premises: Record<string, boolean>,
    conclusion: Record<string, boolean>,
    signal?: AbortSignal,
  ): Promise<CheckPayload> {
    return this.request(
      "/theorems/check",
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ if: premises, then: conclusion }),
      },
      signal,
    );
  }
}
