/** Payload shapes of the corpus service's JSON API. */

export interface LiteralPayload {
  property: string;
  value: boolean;
  name?: string;
}

export interface ProofStepPayload {
  derived: LiteralPayload;
  theorem: string;
  mode: string;
  supports: LiteralPayload[];
}

export interface CitationPayload {
  scheme: string;
  key: string;
  name?: string;
}

export interface PropertyPayload {
  uid: string;
  name: string;
  aliases: string[];
  refs: CitationPayload[];
  description: string;
}

export type SpacePayload = PropertyPayload;

export interface TheoremPayload {
  uid: string;
  if: Record<string, boolean>;
  then: Record<string, boolean>;
  premises: LiteralPayload[];
  conclusion: LiteralPayload;
  refs: CitationPayload[];
  description: string;
}

export interface ListPayload<T> {
  items: T[];
  total: number;
  offset: number;
  limit: number | null;
}

export interface TraitRowPayload {
  property: string;
  name: string;
  value: boolean;
  provenance: "asserted" | "derived";
  refs?: CitationPayload[];
}

export interface TraitsPayload {
  space: string;
  traits: TraitRowPayload[];
  unknown: { property: string; name: string }[];
}

export interface ProofPayload {
  space: string;
  property: string;
  value: boolean;
  steps: ProofStepPayload[];
}

export interface ConflictSidePayload {
  literal: LiteralPayload;
  origin: string;
  steps: ProofStepPayload[];
}

export interface ImpossibilityPayload {
  property: string;
  conflict: ConflictSidePayload[];
  theorems: string[];
  steps: ProofStepPayload[];
  query: LiteralPayload[];
}

export interface VerdictPayload {
  kind: "satisfies" | "refutes" | "unknown";
  refuting?: LiteralPayload;
  provenance?: string;
  steps?: ProofStepPayload[];
  undetermined?: string[];
}

export interface SearchPayload {
  query: string;
  literals: LiteralPayload[];
  matches: { uid: string; name: string }[];
  verdicts: Record<string, VerdictPayload>;
  impossibility: ImpossibilityPayload | null;
}

export interface CounterexamplePayload {
  space: string;
  name: string;
  refuting: LiteralPayload;
  provenance: string;
}

export interface UndecidedPayload {
  space: string;
  name: string;
  missing: string[];
}

export interface CheckPayload {
  verdict: "redundant" | "refuted" | "not_derivable" | "premises_inconsistent";
  proof?: ProofStepPayload[];
  theorems?: string[];
  refutation?: { proof: ProofStepPayload[]; theorems: string[] } | null;
  counterexamples?: CounterexamplePayload[];
  undecided?: UndecidedPayload[];
}

export interface ApiErrorPayload {
  code: string;
  message: string;
  location: string | null;
  suggestions?: string[];
}
