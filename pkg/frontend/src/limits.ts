// Client-side mirror of the server input limits. The server stays
// authoritative; these checks only block obviously invalid submissions.

import type { FieldError, SpecDoc } from "./types";

export const MAX_SHORT_WORDS = 25;
export const MAX_DETAILED_WORDS = 500;
export const MIN_USE_CASES = 1;
export const MAX_USE_CASES = 20;

export function wordCount(text: string): number {
  const trimmed = text.trim();
  return trimmed === "" ? 0 : trimmed.split(/\s+/).length;
}

export function validateSpec(spec: SpecDoc): FieldError[] {
  const errors: FieldError[] = [];

  const shortWords = wordCount(spec.short_description);
  if (shortWords > MAX_SHORT_WORDS) {
    errors.push({
      field: "short_description",
      message: `exceeds ${MAX_SHORT_WORDS} words (got ${shortWords})`,
    });
  }
  const detailedWords = wordCount(spec.detailed_description);
  if (detailedWords > MAX_DETAILED_WORDS) {
    errors.push({
      field: "detailed_description",
      message: `exceeds ${MAX_DETAILED_WORDS} words (got ${detailedWords})`,
    });
  }

  if (spec.use_cases.length < MIN_USE_CASES || spec.use_cases.length > MAX_USE_CASES) {
    errors.push({
      field: "use_cases",
      message: `count must be between ${MIN_USE_CASES} and ${MAX_USE_CASES} (got ${spec.use_cases.length})`,
    });
  }

  const seen = new Set<string>();
  spec.use_cases.forEach((uc, i) => {
    if (uc.id.trim() === "") {
      errors.push({ field: `use_cases[${i}].id`, message: "must be non-empty" });
    } else if (seen.has(uc.id)) {
      errors.push({ field: `use_cases[${i}].id`, message: `duplicate id "${uc.id}"` });
    }
    seen.add(uc.id);
    if (uc.objective.trim() === "") {
      errors.push({ field: `use_cases[${i}].objective`, message: "must be non-empty" });
    }
    const score = uc.importance_score;
    if (score !== null && (score < 0 || score > 1 || Number.isNaN(score))) {
      errors.push({
        field: `use_cases[${i}].importance_score`,
        message: `must lie between 0 and 1 (got ${score})`,
      });
    }
  });

  if (spec.software_type.trim() === "") {
    errors.push({ field: "software_type", message: "must be selected" });
  }

  return errors;
}

export function canAddUseCase(spec: SpecDoc): boolean {
  return spec.use_cases.length < MAX_USE_CASES;
}

export function canRemoveUseCase(spec: SpecDoc): boolean {
  return spec.use_cases.length > MIN_USE_CASES;
}
