// Single-page UI: requirements form, taxonomy picker, NFR conflict dialog,
// ranked results with per-term trace bars and what-if diffing.

import { ApiClient, ApiError } from "./api";
import {
  MAX_DETAILED_WORDS,
  MAX_SHORT_WORDS,
  MAX_USE_CASES,
  canAddUseCase,
  canRemoveUseCase,
  wordCount,
} from "./limits";
import { ResultViewState, SpecFormState } from "./state";
import type { RecommendationSet, TaxonomyNode, UseCaseDoc } from "./types";
import { emptySpec, emptyUseCase } from "./types";

const NFR_SUGGESTIONS = [
  "performance",
  "security",
  "usability",
  "reliability",
  "maintainability",
  "portability",
];

type Handler = () => void;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "class") node.className = value;
    else node.setAttribute(key, value);
  }
  node.append(...children);
  return node;
}

export interface AppHandle {
  form: SpecFormState;
  results: ResultViewState;
  projectId(): string | null;
  /** resolves when no request is in flight */
  whenIdle(): Promise<void>;
}

export function mountApp(root: HTMLElement, client: ApiClient): AppHandle {
  const form = new SpecFormState(emptySpec());
  const results = new ResultViewState();
  let projectId: string | null = null;
  let runToken = 0;
  let pending: Promise<void> = Promise.resolve();
  let status = "";

  // ---- skeleton -----------------------------------------------------------

  root.innerHTML = "";
  const errorsBox = el("ul", { class: "errors", "data-testid": "errors" });
  const statusBox = el("div", { class: "status", "data-testid": "status" });
  const formBox = el("div", { class: "spec-form" });
  const dialogBox = el("div", { class: "dialog-host" });
  const resultsBox = el("section", { class: "results", "data-testid": "results" });

  root.append(
    el("header", {}, el("h1", {}, "Pattern Recommender"), statusBox),
    el("main", {}, el("section", { class: "editor" }, errorsBox, formBox), resultsBox),
    dialogBox,
  );

  // ---- helpers ------------------------------------------------------------

  function track(work: Promise<void>): void {
    pending = pending.then(() => work).catch(() => undefined);
  }

  function setStatus(text: string): void {
    status = text;
    statusBox.textContent = text;
  }

  function renderErrors(): void {
    errorsBox.innerHTML = "";
    for (const err of form.allErrors()) {
      errorsBox.append(
        el("li", { class: "error", "data-field": err.field }, `${err.field}: ${err.message}`),
      );
    }
  }

  function input(
    value: string,
    onChange: (value: string) => void,
    attrs: Record<string, string> = {},
  ): HTMLInputElement {
    const node = el("input", { type: "text", ...attrs });
    node.value = value;
    node.addEventListener("input", () => {
      onChange(node.value);
      renderErrors();
    });
    return node;
  }

  function textarea(
    value: string,
    onChange: (value: string) => void,
    attrs: Record<string, string> = {},
  ): HTMLTextAreaElement {
    const node = el("textarea", attrs);
    node.value = value;
    node.addEventListener("input", () => {
      onChange(node.value);
      renderErrors();
    });
    return node;
  }

  // ---- taxonomy picker ----------------------------------------------------

  const taxonomySelect = el("select", { "data-testid": "taxonomy" });
  taxonomySelect.append(el("option", { value: "" }, "— select software type —"));
  taxonomySelect.addEventListener("change", () => {
    form.spec.software_type = taxonomySelect.value;
    form.touch("software_type");
    renderErrors();
  });

  function fillTaxonomy(nodes: TaxonomyNode[], depth: number): void {
    for (const node of nodes) {
      const indent = "  ".repeat(depth);
      const option = el("option", { value: node.path }, `${indent}${node.label}`);
      if (node.children && node.children.length > 0) option.classList.add("branch");
      taxonomySelect.append(option);
      if (node.children) fillTaxonomy(node.children, depth + 1);
    }
  }

  track(
    client
      .getTaxonomy()
      .then((tax) => fillTaxonomy(tax.nodes, 0))
      .catch(() => setStatus("cannot reach the service")),
  );

  // ---- use-case editor ----------------------------------------------------

  const useCasesBox = el("div", { class: "use-cases", "data-testid": "use-cases" });
  const addButton = el("button", { type: "button", "data-testid": "add-use-case" }, "Add use case");
  const useCaseNote = el("span", { class: "note", "data-testid": "use-case-note" });

  addButton.addEventListener("click", () => {
    if (!canAddUseCase(form.spec)) {
      useCaseNote.textContent = `at most ${MAX_USE_CASES} use cases`;
      return;
    }
    const next = form.spec.use_cases.length + 1;
    form.spec.use_cases.push(emptyUseCase(`uc-${String(next).padStart(2, "0")}`));
    form.touch("use_cases");
    renderUseCases();
    renderErrors();
  });

  type UcTextField = Exclude<keyof UseCaseDoc, "importance_score">;
  const UC_TEXT_FIELDS: [UcTextField, string][] = [
    ["id", "Id"],
    ["name", "Name"],
    ["objective", "Objective"],
    ["actors", "Actors"],
    ["pre_conditions", "Pre-conditions"],
    ["post_conditions", "Post-conditions"],
    ["constraints", "Constraints"],
    ["normal_flow", "Normal flow"],
  ];

  function renderUseCases(): void {
    useCasesBox.innerHTML = "";
    useCaseNote.textContent = "";
    form.spec.use_cases.forEach((uc, index) => {
      const card = el("fieldset", { class: "use-case", "data-testid": `use-case-${index}` });
      card.append(el("legend", {}, `Use case ${index + 1}`));
      for (const [field, label] of UC_TEXT_FIELDS) {
        const node = input(
          uc[field],
          (value) => {
            uc[field] = value;
            form.touch(`use_cases[${index}].${field}`);
          },
          { "data-testid": `uc-${index}-${field}` },
        );
        card.append(el("label", {}, `${label} `, node));
      }
      const score = el("input", {
        type: "number",
        min: "0",
        max: "1",
        step: "0.05",
        "data-testid": `uc-${index}-importance`,
      });
      score.value = uc.importance_score === null ? "1" : String(uc.importance_score);
      score.addEventListener("input", () => {
        uc.importance_score = score.value === "" ? null : Number(score.value);
        form.touch(`use_cases[${index}].importance_score`);
        renderErrors();
      });
      card.append(el("label", {}, "Importance (0-1) ", score));

      const remove = el(
        "button",
        { type: "button", "data-testid": `uc-${index}-remove` },
        "Remove",
      );
      remove.addEventListener("click", () => {
        if (!canRemoveUseCase(form.spec)) {
          useCaseNote.textContent = "at least one use case is required";
          renderErrors();
          return;
        }
        form.spec.use_cases.splice(index, 1);
        form.touch("use_cases");
        renderUseCases();
        renderErrors();
      });
      card.append(remove);
      useCasesBox.append(card);
    });
  }

  // ---- NFR editor ---------------------------------------------------------

  const nfrList = el("ul", { class: "nfrs", "data-testid": "nfrs" });
  const nfrInput = el("input", {
    type: "text",
    list: "nfr-suggestions",
    placeholder: "add an NFR",
    "data-testid": "nfr-input",
  });
  const nfrDatalist = el("datalist", { id: "nfr-suggestions" });
  for (const name of NFR_SUGGESTIONS) nfrDatalist.append(el("option", { value: name }));
  const nfrAdd = el("button", { type: "button", "data-testid": "nfr-add" }, "Add NFR");

  nfrAdd.addEventListener("click", () => {
    const name = nfrInput.value.trim().toLowerCase();
    if (name === "" || form.spec.nfrs.some((n) => n.name === name)) return;
    form.spec.nfrs.push({ name, priority: null, free_text: "" });
    form.touch("nfrs");
    nfrInput.value = "";
    renderNfrs();
  });

  function renderNfrs(): void {
    nfrList.innerHTML = "";
    form.spec.nfrs.forEach((nfr, index) => {
      const remove = el("button", { type: "button", "data-testid": `nfr-${index}-remove` }, "×");
      remove.addEventListener("click", () => {
        form.spec.nfrs.splice(index, 1);
        form.touch("nfrs");
        renderNfrs();
      });
      nfrList.append(el("li", { "data-testid": `nfr-${index}` }, nfr.name, remove));
    });
  }

  // ---- form ---------------------------------------------------------------

  const shortCount = el("span", { class: "count", "data-testid": "short-count" });
  const detailedCount = el("span", { class: "count", "data-testid": "detailed-count" });

  const shortInput = textarea(
    "",
    (value) => {
      form.spec.short_description = value;
      form.touch("short_description");
      shortCount.textContent = `${wordCount(value)}/${MAX_SHORT_WORDS} words`;
    },
    { "data-testid": "short-description", rows: "2" },
  );
  const detailedInput = textarea(
    "",
    (value) => {
      form.spec.detailed_description = value;
      form.touch("detailed_description");
      detailedCount.textContent = `${wordCount(value)}/${MAX_DETAILED_WORDS} words`;
    },
    { "data-testid": "detailed-description", rows: "6" },
  );

  const createButton = el("button", { type: "button", "data-testid": "create-project" }, "Create project");
  const saveButton = el("button", { type: "button", "data-testid": "save-spec" }, "Save spec");
  const recommendButton = el("button", { type: "button", "data-testid": "recommend" }, "Recommend");

  formBox.append(
    el("label", {}, "Short description ", shortCount, shortInput),
    el("label", {}, "Detailed description ", detailedCount, detailedInput),
    el("label", {}, "Software type ", taxonomySelect),
    el("div", { class: "nfr-editor" }, nfrInput, nfrDatalist, nfrAdd, nfrList),
    el("div", { class: "uc-editor" }, addButton, useCaseNote, useCasesBox),
    el("div", { class: "actions" }, createButton, saveButton, recommendButton),
  );
  renderUseCases();

  // ---- submission flows ---------------------------------------------------

  function guardSubmit(): boolean {
    form.serverErrors = [];
    renderErrors();
    if (!form.canSubmit()) {
      setStatus("fix the highlighted fields first");
      return false;
    }
    return true;
  }

  function handleApiError(err: unknown): void {
    if (err instanceof ApiError) {
      form.serverErrors = err.fieldErrors();
      setStatus(`request failed (${err.status})`);
    } else {
      setStatus(`request failed: ${String(err)}`);
    }
    renderErrors();
  }

  async function createProject(): Promise<void> {
    if (!guardSubmit()) return;
    try {
      const record = await client.createProject(form.spec);
      projectId = record.id;
      form.clearDirty();
      setStatus(`project ${record.id} created`);
    } catch (err) {
      handleApiError(err);
    }
  }

  async function saveSpec(): Promise<void> {
    if (!projectId) {
      setStatus("create a project first");
      return;
    }
    if (!guardSubmit()) return;
    try {
      await client.updateSpec(projectId, form.spec);
      form.clearDirty();
      setStatus("spec saved");
    } catch (err) {
      handleApiError(err);
    }
  }

  async function runRecommend(priorities?: Record<string, number>): Promise<void> {
    if (!projectId) {
      setStatus("create a project first");
      return;
    }
    if (!guardSubmit()) return;
    const token = ++runToken;
    setStatus("scoring…");
    try {
      if (form.isDirty()) {
        await client.updateSpec(projectId, form.spec);
        form.clearDirty();
      }
      const result = await client.recommend(projectId, priorities);
      if (token !== runToken) return; // a newer run superseded this one
      results.record(projectId, result);
      renderResults();
      setStatus("done");
    } catch (err) {
      if (token !== runToken) return;
      if (err instanceof ApiError && err.status === 409) {
        openConflictDialog(err.conflictPairs());
        setStatus("NFR conflicts need priorities");
      } else {
        handleApiError(err);
      }
    }
  }

  createButton.addEventListener("click", () => track(createProject()));
  saveButton.addEventListener("click", () => track(saveSpec()));
  recommendButton.addEventListener("click", () => track(runRecommend()));

  // ---- NFR conflict dialog --------------------------------------------------

  function openConflictDialog(pairs: [string, string][]): void {
    dialogBox.innerHTML = "";
    const names = [...new Set(pairs.flat())].sort();
    const dialog = el("div", { class: "conflict-dialog", "data-testid": "conflict-dialog" });
    dialog.append(
      el("h2", {}, "Conflicting NFRs"),
      el(
        "p",
        {},
        pairs.map((p) => p.join(" ↔ ")).join(", ") +
          " — assign distinct priorities (1 = most important).",
      ),
    );
    const fields = new Map<string, HTMLInputElement>();
    for (const name of names) {
      const field = el("input", {
        type: "number",
        min: "1",
        step: "1",
        "data-testid": `priority-${name}`,
      });
      fields.set(name, field);
      dialog.append(el("label", {}, `${name} `, field));
    }
    const note = el("p", { class: "error", "data-testid": "dialog-note" });
    const submit = el("button", { type: "button", "data-testid": "dialog-submit" }, "Resubmit");
    submit.addEventListener("click", () => {
      const priorities: Record<string, number> = {};
      for (const [name, field] of fields) {
        if (field.value === "") {
          note.textContent = `priority missing for ${name}`;
          return;
        }
        priorities[name] = Number(field.value);
      }
      const values = Object.values(priorities);
      if (new Set(values).size !== values.length) {
        note.textContent = "priorities must be distinct";
        return;
      }
      dialogBox.innerHTML = "";
      track(runRecommend(priorities));
    });
    const cancel = el("button", { type: "button", "data-testid": "dialog-cancel" }, "Cancel");
    cancel.addEventListener("click", () => {
      dialogBox.innerHTML = "";
    });
    dialog.append(note, submit, cancel);
    dialogBox.append(dialog);
  }

  // ---- results view ---------------------------------------------------------

  function sentimentChip(rec: { sentiment_label: string; evidence_count: number }): HTMLElement {
    const chip = el(
      "span",
      { class: `sentiment ${rec.sentiment_label}`, "data-testid": "sentiment" },
      rec.sentiment_label.replace(/_/g, " "),
    );
    if (rec.sentiment_label === "neutral" && rec.evidence_count === 0) {
      chip.setAttribute("title", "no posts found");
    }
    return chip;
  }

  function traceBars(result: RecommendationSet, pattern: string): HTMLElement {
    const trace = result.trace[pattern];
    const box = el("div", { class: "trace", "data-testid": `trace-${pattern}` });
    if (!trace) return box;
    const maxValue = Math.max(...trace.terms.map((t) => t.value), 1e-9);
    for (const term of trace.terms) {
      const width = Math.round((term.value / maxValue) * 100);
      const bar = el("div", {
        class: `bar${term.active ? "" : " inactive"}`,
        style: `width:${Math.max(width, 1)}%`,
        "data-testid": `bar-${pattern}-${term.term}`,
        title: `${term.source} → ${term.target}: ${term.value.toFixed(4)}`,
      });
      box.append(
        el(
          "div",
          { class: "trace-row" },
          el("span", { class: "term" }, term.term),
          el("div", { class: "bar-track" }, bar),
          el("span", { class: "value" }, term.value.toFixed(4)),
        ),
      );
    }
    return box;
  }

  function renderResults(): void {
    resultsBox.innerHTML = "";
    const result = results.last;
    if (!result) return;
    const changes = new Map(results.changes().map((c) => [c.pattern, c]));

    const table = el("table", { class: "ranking", "data-testid": "ranking" });
    table.append(
      el(
        "tr",
        {},
        el("th", {}, "Rank"),
        el("th", {}, "Pattern"),
        el("th", {}, "Confidence"),
        el("th", {}, "Sentiment"),
      ),
    );
    for (const rec of result.recommendations) {
      // rendered strictly in API order
      const row = el("tr", { "data-testid": `rank-${rec.rank}` });
      const change = changes.get(rec.pattern_name);
      if (change) row.classList.add("changed");
      const badge = change
        ? el(
            "span",
            { class: "rank-change", "data-testid": `change-${rec.pattern_name}` },
            change.from === null ? "new" : `was #${change.from}`,
          )
        : "";
      row.append(
        el("td", {}, String(rec.rank)),
        el("td", {}, rec.pattern_name, badge),
        el("td", {}, rec.confidence.toFixed(4)),
        el("td", {}, sentimentChip(rec), ` (${rec.evidence_count} posts)`),
      );
      table.append(row);
    }
    resultsBox.append(el("h2", {}, "Recommendations"), table);
    for (const rec of result.recommendations) {
      resultsBox.append(el("h3", {}, `${rec.pattern_name} term contributions`));
      resultsBox.append(traceBars(result, rec.pattern_name));
    }
  }

  // expose a couple of hooks for the scripted tests
  const refresh: Handler = () => {
    renderErrors();
    renderUseCases();
    renderNfrs();
  };
  refresh();
  void status;

  return {
    form,
    results,
    projectId: () => projectId,
    whenIdle: async () => {
      // pending chains onto itself, so two awaits drain nested follow-ups
      await pending;
      await pending;
    },
  };
}
