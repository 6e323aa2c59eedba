// Studio application: wires the canvas editor, parameter panel, run
// controls and live chart to the service. The stored model document is
// the single source of truth; the studio keeps only layout locally.

import { StudioApi, StreamHandle } from "./api.js";
import { ChartState, appendRecord, drawChart, startChart } from "./chart.js";
import { ModelCanvas, Selection } from "./editor.js";
import * as modeldoc from "./modeldoc.js";
import { RELATIONSHIP_KINDS, paramsForComponent, RELATIONSHIP_PARAMS } from "./params.js";
import type { ModelDoc, RelationshipKind, RunSnapshot } from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

export class StudioApp {
  private api: StudioApi;
  private doc: ModelDoc | null = null;
  private dirty = false;
  private canvas: ModelCanvas;
  private chart: ChartState | null = null;
  private stream: StreamHandle | null = null;
  private runId: string | null = null;

  constructor(baseUrl = "") {
    this.api = new StudioApi(baseUrl);
    this.canvas = new ModelCanvas(el<HTMLCanvasElement>("model-canvas"), {
      onSelect: (selection) => this.renderInspector(selection),
      onConnect: (source, target) => this.connect(source, target),
      onLayoutChange: () => this.canvas.render(),
    });
    this.bindToolbar();
    void this.refreshLists();
  }

  // -- model lifecycle -------------------------------------------------------

  private setDoc(doc: ModelDoc, markDirty: boolean): void {
    this.doc = doc;
    this.dirty = markDirty;
    this.canvas.setModel(doc);
    el("model-title").textContent = doc.name + (this.dirty ? " *" : "");
    el<HTMLSelectElement>("project-select").value = doc.project_id ?? "";
    this.renderInspector(this.canvas.selection);
  }

  private mutate(next: ModelDoc): void {
    this.setDoc(next, true);
  }

  async loadModel(modelId: string): Promise<void> {
    this.setDoc(await this.api.getModel(modelId), false);
    this.setStatus(`loaded ${this.doc!.name}`);
  }

  async refreshLists(): Promise<void> {
    const exemplars = await this.api.listExemplars();
    const exemplarBox = el("exemplar-list");
    exemplarBox.innerHTML = "";
    for (const exemplar of exemplars) {
      const button = document.createElement("button");
      button.textContent = exemplar.title;
      button.title = exemplar.description;
      button.addEventListener("click", () => void this.instantiateExemplar(exemplar.id));
      exemplarBox.appendChild(button);
    }

    // models grouped by project; the project select doubles as the
    // "file this model under…" control for the loaded model
    const projects = await this.api.listProjects();
    const models = (await this.api.listModels()) as {
      id: string; name: string; project_id?: string | null;
    }[];
    const projectNames = new Map(projects.map((p) => [p.id, p.name]));
    const modelBox = el("model-list");
    modelBox.innerHTML = "";
    const groups = new Map<string, typeof models>();
    for (const model of models) {
      const key = model.project_id && projectNames.has(model.project_id) ? model.project_id : "";
      if (!groups.has(key)) groups.set(key, []);
      groups.get(key)!.push(model);
    }
    const orderedKeys = ["", ...projects.map((p) => p.id)].filter((k) => groups.has(k));
    for (const key of orderedKeys) {
      const heading = document.createElement("div");
      heading.className = "group-heading";
      heading.textContent = key === "" ? "unfiled" : projectNames.get(key)!;
      modelBox.appendChild(heading);
      for (const model of groups.get(key)!) {
        const button = document.createElement("button");
        button.textContent = model.name || model.id;
        button.addEventListener("click", () => void this.loadModel(model.id));
        modelBox.appendChild(button);
      }
    }

    const select = el<HTMLSelectElement>("project-select");
    select.innerHTML = "";
    const none = document.createElement("option");
    none.value = "";
    none.textContent = "(no project)";
    select.appendChild(none);
    for (const project of projects) {
      const option = document.createElement("option");
      option.value = project.id;
      option.textContent = project.name;
      select.appendChild(option);
    }
    select.value = this.doc?.project_id ?? "";
  }

  private async instantiateExemplar(exemplarId: string): Promise<void> {
    const { id } = await this.api.createFromExemplar(exemplarId);
    await this.refreshLists();
    await this.loadModel(id);
  }

  private async saveModel(): Promise<void> {
    if (!this.doc) return;
    if (!this.doc.id) {
      const { id } = await this.api.createModel(this.doc);
      this.setDoc({ ...this.doc, id }, false);
    } else {
      await this.api.saveModel(this.doc);
      this.setDoc(this.doc, false);
    }
    await this.refreshLists();
    this.setStatus("saved");
  }

  private async copyModel(): Promise<void> {
    if (!this.doc?.id) return;
    const { id } = await this.api.copyModel(this.doc.id);
    await this.refreshLists();
    await this.loadModel(id);
  }

  // -- editing ----------------------------------------------------------------

  private bindToolbar(): void {
    el("add-biotic").addEventListener("click", () => {
      if (!this.doc) this.setDoc(modeldoc.emptyModel("Untitled"), true);
      this.mutate(modeldoc.addComponent(this.doc!, "biotic").doc);
    });
    el("add-abiotic").addEventListener("click", () => {
      if (!this.doc) this.setDoc(modeldoc.emptyModel("Untitled"), true);
      this.mutate(modeldoc.addComponent(this.doc!, "abiotic").doc);
    });
    const kindSelect = el<HTMLSelectElement>("arrow-kind");
    for (const kind of RELATIONSHIP_KINDS) {
      const option = document.createElement("option");
      option.value = kind;
      option.textContent = kind;
      kindSelect.appendChild(option);
    }
    el("add-arrow").addEventListener("click", () => {
      if (!this.doc) return;
      this.canvas.armConnect(kindSelect.value as RelationshipKind);
    });
    el("delete-selected").addEventListener("click", () => this.deleteSelected());
    el("save-model").addEventListener("click", () => void this.saveModel());
    el("copy-model").addEventListener("click", () => void this.copyModel());
    el("new-model").addEventListener("click", () => {
      this.setDoc(modeldoc.emptyModel("Untitled"), true);
    });
    el("run-model").addEventListener("click", () => void this.run());
    el("download-csv").addEventListener("click", () => void this.downloadCsv());
    el("compile-model").addEventListener("click", () => void this.showCode());
    el("new-project").addEventListener("click", () => {
      const name = window.prompt("Project name");
      if (name) {
        void this.api.createProject(name).then(() => this.refreshLists());
      }
    });
    el<HTMLSelectElement>("project-select").addEventListener("change", (event) => {
      if (!this.doc) return;
      const value = (event.target as HTMLSelectElement).value;
      const next = { ...this.doc } as typeof this.doc;
      if (value) next.project_id = value;
      else delete next.project_id;
      this.mutate(next);
    });
  }

  private connect(source: string, target: string): void {
    if (!this.doc || !this.canvas.connectKind) return;
    const result = modeldoc.addRelationship(this.doc, this.canvas.connectKind, source, target);
    if ("error" in result) {
      this.setStatus(result.error, true);
      return;
    }
    this.mutate(result.doc);
  }

  private deleteSelected(): void {
    const selection = this.canvas.selection;
    if (!this.doc || !selection) return;
    this.mutate(
      selection.kind === "component"
        ? modeldoc.removeComponent(this.doc, selection.id)
        : modeldoc.removeRelationship(this.doc, selection.id),
    );
    this.canvas.selection = null;
    this.renderInspector(null);
  }

  // -- inspector ---------------------------------------------------------------

  private renderInspector(selection: Selection): void {
    const panel = el("inspector");
    panel.innerHTML = "";
    if (!this.doc || !selection) {
      panel.innerHTML =
        "<p class='hint'>Click a component or relationship to edit its parameters. " +
        "Blank parameters take engine defaults.</p>";
      return;
    }
    if (selection.kind === "component") {
      const component = this.doc.components.find((c) => c.id === selection.id);
      if (!component) return;
      const title = document.createElement("input");
      title.value = component.display_name;
      title.className = "name-input";
      title.addEventListener("change", () => {
        this.mutate(modeldoc.renameComponent(this.doc!, component.id, title.value));
      });
      panel.appendChild(title);
      const kind = document.createElement("p");
      kind.className = "hint";
      kind.textContent = `${component.kind} component (${component.id})`;
      panel.appendChild(kind);
      if (component.kind === "biotic") this.renderLookup(panel, component.id);
      for (const info of paramsForComponent(component.kind)) {
        panel.appendChild(
          this.paramRow(info.label, info.unit, component.params[info.name], (value) => {
            this.mutate(modeldoc.setComponentParam(this.doc!, component.id, info.name, value));
          }),
        );
      }
    } else {
      const relationship = this.doc.relationships.find((r) => r.id === selection.id);
      if (!relationship) return;
      const title = document.createElement("h3");
      const names = Object.fromEntries(this.doc.components.map((c) => [c.id, c.display_name]));
      title.textContent = `${names[relationship.source]} ${relationship.kind} ${names[relationship.target]}`;
      panel.appendChild(title);
      for (const info of RELATIONSHIP_PARAMS[relationship.kind]) {
        panel.appendChild(
          this.paramRow(info.label, info.unit, relationship.params[info.name], (value) => {
            this.mutate(
              modeldoc.setRelationshipParam(this.doc!, relationship.id, info.name, value),
            );
          }),
        );
      }
    }
  }

  private paramRow(
    label: string,
    unit: string,
    value: number | undefined,
    onChange: (value: number | null) => void,
  ): HTMLElement {
    const row = document.createElement("label");
    row.className = "param-row";
    const caption = document.createElement("span");
    caption.textContent = label;
    const input = document.createElement("input");
    input.type = "number";
    input.step = "any";
    input.value = value === undefined ? "" : String(value);
    input.placeholder = "default";
    input.addEventListener("change", () => {
      onChange(input.value === "" ? null : Number(input.value));
    });
    const hint = document.createElement("small");
    hint.textContent = unit;
    row.append(caption, input, hint);
    return row;
  }

  private renderLookup(panel: HTMLElement, componentId: string): void {
    const wrap = document.createElement("div");
    wrap.className = "lookup";
    const input = document.createElement("input");
    input.placeholder = "species name…";
    const button = document.createElement("button");
    button.textContent = "Lookup species";
    const out = document.createElement("small");
    button.addEventListener("click", () => {
      void (async () => {
        try {
          const { candidates } = await this.api.searchSpecies(input.value);
          if (candidates.length === 0) {
            out.textContent = "no matches";
            return;
          }
          const top = candidates[0];
          const suggestion = await this.api.fetchTraits(top.taxon_id);
          this.mutate(
            modeldoc.mergeSuggestedParams(this.doc!, componentId, suggestion.parameters),
          );
          out.textContent =
            `${top.scientific_name}: filled ${Object.keys(suggestion.parameters).length} parameters` +
            (suggestion.warnings.length ? ` (${suggestion.warnings.length} skipped)` : "");
          this.renderInspector({ kind: "component", id: componentId });
        } catch (error) {
          out.textContent = error instanceof Error ? error.message : String(error);
        }
      })();
    });
    wrap.append(input, button, out);
    panel.appendChild(wrap);
  }

  // -- running -------------------------------------------------------------------

  private async run(): Promise<void> {
    if (!this.doc) return;
    if (this.dirty || !this.doc.id) await this.saveModel();
    this.stream?.close(); // stale subscription closed on rerun
    this.stream = null;
    el<HTMLButtonElement>("download-csv").disabled = true;

    const ticks = Number(el<HTMLInputElement>("run-ticks").value) || 120;
    const seed = Number(el<HTMLInputElement>("run-seed").value) || 0;
    const snapshot = await this.api.startRun(this.doc.id, { max_ticks: ticks, rng_seed: seed });
    this.runId = snapshot.id;
    this.chart = null;
    this.setStatus(`run ${snapshot.id} started`);

    this.stream = this.api.streamRun(snapshot.id, {
      onHeader: (header) => {
        this.chart = startChart(header.components);
        this.redrawChart();
      },
      onRecord: (record) => {
        if (!this.chart) return;
        this.chart = appendRecord(this.chart, record);
        this.redrawChart();
      },
      onDone: (finalSnapshot: RunSnapshot) => {
        this.setStatus(`run ${finalSnapshot.id}: ${finalSnapshot.status}`);
        if (finalSnapshot.status === "done") {
          el<HTMLButtonElement>("download-csv").disabled = false;
        }
      },
      onError: (message) => this.setStatus(`stream error: ${message}`, true),
    });
  }

  private redrawChart(): void {
    const canvas = el<HTMLCanvasElement>("chart-canvas");
    const ctx = canvas.getContext("2d");
    if (ctx && this.chart) drawChart(ctx, this.chart, canvas.width, canvas.height);
  }

  private async downloadCsv(): Promise<void> {
    if (!this.runId) return;
    const text = await this.api.runCsv(this.runId);
    const blob = new Blob([text], { type: "text/csv" });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = `run-${this.runId}.csv`;
    link.click();
    URL.revokeObjectURL(link.href);
  }

  private async showCode(): Promise<void> {
    if (!this.doc?.id) return;
    if (this.dirty) await this.saveModel();
    const code = await this.api.compileNetlogo(this.doc.id);
    el<HTMLTextAreaElement>("code-view").value = code;
  }

  private setStatus(message: string, isError = false): void {
    const status = el("status-line");
    status.textContent = message;
    status.className = isError ? "error" : "";
  }
}
