// REST + stream client for the studio service. The fetch implementation
// is injectable so tests can run without a browser or a server.

import { SseParser } from "./sse.js";
import type {
  ExemplarInfo,
  ModelDoc,
  RunConfig,
  RunSnapshot,
  SpeciesCandidate,
  StreamHeader,
  StreamRecord,
  TraitSuggestion,
} from "./types.js";

type FetchLike = typeof fetch;

export interface StreamCallbacks {
  onHeader(header: StreamHeader): void;
  onRecord(record: StreamRecord): void;
  onDone(snapshot: RunSnapshot): void;
  onError?(message: string): void;
}

export interface StreamHandle {
  close(): void;
  finished: Promise<void>;
}

async function orThrow(response: Response): Promise<Response> {
  if (!response.ok) {
    let detail = `${response.status}`;
    try {
      const body = await response.json();
      detail = typeof body.detail === "string" ? body.detail : JSON.stringify(body.detail ?? body);
    } catch {
      /* keep the status code */
    }
    throw new Error(detail);
  }
  return response;
}

export class StudioApi {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await orThrow(await this.fetchImpl(this.base + path, init));
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.json<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  listExemplars(): Promise<ExemplarInfo[]> {
    return this.json("/exemplars");
  }

  createFromExemplar(exemplarId: string, name?: string): Promise<{ id: string }> {
    return this.post(`/models/from-exemplar/${exemplarId}`, name ? { name } : {});
  }

  listModels(): Promise<{ id: string; name: string }[]> {
    return this.json("/models");
  }

  getModel(modelId: string): Promise<ModelDoc> {
    return this.json(`/models/${modelId}`);
  }

  createModel(doc: ModelDoc): Promise<{ id: string }> {
    return this.post("/models", doc);
  }

  saveModel(doc: ModelDoc): Promise<{ id: string }> {
    return this.json(`/models/${doc.id}`, {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(doc),
    });
  }

  copyModel(modelId: string): Promise<{ id: string }> {
    return this.post(`/models/${modelId}/copy`, {});
  }

  deleteModel(modelId: string): Promise<void> {
    return this.fetchImpl(this.base + `/models/${modelId}`, { method: "DELETE" })
      .then(orThrow)
      .then(() => undefined);
  }

  createProject(name: string): Promise<{ id: string; name: string }> {
    return this.post("/projects", { name });
  }

  listProjects(): Promise<{ id: string; name: string }[]> {
    return this.json("/projects");
  }

  compileNetlogo(modelId: string): Promise<string> {
    return this.fetchImpl(this.base + `/models/${modelId}/compile?emit=netlogo`, {
      method: "POST",
    })
      .then(orThrow)
      .then((r) => r.text());
  }

  startRun(modelId: string, config: RunConfig): Promise<RunSnapshot> {
    return this.post("/runs", { model_id: modelId, config });
  }

  runStatus(runId: string): Promise<RunSnapshot> {
    return this.json(`/runs/${runId}`);
  }

  runCsv(runId: string): Promise<string> {
    return this.fetchImpl(this.base + `/runs/${runId}/csv`)
      .then(orThrow)
      .then((r) => r.text());
  }

  csvUrl(runId: string): string {
    return `${this.base}/runs/${runId}/stream`.replace("/stream", "/csv");
  }

  searchSpecies(query: string): Promise<{ candidates: SpeciesCandidate[] }> {
    return this.json(`/eol/search?q=${encodeURIComponent(query)}`);
  }

  fetchTraits(taxonId: string): Promise<TraitSuggestion> {
    return this.json(`/eol/traits?taxon=${encodeURIComponent(taxonId)}`);
  }

  /** Subscribe to a run stream; records arrive strictly in tick order.
   * Reads the SSE body through fetch so node and browser behave alike. */
  streamRun(runId: string, callbacks: StreamCallbacks): StreamHandle {
    const controller = new AbortController();
    const finished = (async () => {
      const response = await orThrow(
        await this.fetchImpl(this.base + `/runs/${runId}/stream`, {
          signal: controller.signal,
        }),
      );
      const reader = response.body!.getReader();
      const decoder = new TextDecoder();
      const parser = new SseParser();
      for (;;) {
        const { value, done } = await reader.read();
        const chunk = value ? decoder.decode(value, { stream: !done }) : "";
        for (const event of parser.feed(chunk)) {
          if (event.event === "header") {
            callbacks.onHeader(JSON.parse(event.data) as StreamHeader);
          } else if (event.event === "done") {
            callbacks.onDone(JSON.parse(event.data) as RunSnapshot);
          } else {
            callbacks.onRecord(JSON.parse(event.data) as StreamRecord);
          }
        }
        if (done) break;
      }
    })().catch((error: unknown) => {
      if (!controller.signal.aborted) {
        callbacks.onError?.(error instanceof Error ? error.message : String(error));
      }
    });
    return { close: () => controller.abort(), finished };
  }
}
