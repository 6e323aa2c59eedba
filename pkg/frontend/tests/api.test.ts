import { describe, expect, it } from "vitest";

import { StudioApi } from "../src/api";
import type { StreamRecord } from "../src/types";

function sseResponse(body: string): Response {
  const encoder = new TextEncoder();
  const stream = new ReadableStream<Uint8Array>({
    start(controller) {
      // deliver in two chunks to exercise incremental parsing
      const half = Math.floor(body.length / 2);
      controller.enqueue(encoder.encode(body.slice(0, half)));
      controller.enqueue(encoder.encode(body.slice(half)));
      controller.close();
    },
  });
  return new Response(stream, {
    status: 200,
    headers: { "content-type": "text/event-stream" },
  });
}

describe("StudioApi", () => {
  it("raises the service's error detail on failures", async () => {
    const fetchImpl = async () =>
      new Response(JSON.stringify({ detail: "no model 'ghost'" }), { status: 404 });
    const api = new StudioApi("", fetchImpl as typeof fetch);
    await expect(api.getModel("ghost")).rejects.toThrow("no model 'ghost'");
  });

  it("streams header, records in order, then done", async () => {
    const body =
      'event: header\ndata: {"components": [{"component_id": "wolf", "display_name": "Wolf"}]}\n\n' +
      'data: {"tick": 0, "counts": {"wolf": 200}}\n\n' +
      'data: {"tick": 1, "counts": {"wolf": 198}}\n\n' +
      'event: done\ndata: {"id": "r1", "model_id": "m1", "status": "done", "records_so_far": 2}\n\n';
    const api = new StudioApi("", (async () => sseResponse(body)) as typeof fetch);

    const records: StreamRecord[] = [];
    let headerComponents = 0;
    let doneStatus = "";
    const handle = api.streamRun("r1", {
      onHeader: (header) => {
        headerComponents = header.components.length;
      },
      onRecord: (record) => records.push(record),
      onDone: (snapshot) => {
        doneStatus = snapshot.status;
      },
    });
    await handle.finished;
    expect(headerComponents).toBe(1);
    expect(records.map((r) => r.tick)).toEqual([0, 1]);
    expect(doneStatus).toBe("done");
  });

  it("posts run configs as JSON", async () => {
    let captured: { url: string; body: unknown } | null = null;
    const fetchImpl = (async (url: RequestInfo | URL, init?: RequestInit) => {
      captured = { url: String(url), body: JSON.parse(String(init?.body)) };
      return new Response(
        JSON.stringify({ id: "r9", model_id: "m1", status: "pending", records_so_far: 0 }),
        { status: 201 },
      );
    }) as typeof fetch;
    const api = new StudioApi("http://svc", fetchImpl);
    const snapshot = await api.startRun("m1", { max_ticks: 10, rng_seed: 7 });
    expect(snapshot.id).toBe("r9");
    expect(captured!.url).toBe("http://svc/runs");
    expect(captured!.body).toEqual({ model_id: "m1", config: { max_ticks: 10, rng_seed: 7 } });
  });
});
