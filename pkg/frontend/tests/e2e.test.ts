// End-to-end studio loop against the real backend: instantiate an
// exemplar, run it, consume the live stream into the chart state (one
// point per component per record), and check the downloaded CSV matches
// both the stream contents and a byte-identical re-download.
//
// Skipped automatically when the backend cannot be started (e.g. the
// Python package is not installed on this machine).

import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { spawn, type ChildProcess } from "node:child_process";
import { existsSync } from "node:fs";
import { resolve } from "node:path";

import { StudioApi } from "../src/api";
import { appendRecord, startChart, type ChartState } from "../src/chart";
import type { RunSnapshot, StreamHeader, StreamRecord } from "../src/types";

const PORT = 8642;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess | null = null;
let available = false;

async function waitForService(timeoutMs: number): Promise<boolean> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/exemplars`);
      if (response.ok) return true;
    } catch {
      /* not up yet */
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  return false;
}

beforeAll(async () => {
  const fixtures = resolve(__dirname, "../../src/ecoloom/data/eol_fixtures");
  server = spawn("python3", ["-m", "ecoloom.cli", "serve", "--port", String(PORT)], {
    stdio: "ignore",
    env: {
      ...process.env,
      ...(existsSync(fixtures) ? { ECOLOOM_EOL_FIXTURES: fixtures } : {}),
    },
  });
  server.on("error", () => {
    server = null;
  });
  available = await waitForService(20_000);
}, 30_000);

afterAll(() => {
  server?.kill();
});

describe("studio end-to-end against the live service", () => {
  it("loads an exemplar, streams a run into the chart, and downloads matching CSV", async () => {
    if (!available) {
      console.warn("backend not reachable; skipping end-to-end test");
      return;
    }
    const api = new StudioApi(BASE);

    // load exemplar -> stored model
    const exemplars = await api.listExemplars();
    expect(exemplars.map((e) => e.id)).toContain("predator_prey");
    const { id: modelId } = await api.createFromExemplar("predator_prey", "E2E Wolves");
    const model = await api.getModel(modelId);
    expect(model.components).toHaveLength(3);
    expect(model.relationships).toHaveLength(2);

    // run and subscribe to the stream
    const snapshot = await api.startRun(modelId, { max_ticks: 15, rng_seed: 7 });
    let chart: ChartState | null = null;
    const records: StreamRecord[] = [];
    let header: StreamHeader | null = null;
    let done: RunSnapshot | null = null;
    const handle = api.streamRun(snapshot.id, {
      onHeader: (h) => {
        header = h;
        chart = startChart(h.components);
      },
      onRecord: (record) => {
        records.push(record);
        chart = appendRecord(chart!, record);
      },
      onDone: (s) => {
        done = s;
      },
    });
    await handle.finished;

    // chart invariants: series count = component count at run start,
    // one point per component per streamed record, ticks gapless
    expect(header!.components).toHaveLength(3);
    expect(chart!.series).toHaveLength(3);
    expect(records).toHaveLength(16); // initial record + 15 ticks
    expect(records.map((r) => r.tick)).toEqual([...Array(16).keys()]);
    for (const series of chart!.series) {
      expect(series.points).toHaveLength(16);
    }
    expect(records[0].counts).toEqual({ wolf: 200, sheep: 1200, grass: 1000 });
    expect(done!.status).toBe("done");

    // the downloadable CSV equals the stream-derived table...
    const csv = await api.runCsv(snapshot.id);
    const lines = csv.trimEnd().split("\n");
    expect(lines[0]).toBe(
      "Month," + header!.components.map((c) => c.display_name).join(","),
    );
    expect(lines).toHaveLength(17);
    records.forEach((record, i) => {
      const expected = [
        record.tick,
        ...header!.components.map((c) => Math.round(record.counts[c.component_id])),
      ].join(",");
      expect(lines[i + 1]).toBe(expected);
    });

    // ...and re-downloading yields identical bytes
    expect(await api.runCsv(snapshot.id)).toBe(csv);

    // identical config replays the identical stream
    const replay = await api.startRun(modelId, { max_ticks: 15, rng_seed: 7 });
    const replayRecords: StreamRecord[] = [];
    const replayHandle = api.streamRun(replay.id, {
      onHeader: () => {},
      onRecord: (record) => replayRecords.push(record),
      onDone: () => {},
    });
    await replayHandle.finished;
    expect(replayRecords).toEqual(records);
  }, 60_000);

  it("species lookup fills suggested parameters through the proxy", async () => {
    if (!available) return;
    const api = new StudioApi(BASE);
    const { candidates } = await api.searchSpecies("gray wolf");
    expect(candidates[0].scientific_name).toBe("Canis lupus");
    const suggestion = await api.fetchTraits(candidates[0].taxon_id);
    expect(suggestion.parameters.lifespan).toBe(180);
    expect(suggestion.parameters.body_mass).toBe(30);
  });
});
