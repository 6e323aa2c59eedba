import { describe, expect, it } from "vitest";

import { SseParser } from "../src/sse";

describe("SseParser", () => {
  it("parses a complete stream of events", () => {
    const parser = new SseParser();
    const events = parser.feed(
      'event: header\ndata: {"components": []}\n\n' +
        'data: {"tick": 0}\n\n' +
        'data: {"tick": 1}\n\n' +
        'event: done\ndata: {"status": "done"}\n\n',
    );
    expect(events.map((e) => e.event)).toEqual(["header", "message", "message", "done"]);
    expect(JSON.parse(events[1].data)).toEqual({ tick: 0 });
  });

  it("handles events split across arbitrary chunk boundaries", () => {
    const text = 'event: header\ndata: {"a": 1}\n\ndata: {"tick": 0}\n\n';
    for (const size of [1, 2, 3, 7]) {
      const parser = new SseParser();
      const events = [];
      for (let i = 0; i < text.length; i += size) {
        events.push(...parser.feed(text.slice(i, i + size)));
      }
      expect(events).toEqual([
        { event: "header", data: '{"a": 1}' },
        { event: "message", data: '{"tick": 0}' },
      ]);
    }
  });

  it("resets the event name after each dispatch", () => {
    const parser = new SseParser();
    const events = parser.feed("event: done\ndata: x\n\ndata: y\n\n");
    expect(events[0].event).toBe("done");
    expect(events[1].event).toBe("message");
  });

  it("tolerates CRLF line endings and comments", () => {
    const parser = new SseParser();
    const events = parser.feed(": ping\r\ndata: 1\r\n\r\n");
    expect(events).toEqual([{ event: "message", data: "1" }]);
  });

  it("emits nothing for incomplete events", () => {
    const parser = new SseParser();
    expect(parser.feed("data: partial")).toEqual([]);
    expect(parser.feed("\n")).toEqual([]);
    expect(parser.feed("\n")).toEqual([{ event: "message", data: "partial" }]);
  });
});
