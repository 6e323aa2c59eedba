// Incremental parser for text/event-stream bodies. Used when reading the
// run stream through fetch (tests, node); the browser app may also use
// EventSource, which speaks the same wire format.

export interface SseEvent {
  event: string;
  data: string;
}

export class SseParser {
  private buffer = "";
  private eventName = "message";
  private dataLines: string[] = [];

  /** Feed a chunk; returns the events completed by it. */
  feed(chunk: string): SseEvent[] {
    this.buffer += chunk;
    const events: SseEvent[] = [];
    for (;;) {
      const newline = this.buffer.indexOf("\n");
      if (newline < 0) break;
      const line = this.buffer.slice(0, newline).replace(/\r$/, "");
      this.buffer = this.buffer.slice(newline + 1);
      if (line === "") {
        if (this.dataLines.length > 0) {
          events.push({ event: this.eventName, data: this.dataLines.join("\n") });
        }
        this.eventName = "message";
        this.dataLines = [];
      } else if (line.startsWith("event:")) {
        this.eventName = line.slice(6).trimStart();
      } else if (line.startsWith("data:")) {
        this.dataLines.push(line.slice(5).trimStart());
      }
      // comment lines (":") and unknown fields are ignored
    }
    return events;
  }
}
