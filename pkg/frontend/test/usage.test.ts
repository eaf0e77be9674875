// Usage tracker: batching, forced-retry delivery with zero duplicates,
// and offline queueing.

import { describe, expect, it } from "vitest";
import { UsageTracker } from "../src/usage.js";
import type { UsageAccepted, UsageEventData } from "../src/types.js";

// in-memory stand-in for the service's idempotent usage endpoint
class FakeServer {
  seen = new Set<string>();
  received: UsageEventData[] = [];
  failuresBeforeSuccess: number;
  failAfterProcessing: boolean;
  attempts = 0;

  constructor(failures = 0, failAfterProcessing = false) {
    this.failuresBeforeSuccess = failures;
    this.failAfterProcessing = failAfterProcessing;
  }

  post = async (events: UsageEventData[]): Promise<UsageAccepted> => {
    this.attempts += 1;
    const shouldFail = this.attempts <= this.failuresBeforeSuccess;
    if (shouldFail && !this.failAfterProcessing) {
      throw new Error("network down");
    }
    let accepted = 0;
    for (const event of events) {
      const key = `${event.session_id}|${event.page_id}|${event.entered_at}`;
      if (this.seen.has(key)) continue;
      this.seen.add(key);
      this.received.push(event);
      accepted += 1;
    }
    if (shouldFail) {
      // worst case: the server processed the batch but the client never
      // saw the response
      throw new Error("connection reset after processing");
    }
    return { accepted };
  };
}

function makeClock(startMs = 1_767_312_000_000): () => Date {
  let t = startMs;
  return () => new Date((t += 30_000));
}

describe("UsageTracker", () => {
  it("posts one event per completed page visit", async () => {
    const server = new FakeServer();
    const tracker = new UsageTracker(server.post, { sessionId: "t1", now: makeClock() });
    tracker.pageEnter("summary");
    tracker.pageEnter("profiles"); // implicitly leaves summary
    tracker.pageLeave();
    expect(tracker.pendingCount).toBe(2);
    const accepted = await tracker.flush();
    expect(accepted).toBe(2);
    expect(server.received.map((e) => e.page_id)).toEqual(["summary", "profiles"]);
    for (const event of server.received) {
      expect(event.entered_at <= event.left_at).toBe(true);
    }
  });

  it("round-trips with zero duplicates under forced retries", async () => {
    const server = new FakeServer(2, true); // processes, then drops the reply
    const tracker = new UsageTracker(server.post, { sessionId: "t1", now: makeClock() });
    tracker.pageEnter("summary");
    tracker.pageEnter("effort");
    tracker.pageLeave();

    const accepted = await tracker.flushWithRetry(5, 1);
    expect(server.attempts).toBe(3);
    // the final successful attempt re-sent already-processed events; the
    // server deduplicated them all
    expect(accepted).toBe(0);
    expect(server.received.length).toBe(2);
    const keys = server.received.map((e) => `${e.page_id}|${e.entered_at}`);
    expect(new Set(keys).size).toBe(keys.length);
    expect(tracker.pendingCount).toBe(0);
  });

  it("keeps events queued while offline and drains on reconnect", async () => {
    const server = new FakeServer(3);
    const tracker = new UsageTracker(server.post, { sessionId: "t1", now: makeClock() });
    tracker.pageEnter("summary");
    tracker.pageLeave();
    await expect(tracker.flush()).rejects.toThrow("network down");
    expect(tracker.pendingCount).toBe(1);
    await expect(tracker.flush()).rejects.toThrow();
    await expect(tracker.flush()).rejects.toThrow();
    const accepted = await tracker.flush();
    expect(accepted).toBe(1);
    expect(tracker.pendingCount).toBe(0);
    expect(server.received.length).toBe(1);
  });

  it("never re-queues an acknowledged visit", async () => {
    const server = new FakeServer();
    const clock = makeClock();
    const fixed = clock();
    const tracker = new UsageTracker(server.post, {
      sessionId: "t1",
      now: () => fixed,
    });
    tracker.pageEnter("summary");
    tracker.pageLeave();
    await tracker.flush();
    // identical visit (same page, same timestamps) arrives again
    tracker.pageEnter("summary");
    tracker.pageLeave();
    expect(tracker.pendingCount).toBe(0);
    expect(server.received.length).toBe(1);
  });

  it("serializes timestamps at second resolution in UTC", async () => {
    const server = new FakeServer();
    const tracker = new UsageTracker(server.post, {
      sessionId: "t1",
      now: makeClock(1_767_312_123_456),
    });
    tracker.pageEnter("control");
    tracker.pageLeave();
    await tracker.flush();
    expect(server.received[0].entered_at).toMatch(/^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z$/);
  });
});
