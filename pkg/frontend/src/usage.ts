// Usage telemetry: batch page visits and deliver them with idempotent
// retries. Events carry a stable (session, page, entered_at) identity, so
// the server can drop anything delivered twice; the client additionally
// remembers what was acknowledged and never re-queues it.

import type { UsageAccepted, UsageEventData } from "./types.js";

export type PostUsage = (events: UsageEventData[]) => Promise<UsageAccepted>;

export interface TrackerOptions {
  sessionId?: string;
  now?: () => Date;
}

function isoSeconds(date: Date): string {
  return date.toISOString().replace(/\.\d{3}Z$/, "Z");
}

function eventKey(event: UsageEventData): string {
  return `${event.session_id}\n${event.page_id}\n${event.entered_at}`;
}

export function newSessionId(): string {
  return `web-${Date.now().toString(36)}-${Math.random().toString(36).slice(2, 10)}`;
}

export class UsageTracker {
  readonly sessionId: string;
  private now: () => Date;
  private queue: UsageEventData[] = [];
  private queuedKeys = new Set<string>();
  private deliveredKeys = new Set<string>();
  private current: { page: string; enteredAt: Date } | null = null;
  private flushing: Promise<number> | null = null;

  constructor(
    private post: PostUsage,
    options: TrackerOptions = {},
  ) {
    this.sessionId = options.sessionId ?? newSessionId();
    this.now = options.now ?? (() => new Date());
  }

  pageEnter(page: string): void {
    if (this.current) {
      this.pageLeave();
    }
    this.current = { page, enteredAt: this.now() };
  }

  pageLeave(): void {
    if (!this.current) return;
    const event: UsageEventData = {
      session_id: this.sessionId,
      page_id: this.current.page,
      entered_at: isoSeconds(this.current.enteredAt),
      left_at: isoSeconds(this.now()),
    };
    this.current = null;
    const key = eventKey(event);
    if (this.queuedKeys.has(key) || this.deliveredKeys.has(key)) {
      return;
    }
    this.queuedKeys.add(key);
    this.queue.push(event);
  }

  get pendingCount(): number {
    return this.queue.length;
  }

  // one flush at a time; a failed delivery keeps the queue intact so a
  // later flush retries the identical batch (same identities)
  flush(): Promise<number> {
    if (this.flushing) return this.flushing;
    if (!this.queue.length) return Promise.resolve(0);
    const batch = [...this.queue];
    this.flushing = this.post(batch)
      .then((result) => {
        for (const event of batch) {
          const key = eventKey(event);
          this.deliveredKeys.add(key);
          this.queuedKeys.delete(key);
        }
        this.queue = this.queue.filter(
          (event) => !this.deliveredKeys.has(eventKey(event)),
        );
        return result.accepted;
      })
      .finally(() => {
        this.flushing = null;
      });
    return this.flushing;
  }

  async flushWithRetry(retries = 3, delayMs = 250): Promise<number> {
    let lastError: unknown = null;
    for (let attempt = 0; attempt <= retries; attempt++) {
      try {
        return await this.flush();
      } catch (error) {
        lastError = error;
        if (attempt < retries) {
          await new Promise((resolve) => setTimeout(resolve, delayMs * (attempt + 1)));
        }
      }
    }
    throw lastError;
  }
}
