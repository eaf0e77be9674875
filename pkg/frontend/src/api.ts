// Typed client for the analytics service.

import type {
  ContentBundleData,
  CoursesResponse,
  HelpResponse,
  UsageAccepted,
  UsageEventData,
  UsageReport,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      const body = await response.text().catch(() => "");
      throw new ApiError(response.status, body || response.statusText);
    }
    return (await response.json()) as T;
  }

  getCourses(): Promise<CoursesResponse> {
    return this.request("/courses");
  }

  getContent(
    courseId: string,
    fromWeek: number,
    toWeek: number,
    page: string,
    view: string,
  ): Promise<ContentBundleData> {
    const params = new URLSearchParams({
      from_week: String(fromWeek),
      to_week: String(toWeek),
      page,
      view,
    });
    return this.request(
      `/courses/${encodeURIComponent(courseId)}/content?${params.toString()}`,
    );
  }

  getHelp(topic: string): Promise<HelpResponse> {
    return this.request(`/help/${encodeURIComponent(topic)}`);
  }

  postUsage(events: UsageEventData[]): Promise<UsageAccepted> {
    return this.request("/usage/events", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ events }),
    });
  }

  getUsageReport(minP = 0.12): Promise<UsageReport> {
    return this.request(`/usage/report?min_p=${minP}`);
  }
}
