// Typed client for the survey service HTTP API. All network traffic of the
// app flows through this module.

export type QuestionKind = "mcq" | "checkbox" | "linear";

export interface Question {
  id: string;
  kind: QuestionKind;
  prompt: string;
  options?: string[];
  scale?: number;
}

export interface VideoSetInfo {
  id: string;
  kind: "original" | "user_summary" | "machine_summary" | "pair";
  video_id: string;
  media: string[];
}

export interface SessionInfo {
  session_id: string;
  videoset_ids: string[];
}

export type SetPayload =
  | { done: true; answered: number }
  | { done: false; position: number; video_set: VideoSetInfo; questions: Question[] };

export type AnswerPayload = string | string[] | number;

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

async function parseError(res: Response): Promise<never> {
  let detail = `${res.status} ${res.statusText}`;
  try {
    const body = await res.json();
    if (body && typeof body.detail === "string") detail = body.detail;
  } catch {
    // keep the status line
  }
  throw new ApiError(detail, res.status);
}

export class SurveyApi {
  constructor(readonly baseUrl: string = "") {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  async createSession(count: number): Promise<SessionInfo> {
    const res = await fetch(this.url("/sessions"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ count }),
    });
    if (!res.ok) await parseError(res);
    return res.json();
  }

  async getSet(sessionId: string, position: number): Promise<SetPayload> {
    const res = await fetch(this.url(`/sessions/${sessionId}/sets/${position}`));
    if (!res.ok) await parseError(res);
    return res.json();
  }

  async submitAnswers(
    sessionId: string,
    setId: string,
    answers: Record<string, AnswerPayload>,
  ): Promise<void> {
    const res = await fetch(this.url(`/sessions/${sessionId}/sets/${setId}/answers`), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ answers }),
    });
    if (!res.ok) await parseError(res);
  }

  mediaUrl(name: string): string {
    if (/^https?:\/\//.test(name)) return name;
    const file = name.split("/").pop() ?? name;
    return this.url(`/media/${file}`);
  }
}
