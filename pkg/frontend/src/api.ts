import type { AnalysisView, AnswerValue, ApiErrorBody, GameView } from "./types";

export class ApiError extends Error {
  code: string;
  status: number;

  constructor(status: number, body: ApiErrorBody) {
    super(body.message);
    this.status = status;
    this.code = body.code;
  }
}

async function decode<T>(response: Response): Promise<T> {
  const body = await response.json();
  if (!response.ok) {
    throw new ApiError(response.status, body as ApiErrorBody);
  }
  return body as T;
}

/** Thin client for the game service; the engine stays the single source
 * of truth and this file never infers hidden identities. */
export class GameClient {
  constructor(readonly base: string = "") {}

  private url(path: string): string {
    return `${this.base}${path}`;
  }

  async createGame(options: {
    n: number;
    max_spies: number;
    interrogator: string;
    secret_keeper: string;
    seed?: number;
    spies?: number;
  }): Promise<GameView> {
    const response = await fetch(this.url("/games"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(options),
    });
    return decode<GameView>(response);
  }

  async getGame(id: string): Promise<GameView> {
    return decode<GameView>(await fetch(this.url(`/games/${id}`)));
  }

  async ask(id: string, asker: number, subject: number): Promise<GameView> {
    const response = await fetch(this.url(`/games/${id}/question`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ asker, subject }),
    });
    return decode<GameView>(response);
  }

  async answer(id: string, answer: AnswerValue): Promise<GameView> {
    const response = await fetch(this.url(`/games/${id}/answer`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ answer }),
    });
    return decode<GameView>(response);
  }

  async claim(id: string, spies: number[]): Promise<GameView> {
    const response = await fetch(this.url(`/games/${id}/claim`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ spies }),
    });
    return decode<GameView>(response);
  }

  async analysis(
    id: string,
    hypothetical?: { asker: number; subject: number; answer: AnswerValue },
  ): Promise<AnalysisView> {
    let path = `/games/${id}/analysis`;
    if (hypothetical) {
      const q = new URLSearchParams({
        asker: String(hypothetical.asker),
        subject: String(hypothetical.subject),
        answer: hypothetical.answer,
      });
      path += `?${q}`;
    }
    return decode<AnalysisView>(await fetch(this.url(path)));
  }
}
