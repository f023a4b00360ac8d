export type AnswerValue = "knight" | "spy";

export interface TranscriptEntry {
  turn: number;
  asker: number;
  subject: number;
  answer: AnswerValue;
}

export interface ClaimRecord {
  turn: number;
  spies: number[];
  accepted: boolean;
  witness: number[] | null;
}

export type SessionStatus = "awaiting-question" | "awaiting-answer" | "finished";

export interface GameView {
  id: string;
  n: number;
  max_spies: number;
  interrogator: string;
  secret_keeper: string;
  turn: number;
  status: SessionStatus;
  question_target: number;
  draw_turn: number;
  transcript: TranscriptEntry[];
  claims: ClaimRecord[];
  corrupted: boolean;
  pending_question: [number, number] | null;
  outcome?: string | null;
  spies?: number[] | null;
  answer?: AnswerValue;
  verdict?: { accepted: boolean; witness: number[] | null };
}

export interface AnalysisView {
  id: string;
  turn: number;
  consistent_sets: number;
  capped_at: number;
  hypothetical: { asker: number; subject: number; answer: AnswerValue } | null;
}

export interface ApiErrorBody {
  code: string;
  message: string;
}
