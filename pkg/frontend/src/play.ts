import { ApiError, GameClient } from "./api";
import { renderQuestionGraph } from "./graph";
import type { AnswerValue, GameView } from "./types";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

/** The live game screen: question graph, move controls for whichever side
 * the human plays, claim builder and the progress bar against the
 * question target.  All state comes from the server after every move. */
export class PlayScreen {
  private view: GameView;
  private witness: Set<number> = new Set();
  private banner = "";
  private hintEnabled = false;
  private hintText = "";
  private polling: number | null = null;

  constructor(
    private client: GameClient,
    private root: HTMLElement,
    view: GameView,
    private onExit: () => void,
  ) {
    this.view = view;
    this.render();
    this.maybePoll();
  }

  get gameId(): string {
    return this.view.id;
  }

  private get humanIsKeeper(): boolean {
    return this.view.secret_keeper === "human";
  }

  private usedPairs(): Set<string> {
    return new Set(
      this.view.transcript.map((e) => `${e.asker}-${e.subject}`),
    );
  }

  private async refresh(view: GameView): Promise<void> {
    this.view = view;
    this.render();
    this.maybePoll();
  }

  private maybePoll(): void {
    // engine interrogator: wait for the next question or the outcome
    const needsPoll =
      this.view.interrogator !== "human" &&
      this.view.status === "awaiting-question";
    if (needsPoll && this.polling === null) {
      this.polling = window.setTimeout(async () => {
        this.polling = null;
        await this.refresh(await this.client.getGame(this.view.id));
      }, 300);
    }
  }

  private async ask(asker: number, subject: number): Promise<void> {
    try {
      const view = await this.client.ask(this.view.id, asker, subject);
      this.banner = view.answer ? `Answer: ${view.answer}` : "";
      await this.refresh(view);
    } catch (error) {
      this.showError(error);
    }
  }

  private async answer(value: AnswerValue): Promise<void> {
    try {
      await this.refresh(await this.client.answer(this.view.id, value));
      this.hintText = "";
    } catch (error) {
      this.showError(error);
    }
  }

  private async claim(seats: number[]): Promise<void> {
    try {
      const view = await this.client.claim(this.view.id, seats);
      if (view.verdict && !view.verdict.accepted) {
        this.witness = new Set(view.verdict.witness ?? []);
        this.banner = `Refuted - a different consistent set: {${(
          view.verdict.witness ?? []
        ).join(", ")}}`;
      } else if (view.verdict) {
        this.witness = new Set();
        this.banner = `Accepted - ${view.outcome ?? "finished"}`;
      }
      await this.refresh(view);
    } catch (error) {
      this.showError(error);
    }
  }

  private showError(error: unknown): void {
    this.banner =
      error instanceof ApiError
        ? `${error.code}: ${error.message}`
        : String(error);
    this.render();
  }

  private async updateHint(): Promise<void> {
    if (!this.hintEnabled || !this.view.pending_question) {
      this.hintText = "";
      return;
    }
    const [asker, subject] = this.view.pending_question;
    const parts: string[] = [];
    for (const answer of ["knight", "spy"] as const) {
      try {
        const analysis = await this.client.analysis(this.view.id, {
          asker,
          subject,
          answer,
        });
        parts.push(
          analysis.consistent_sets === 0
            ? `"${answer}" would corrupt the game`
            : `"${answer}" leaves ${analysis.consistent_sets} consistent sets`,
        );
      } catch {
        parts.push(`"${answer}": unavailable`);
      }
    }
    this.hintText = parts.join(" | ");
    this.render();
  }

  render(): void {
    const v = this.view;
    this.root.replaceChildren();

    const header = el("div", "play-header");
    header.appendChild(
      el("h2", undefined, `Room of ${v.n}, at most ${v.max_spies} spies`),
    );
    header.appendChild(
      el(
        "div",
        "roles",
        `Interrogator: ${v.interrogator} - Secret-Keeper: ${v.secret_keeper}`,
      ),
    );
    this.root.appendChild(header);

    // progress against the question target and the draw turn
    const asked = v.transcript.length;
    const progress = el("div", "progress");
    const bar = el("div", "progress-bar");
    bar.style.width = `${Math.min(100, (asked / v.question_target) * 100)}%`;
    progress.appendChild(bar);
    progress.appendChild(
      el(
        "span",
        "progress-text",
        `${asked} / ${v.question_target} questions - draw at turn ${v.draw_turn}`,
      ),
    );
    this.root.appendChild(progress);

    if (this.banner) {
      const banner = el("div", "banner", this.banner);
      banner.id = "banner";
      this.root.appendChild(banner);
    }

    const graphBox = el("div", "graph-box");
    this.root.appendChild(graphBox);
    renderQuestionGraph(graphBox, v.n, v.transcript, {
      highlight: this.witness,
    });

    if (v.status === "finished") {
      const done = el("div", "outcome");
      done.id = "outcome";
      const label = v.corrupted
        ? "Game corrupted: the answers admit no room within the spy bound."
        : `Outcome: ${v.outcome}`;
      done.appendChild(el("strong", undefined, label));
      if (v.spies) {
        done.appendChild(el("div", undefined, `Spies: {${v.spies.join(", ")}}`));
      }
      const again = el("button", "", "New game");
      again.addEventListener("click", () => this.onExit());
      done.appendChild(again);
      this.root.appendChild(done);
      return;
    }

    if (v.interrogator === "human" && v.status === "awaiting-question") {
      this.root.appendChild(this.questionControls());
      this.root.appendChild(this.claimBuilder());
    } else if (this.humanIsKeeper && v.status === "awaiting-answer") {
      this.root.appendChild(this.answerControls());
    } else {
      this.root.appendChild(
        el("div", "waiting", "Waiting for the engine..."),
      );
    }
  }

  private questionControls(): HTMLElement {
    const v = this.view;
    const box = el("div", "controls");
    box.appendChild(el("h3", undefined, "Ask a question"));
    const used = this.usedPairs();

    const askerSelect = el("select");
    askerSelect.id = "asker";
    const subjectSelect = el("select");
    subjectSelect.id = "subject";
    for (let seat = 1; seat <= v.n; seat++) {
      askerSelect.appendChild(new Option(`Person ${seat}`, String(seat)));
    }
    const refreshSubjects = () => {
      const asker = Number(askerSelect.value);
      subjectSelect.replaceChildren();
      for (let seat = 1; seat <= v.n; seat++) {
        const option = new Option(`about person ${seat}`, String(seat));
        // mirror server validation: no self-questions, no repeats
        option.disabled = seat === asker || used.has(`${asker}-${seat}`);
        subjectSelect.appendChild(option);
      }
      const firstEnabled = Array.from(subjectSelect.options).find(
        (o) => !o.disabled,
      );
      if (firstEnabled) subjectSelect.value = firstEnabled.value;
    };
    askerSelect.addEventListener("change", refreshSubjects);
    refreshSubjects();

    const askButton = el("button", "", "Ask");
    askButton.id = "ask";
    askButton.addEventListener("click", () => {
      void this.ask(Number(askerSelect.value), Number(subjectSelect.value));
    });

    box.appendChild(askerSelect);
    box.appendChild(subjectSelect);
    box.appendChild(askButton);
    return box;
  }

  private claimBuilder(): HTMLElement {
    const v = this.view;
    const box = el("div", "controls claim-builder");
    box.appendChild(
      el("h3", undefined, `Claim the full spy set (at most ${v.max_spies})`),
    );
    const picked = new Set<number>();
    for (let seat = 1; seat <= v.n; seat++) {
      const toggle = el("button", "seat-toggle", String(seat));
      toggle.dataset.claimSeat = String(seat);
      toggle.addEventListener("click", () => {
        if (picked.has(seat)) {
          picked.delete(seat);
          toggle.classList.remove("picked");
        } else {
          picked.add(seat);
          toggle.classList.add("picked");
        }
      });
      box.appendChild(toggle);
    }
    const claimButton = el("button", "primary", "Claim");
    claimButton.id = "claim";
    claimButton.addEventListener("click", () => {
      void this.claim([...picked].sort((a, b) => a - b));
    });
    box.appendChild(claimButton);
    return box;
  }

  private answerControls(): HTMLElement {
    const v = this.view;
    const box = el("div", "controls");
    const [asker, subject] = v.pending_question!;
    box.appendChild(
      el(
        "h3",
        undefined,
        `Question ${v.turn}: person ${asker}, what is the identity of person ${subject}?`,
      ),
    );
    for (const value of ["knight", "spy"] as const) {
      const button = el("button", "", `Answer "${value}"`);
      button.id = `answer-${value}`;
      button.addEventListener("click", () => void this.answer(value));
      box.appendChild(button);
    }
    const hintToggle = el("button", "subtle", this.hintEnabled
      ? "Hide safety hint"
      : "Show safety hint");
    hintToggle.id = "hint-toggle";
    hintToggle.addEventListener("click", () => {
      this.hintEnabled = !this.hintEnabled;
      if (this.hintEnabled) {
        void this.updateHint();
      } else {
        this.hintText = "";
        this.render();
      }
    });
    box.appendChild(hintToggle);
    if (this.hintText) {
      const hint = el("div", "hint", this.hintText);
      hint.id = "hint";
      box.appendChild(hint);
    }
    return box;
  }
}
