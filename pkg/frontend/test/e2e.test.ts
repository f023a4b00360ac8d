// @vitest-environment jsdom
//
// Scripted browser session against the real engine: a human Interrogator
// plays a 5-person, 2-spy game against the adaptive keeper through the
// DOM, ending in a draw after the full six questions, with one premature
// claim refuted along the way.
import { spawn, ChildProcess } from "node:child_process";
import { createServer } from "node:net";
import path from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { GameClient } from "../src/api";
import { App } from "../src/main";
import { PlayScreen } from "../src/play";

const REPO_ROOT = path.resolve(
  path.dirname(fileURLToPath(import.meta.url)),
  "..",
  "..",
);

let server: ChildProcess;
let port: number;

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = createServer();
    probe.once("error", reject);
    probe.listen(0, "127.0.0.1", () => {
      const address = probe.address();
      if (address && typeof address === "object") {
        const chosen = address.port;
        probe.close(() => resolve(chosen));
      } else {
        reject(new Error("no address"));
      }
    });
  });
}

async function waitFor<T>(
  probe: () => T | null | undefined,
  what: string,
  timeoutMs = 5000,
): Promise<T> {
  const start = Date.now();
  for (;;) {
    const value = probe();
    if (value !== null && value !== undefined && value !== false) {
      return value as T;
    }
    if (Date.now() - start > timeoutMs) {
      throw new Error(`timed out waiting for ${what}`);
    }
    await new Promise((r) => setTimeout(r, 25));
  }
}

beforeAll(async () => {
  port = await freePort();
  server = spawn(
    "python3",
    ["-u", "-m", "knightspies.cli", "serve", "--port", String(port)],
    {
      cwd: REPO_ROOT,
      env: {
        ...process.env,
        PYTHONPATH: path.join(REPO_ROOT, "src"),
      },
      stdio: ["ignore", "pipe", "pipe"],
    },
  );
  await new Promise<void>((resolve, reject) => {
    const timer = setTimeout(() => reject(new Error("server not up")), 10000);
    server.stdout!.on("data", (chunk: Buffer) => {
      if (chunk.toString().includes("serving on")) {
        clearTimeout(timer);
        resolve();
      }
    });
    server.on("exit", (code: number | null) => reject(new Error(`server exited ${code}`)));
  });
}, 20000);

afterAll(() => {
  server?.kill();
});

function base(): string {
  return `http://127.0.0.1:${port}`;
}

describe("live play", () => {
  it("plays the five-person game to a draw at six questions", async () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    const client = new GameClient(base());
    const app = new App(root, client);

    const screen = await app.startGame(5, 2, "interrogator", "spider", "mole");
    expect(screen).toBeInstanceOf(PlayScreen);
    const gameId = screen!.gameId;
    await waitFor(() => root.querySelector("#ask"), "play screen");

    const askThrough = async (asker: number, subject: number) => {
      const askerSelect = root.querySelector<HTMLSelectElement>("#asker")!;
      askerSelect.value = String(asker);
      askerSelect.dispatchEvent(new Event("change"));
      const subjectSelect = root.querySelector<HTMLSelectElement>("#subject")!;
      const option = Array.from(subjectSelect.options).find(
        (o) => o.value === String(subject),
      )!;
      expect(option.disabled).toBe(false);
      subjectSelect.value = String(subject);
      const before = root.querySelectorAll("line.edge").length;
      root.querySelector<HTMLButtonElement>("#ask")!.click();
      await waitFor(
        () => root.querySelectorAll("line.edge").length === before + 1,
        `edge ${before + 1}`,
      );
    };

    // one opening question, then a premature claim that must be refuted
    await askThrough(1, 2);
    root
      .querySelector<HTMLButtonElement>('button[data-claim-seat="2"]')!
      .click();
    root.querySelector<HTMLButtonElement>("#claim")!.click();
    const banner = await waitFor(() => {
      const node = root.querySelector<HTMLElement>("#banner");
      return node?.textContent?.includes("Refuted") ? node : null;
    }, "refutation banner");
    expect(banner.textContent).toContain("consistent set");
    await waitFor(
      () => root.querySelectorAll("g.seat-witness").length > 0,
      "witness highlight",
    );

    // the remaining five questions of the squeeze
    for (const [asker, subject] of [
      [3, 4],
      [4, 5],
      [5, 3],
      [3, 1],
      [4, 2],
    ] as const) {
      await askThrough(asker, subject);
    }

    // progress shows the full question target reached
    expect(
      root.querySelector(".progress-text")!.textContent,
    ).toContain("6 / 6");

    // claim the unique spy set: seat 1
    root
      .querySelector<HTMLButtonElement>('button[data-claim-seat="1"]')!
      .click();
    root.querySelector<HTMLButtonElement>("#claim")!.click();
    const outcome = await waitFor(
      () => root.querySelector<HTMLElement>("#outcome"),
      "outcome panel",
    );
    expect(outcome.textContent).toContain("draw");
    expect(outcome.textContent).toContain("{1}");

    // rendered edges match the server transcript one to one
    const edges = Array.from(root.querySelectorAll("line.edge")).map((e) => {
      const line = e as SVGLineElement;
      return [
        Number(line.dataset.turn),
        Number(line.dataset.asker),
        Number(line.dataset.subject),
        line.dataset.answer,
      ];
    });
    expect(edges).toHaveLength(6);
    const state = await client.getGame(gameId);
    expect(state.outcome).toBe("draw");
    expect(state.transcript).toHaveLength(6);
    const serverEdges = state.transcript.map((t) => [
      t.turn,
      t.asker,
      t.subject,
      t.answer,
    ]);
    expect(edges).toEqual(serverEdges);
    document.body.removeChild(root);
  }, 30000);

  it("keeper view offers the safety hint", async () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    const client = new GameClient(base());
    const app = new App(root, client);
    await app.startGame(5, 2, "secret-keeper", "spider", "mole");
    await waitFor(() => root.querySelector("#answer-knight"), "answer buttons");
    root.querySelector<HTMLButtonElement>("#hint-toggle")!.click();
    const hint = await waitFor(
      () => root.querySelector<HTMLElement>("#hint"),
      "hint text",
    );
    expect(hint.textContent).toContain("consistent sets");
    document.body.removeChild(root);
  }, 30000);
});
