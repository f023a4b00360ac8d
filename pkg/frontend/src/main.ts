import { ApiError, GameClient } from "./api";
import { PlayScreen } from "./play";
import { ResultsScreen } from "./results";

/** App shell: a setup form that creates a game session, the live play
 * screen, and the results panel for simulator CSVs. */
export class App {
  constructor(
    private root: HTMLElement,
    private client: GameClient = new GameClient(),
  ) {}

  mount(): void {
    this.showSetup();
  }

  showSetup(): void {
    this.root.replaceChildren();
    const form = document.createElement("div");
    form.className = "setup";
    form.innerHTML = `
      <h1>Knights and Spies</h1>
      <p>Pick the room, your side, and the engine opponent.</p>
      <label>People <input id="setup-n" type="number" value="5" min="3"></label>
      <label>Spy bound <input id="setup-bound" type="number" value="2" min="1"></label>
      <label>Your side
        <select id="setup-side">
          <option value="interrogator">Interrogator</option>
          <option value="secret-keeper">Secret-Keeper</option>
        </select>
      </label>
      <label>Engine interrogator
        <select id="setup-strategy">
          <option>spider</option>
          <option>modified-spider</option>
          <option>chain-building</option>
          <option>majority</option>
        </select>
      </label>
      <label>Engine keeper
        <select id="setup-keeper">
          <option>mole</option>
          <option>knavish</option>
          <option>spyish</option>
          <option>truthful</option>
        </select>
      </label>
      <button id="setup-start">Start game</button>
      <button id="setup-results">Simulation results</button>
      <div id="setup-error" class="banner error" hidden></div>
    `;
    this.root.appendChild(form);

    const grab = <T extends HTMLElement>(id: string): T =>
      form.querySelector(`#${id}`) as T;

    grab<HTMLButtonElement>("setup-start").addEventListener("click", () => {
      void this.startGame(
        Number(grab<HTMLInputElement>("setup-n").value),
        Number(grab<HTMLInputElement>("setup-bound").value),
        grab<HTMLSelectElement>("setup-side").value,
        grab<HTMLSelectElement>("setup-strategy").value,
        grab<HTMLSelectElement>("setup-keeper").value,
      );
    });
    grab<HTMLButtonElement>("setup-results").addEventListener("click", () => {
      this.root.replaceChildren();
      new ResultsScreen(this.root);
    });
  }

  async startGame(
    n: number,
    bound: number,
    side: string,
    strategy: string,
    keeper: string,
  ): Promise<PlayScreen | null> {
    const options =
      side === "interrogator"
        ? { n, max_spies: bound, interrogator: "human", secret_keeper: keeper }
        : { n, max_spies: bound, interrogator: strategy, secret_keeper: "human" };
    try {
      const view = await this.client.createGame(options);
      this.root.replaceChildren();
      return new PlayScreen(this.client, this.root, view, () => this.showSetup());
    } catch (error) {
      const banner = this.root.querySelector<HTMLElement>("#setup-error");
      if (banner) {
        banner.hidden = false;
        banner.textContent =
          error instanceof ApiError
            ? `${error.code}: ${error.message}`
            : String(error);
      }
      return null;
    }
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  new App(document.getElementById("app")!).mount();
}
