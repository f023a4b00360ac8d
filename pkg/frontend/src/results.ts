import {
  BatchRow,
  CsvFormatError,
  HistogramRow,
  fitLine,
  parseBatchCsv,
  parseHistogramCsv,
} from "./csv";

const SVG_NS = "http://www.w3.org/2000/svg";

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

/** Histogram of question counts, one bar per bin, in the style of the
 * engine's per-batch histogram CSV. */
export function renderHistogram(
  container: HTMLElement,
  rows: HistogramRow[],
  title: string,
): void {
  const width = 480;
  const height = 260;
  const svg = svgEl("svg", {
    viewBox: `0 0 ${width} ${height}`,
    class: "chart histogram",
  });
  const peak = Math.max(...rows.map((r) => r.frequency), 1);
  const low = Math.min(...rows.map((r) => r.questions));
  const high = Math.max(...rows.map((r) => r.questions));
  const span = Math.max(high - low + 1, 1);
  const barWidth = (width - 60) / span;
  for (const row of rows) {
    const barHeight = (row.frequency / peak) * (height - 60);
    svg.appendChild(
      svgEl("rect", {
        x: String(40 + (row.questions - low) * barWidth),
        y: String(height - 30 - barHeight),
        width: String(Math.max(barWidth - 1, 1)),
        height: String(barHeight),
        class: "bar",
      }),
    );
  }
  for (const q of [low, high]) {
    const label = svgEl("text", {
      x: String(40 + (q - low) * barWidth + barWidth / 2),
      y: String(height - 12),
      "text-anchor": "middle",
      class: "axis-label",
    });
    label.textContent = String(q);
    svg.appendChild(label);
  }
  const heading = document.createElement("h3");
  heading.textContent = title;
  container.appendChild(heading);
  container.appendChild(svg);
}

/** Mean questions against room size with the fitted gradient annotated. */
export function renderMeanLine(container: HTMLElement, rows: BatchRow[]): void {
  const groups = new Map<string, BatchRow[]>();
  for (const row of rows) {
    const key = `${row.strategy} vs ${row.behavior}`;
    (groups.get(key) ?? groups.set(key, []).get(key)!).push(row);
  }
  for (const [key, batch] of groups) {
    batch.sort((a, b) => a.n - b.n);
    const points = batch.map((r) => [r.n, r.mean] as [number, number]);
    const width = 480;
    const height = 260;
    const svg = svgEl("svg", {
      viewBox: `0 0 ${width} ${height}`,
      class: "chart mean-line",
    });
    const xs = points.map((p) => p[0]);
    const ys = points.map((p) => p[1]);
    const minX = Math.min(...xs);
    const maxX = Math.max(...xs);
    const minY = Math.min(...ys);
    const maxY = Math.max(...ys);
    const sx = (x: number) =>
      40 + ((x - minX) / Math.max(maxX - minX, 1)) * (width - 80);
    const sy = (y: number) =>
      height - 30 - ((y - minY) / Math.max(maxY - minY, 1)) * (height - 70);
    let path = "";
    for (const [x, y] of points) {
      path += `${path ? "L" : "M"}${sx(x).toFixed(1)},${sy(y).toFixed(1)}`;
      svg.appendChild(
        svgEl("circle", {
          cx: sx(x).toFixed(1),
          cy: sy(y).toFixed(1),
          r: "4",
          class: "point",
        }),
      );
    }
    svg.appendChild(svgEl("path", { d: path, class: "line", fill: "none" }));

    const heading = document.createElement("h3");
    heading.textContent = key;
    container.appendChild(heading);
    if (points.length >= 2) {
      const { slope } = fitLine(points);
      const note = document.createElement("div");
      note.className = "slope-note";
      note.textContent = `fitted gradient ${slope.toFixed(3)}`;
      container.appendChild(note);
    }
    container.appendChild(svg);
  }
}

/** The results panel: paste or load the simulator's CSV output. */
export class ResultsScreen {
  constructor(private root: HTMLElement) {
    this.render();
  }

  render(): void {
    this.root.replaceChildren();
    const intro = document.createElement("p");
    intro.textContent =
      "Paste CSV output from the simulator (batch report or histogram).";
    const input = document.createElement("textarea");
    input.id = "csv-input";
    input.rows = 8;
    const button = document.createElement("button");
    button.id = "render-csv";
    button.textContent = "Render";
    const output = document.createElement("div");
    output.id = "charts";
    button.addEventListener("click", () => {
      output.replaceChildren();
      const text = input.value;
      try {
        if (text.trimStart().startsWith("questions")) {
          const rows = parseHistogramCsv(text);
          if (rows.length === 0) {
            output.textContent = "No rows to chart.";
            return;
          }
          renderHistogram(output, rows, "Question counts");
        } else {
          const rows = parseBatchCsv(text);
          if (rows.length === 0) {
            output.textContent = "No rows to chart.";
            return;
          }
          renderMeanLine(output, rows);
        }
      } catch (error) {
        const banner = document.createElement("div");
        banner.className = "banner error";
        banner.textContent =
          error instanceof CsvFormatError
            ? `Bad CSV: ${error.message}`
            : String(error);
        output.appendChild(banner);
      }
    });
    this.root.appendChild(intro);
    this.root.appendChild(input);
    this.root.appendChild(button);
    this.root.appendChild(output);
  }
}
