import type { TranscriptEntry } from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";

interface NodePosition {
  x: number;
  y: number;
}

/** Force-directed layout: seats repel, question edges attract, and the
 * current focal seat (the most-questioned subject) is pinned centre. */
export function layoutSeats(
  n: number,
  entries: TranscriptEntry[],
  width: number,
  height: number,
  focal: number | null,
): Map<number, NodePosition> {
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) / 2 - 40;
  const pos = new Map<number, NodePosition>();
  for (let seat = 1; seat <= n; seat++) {
    const angle = (2 * Math.PI * (seat - 1)) / n - Math.PI / 2;
    pos.set(seat, {
      x: cx + radius * Math.cos(angle),
      y: cy + radius * Math.sin(angle),
    });
  }
  const edges = entries.map((e) => [e.asker, e.subject] as const);
  for (let iter = 0; iter < 120; iter++) {
    const force = new Map<number, NodePosition>();
    for (let seat = 1; seat <= n; seat++) force.set(seat, { x: 0, y: 0 });
    for (let a = 1; a <= n; a++) {
      for (let b = a + 1; b <= n; b++) {
        const pa = pos.get(a)!;
        const pb = pos.get(b)!;
        let dx = pa.x - pb.x;
        let dy = pa.y - pb.y;
        const dist2 = Math.max(dx * dx + dy * dy, 25);
        const push = 12000 / dist2;
        const dist = Math.sqrt(dist2);
        dx /= dist;
        dy /= dist;
        force.get(a)!.x += dx * push;
        force.get(a)!.y += dy * push;
        force.get(b)!.x -= dx * push;
        force.get(b)!.y -= dy * push;
      }
    }
    for (const [a, b] of edges) {
      const pa = pos.get(a)!;
      const pb = pos.get(b)!;
      const dx = pb.x - pa.x;
      const dy = pb.y - pa.y;
      const dist = Math.max(Math.sqrt(dx * dx + dy * dy), 1);
      const pull = (dist - 110) * 0.02;
      force.get(a)!.x += (dx / dist) * pull;
      force.get(a)!.y += (dy / dist) * pull;
      force.get(b)!.x -= (dx / dist) * pull;
      force.get(b)!.y -= (dy / dist) * pull;
    }
    const damping = 0.6;
    for (let seat = 1; seat <= n; seat++) {
      if (seat === focal) {
        pos.set(seat, { x: cx, y: cy });
        continue;
      }
      const p = pos.get(seat)!;
      const f = force.get(seat)!;
      p.x = Math.min(width - 24, Math.max(24, p.x + f.x * damping));
      p.y = Math.min(height - 24, Math.max(24, p.y + f.y * damping));
    }
  }
  return pos;
}

/** Pick the seat that has been asked about most often as the focal
 * centre, echoing the star shape of candidate hunting. */
export function focalSeat(entries: TranscriptEntry[]): number | null {
  const counts = new Map<number, number>();
  for (const e of entries) {
    counts.set(e.subject, (counts.get(e.subject) ?? 0) + 1);
  }
  let best: number | null = null;
  let bestCount = 1; // need at least two questions to count as focal
  for (const [seat, count] of counts) {
    if (count > bestCount || (count === bestCount && best !== null && seat < best)) {
      best = seat;
      bestCount = count;
    }
  }
  return best;
}

export interface GraphRenderOptions {
  width?: number;
  height?: number;
  highlight?: Set<number>;
}

/** Render the transcript as an SVG digraph: one edge per entry, green for
 * supportive answers, red for accusations, turn numbers in bold. */
export function renderQuestionGraph(
  container: HTMLElement,
  n: number,
  entries: TranscriptEntry[],
  options: GraphRenderOptions = {},
): SVGSVGElement {
  const width = options.width ?? 520;
  const height = options.height ?? 420;
  const highlight = options.highlight ?? new Set<number>();
  const positions = layoutSeats(n, entries, width, height, focalSeat(entries));

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("class", "question-graph");

  const defs = document.createElementNS(SVG_NS, "defs");
  for (const [id, color] of [
    ["arrow-support", "#2e7d32"],
    ["arrow-accuse", "#c62828"],
  ] as const) {
    const marker = document.createElementNS(SVG_NS, "marker");
    marker.setAttribute("id", id);
    marker.setAttribute("viewBox", "0 0 10 10");
    marker.setAttribute("refX", "22");
    marker.setAttribute("refY", "5");
    marker.setAttribute("markerWidth", "7");
    marker.setAttribute("markerHeight", "7");
    marker.setAttribute("orient", "auto-start-reverse");
    const tip = document.createElementNS(SVG_NS, "path");
    tip.setAttribute("d", "M 0 0 L 10 5 L 0 10 z");
    tip.setAttribute("fill", color);
    marker.appendChild(tip);
    defs.appendChild(marker);
  }
  svg.appendChild(defs);

  for (const entry of entries) {
    const from = positions.get(entry.asker)!;
    const to = positions.get(entry.subject)!;
    const supportive = entry.answer === "knight";
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", from.x.toFixed(1));
    line.setAttribute("y1", from.y.toFixed(1));
    line.setAttribute("x2", to.x.toFixed(1));
    line.setAttribute("y2", to.y.toFixed(1));
    line.setAttribute("stroke", supportive ? "#2e7d32" : "#c62828");
    line.setAttribute("stroke-width", "2");
    line.setAttribute(
      "marker-end",
      supportive ? "url(#arrow-support)" : "url(#arrow-accuse)",
    );
    line.setAttribute("class", `edge edge-${entry.answer}`);
    line.dataset.turn = String(entry.turn);
    line.dataset.asker = String(entry.asker);
    line.dataset.subject = String(entry.subject);
    line.dataset.answer = entry.answer;
    svg.appendChild(line);

    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", ((from.x + to.x) / 2 + 6).toFixed(1));
    label.setAttribute("y", ((from.y + to.y) / 2 - 4).toFixed(1));
    label.setAttribute("class", "turn-label");
    label.textContent = String(entry.turn);
    svg.appendChild(label);
  }

  for (let seat = 1; seat <= n; seat++) {
    const p = positions.get(seat)!;
    const group = document.createElementNS(SVG_NS, "g");
    group.setAttribute("class", highlight.has(seat) ? "seat seat-witness" : "seat");
    group.dataset.seat = String(seat);
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", p.x.toFixed(1));
    circle.setAttribute("cy", p.y.toFixed(1));
    circle.setAttribute("r", "16");
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", p.x.toFixed(1));
    label.setAttribute("y", (p.y + 4).toFixed(1));
    label.setAttribute("text-anchor", "middle");
    label.textContent = String(seat);
    group.appendChild(circle);
    group.appendChild(label);
    svg.appendChild(group);
  }

  container.replaceChildren(svg);
  return svg;
}
