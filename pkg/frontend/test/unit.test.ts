// @vitest-environment jsdom
import { describe, expect, it } from "vitest";

import { CsvFormatError, fitLine, parseBatchCsv, parseHistogramCsv } from "../src/csv";
import { focalSeat, layoutSeats, renderQuestionGraph } from "../src/graph";
import type { TranscriptEntry } from "../src/types";

describe("csv parsing", () => {
  const header =
    "n,max_spies,spies,strategy,behavior,trials,mean,stddev,min,max,violations,seed";

  it("parses batch rows", () => {
    const rows = parseBatchCsv(
      `${header}\n40,19,19,chain-building,spyish,1000,52.1,2.0,44,58,0,7\n`,
    );
    expect(rows).toHaveLength(1);
    expect(rows[0].strategy).toBe("chain-building");
    expect(rows[0].mean).toBeCloseTo(52.1);
  });

  it("rejects malformed headers", () => {
    expect(() => parseBatchCsv("a,b,c\n1,2,3\n")).toThrow(CsvFormatError);
  });

  it("handles empty input", () => {
    expect(parseBatchCsv("")).toEqual([]);
    expect(parseHistogramCsv("")).toEqual([]);
  });

  it("parses histograms", () => {
    const rows = parseHistogramCsv("questions,frequency\n12,100\n13,3\n");
    expect(rows).toEqual([
      { questions: 12, frequency: 100 },
      { questions: 13, frequency: 3 },
    ]);
  });

  it("fits exact lines", () => {
    const { slope, intercept } = fitLine([
      [10, 15],
      [20, 30],
      [30, 45],
    ]);
    expect(slope).toBeCloseTo(1.5);
    expect(intercept).toBeCloseTo(0);
  });
});

describe("graph rendering", () => {
  const entries: TranscriptEntry[] = [
    { turn: 1, asker: 1, subject: 2, answer: "spy" },
    { turn: 2, asker: 3, subject: 2, answer: "knight" },
    { turn: 3, asker: 4, subject: 2, answer: "knight" },
  ];

  it("centres the most-questioned seat", () => {
    expect(focalSeat(entries)).toBe(2);
    const pos = layoutSeats(5, entries, 500, 400, 2);
    expect(pos.get(2)).toEqual({ x: 250, y: 200 });
  });

  it("renders one edge per transcript entry", () => {
    const host = document.createElement("div");
    renderQuestionGraph(host, 5, entries);
    const edges = host.querySelectorAll("line.edge");
    expect(edges).toHaveLength(3);
    expect(
      Array.from(edges).map((e) => (e as SVGLineElement).dataset.turn),
    ).toEqual(["1", "2", "3"]);
    expect(host.querySelectorAll(".edge-spy")).toHaveLength(1);
    expect(host.querySelectorAll(".edge-knight")).toHaveLength(2);
    expect(host.querySelectorAll("g.seat")).toHaveLength(5);
  });

  it("marks witness seats", () => {
    const host = document.createElement("div");
    renderQuestionGraph(host, 5, entries, { highlight: new Set([4]) });
    const witness = host.querySelectorAll("g.seat-witness");
    expect(witness).toHaveLength(1);
    expect((witness[0] as SVGGElement).dataset.seat).toBe("4");
  });
});
