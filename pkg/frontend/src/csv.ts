export interface BatchRow {
  n: number;
  max_spies: number;
  spies: number;
  strategy: string;
  behavior: string;
  trials: number;
  mean: number;
  stddev: number;
  min: number;
  max: number;
  violations: number;
  seed: number;
}

export interface HistogramRow {
  questions: number;
  frequency: number;
}

export class CsvFormatError extends Error {}

function splitCsv(text: string): string[][] {
  return text
    .split(/\r?\n/)
    .map((line) => line.trim())
    .filter((line) => line.length > 0)
    .map((line) => line.split(","));
}

/** Parse the simulator's batch CSV (columns are fixed by the engine). */
export function parseBatchCsv(text: string): BatchRow[] {
  const rows = splitCsv(text);
  if (rows.length === 0) {
    return [];
  }
  const header = rows[0];
  const expected = [
    "n", "max_spies", "spies", "strategy", "behavior", "trials",
    "mean", "stddev", "min", "max", "violations", "seed",
  ];
  if (expected.some((name, i) => header[i] !== name)) {
    throw new CsvFormatError(`unexpected header: ${header.join(",")}`);
  }
  return rows.slice(1).map((cells, index) => {
    if (cells.length !== expected.length) {
      throw new CsvFormatError(`row ${index + 2} has ${cells.length} cells`);
    }
    const numeric = (value: string, name: string): number => {
      const parsed = Number(value);
      if (Number.isNaN(parsed)) {
        throw new CsvFormatError(`row ${index + 2}: bad ${name} ${value}`);
      }
      return parsed;
    };
    return {
      n: numeric(cells[0], "n"),
      max_spies: numeric(cells[1], "max_spies"),
      spies: numeric(cells[2], "spies"),
      strategy: cells[3],
      behavior: cells[4],
      trials: numeric(cells[5], "trials"),
      mean: numeric(cells[6], "mean"),
      stddev: numeric(cells[7], "stddev"),
      min: numeric(cells[8], "min"),
      max: numeric(cells[9], "max"),
      violations: numeric(cells[10], "violations"),
      seed: numeric(cells[11], "seed"),
    };
  });
}

export function parseHistogramCsv(text: string): HistogramRow[] {
  const rows = splitCsv(text);
  if (rows.length === 0) {
    return [];
  }
  if (rows[0][0] !== "questions" || rows[0][1] !== "frequency") {
    throw new CsvFormatError(`unexpected header: ${rows[0].join(",")}`);
  }
  return rows.slice(1).map((cells) => ({
    questions: Number(cells[0]),
    frequency: Number(cells[1]),
  }));
}

/** Ordinary least squares fit matching the engine's gradient report. */
export function fitLine(points: Array<[number, number]>): {
  slope: number;
  intercept: number;
} {
  const xs = points.map((p) => p[0]);
  if (new Set(xs).size < 2) {
    throw new CsvFormatError("need two distinct sizes for a gradient");
  }
  const meanX = xs.reduce((a, b) => a + b, 0) / xs.length;
  const meanY = points.reduce((a, p) => a + p[1], 0) / points.length;
  let sxx = 0;
  let sxy = 0;
  for (const [x, y] of points) {
    sxx += (x - meanX) ** 2;
    sxy += (x - meanX) * (y - meanY);
  }
  const slope = sxy / sxx;
  return { slope, intercept: meanY - slope * meanX };
}
