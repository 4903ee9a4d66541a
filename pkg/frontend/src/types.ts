/** Shapes of the JSON documents served by the pyramid HTTP API. */

/** Rational nanoseconds: plain integers or [numerator, denominator]. */
export type PeriodNs = number | [number, number];

export interface LevelInfo {
  level: number;
  label: string;
  period_ns: PeriodNs;
  count: number;
  missing: [number, number][];
  origin_ns: number;
}

export interface ManifestDoc {
  levels: LevelInfo[];
  width: number;
  height: number;
  channels: number;
  base_period_ns: PeriodNs;
  origin_ns: number;
  strides: number[];
  day_level: number | null;
  year_level: number | null;
  drop_days: string[];
}

export interface SpectrogramRow {
  level: number;
  origin_ns: number;
  period_ns: PeriodNs;
  first_slot: number;
  norms: number[];
  log: number[];
  missing: boolean[];
}

export interface SpectrogramDoc {
  levels: SpectrogramRow[];
  epsilon: number;
  norm: string;
}
