/** Log display mapping and the dark-to-bright gradient used by the
 * heatmaps; mirrors the server-side rendering so exported PNGs and the
 * canvas agree. */

export const MISSING_COLOR = "rgb(40,40,40)";
export const SELECTION_COLOR = "rgb(255,64,32)";
export const CURSOR_COLOR = "rgb(255,140,40)";

const ANCHORS: [number, number, number][] = [
  [68, 1, 84], [72, 24, 106], [71, 45, 123], [66, 64, 134],
  [59, 82, 139], [51, 99, 141], [44, 114, 142], [38, 130, 142],
  [33, 145, 140], [31, 160, 136], [40, 174, 128], [63, 188, 115],
  [94, 201, 98], [132, 212, 75], [173, 220, 48], [216, 226, 25],
  [253, 231, 37],
];

export function logMap(value: number, floor: number): number {
  return Math.log10(value + floor) - Math.log10(floor);
}

export function gradient(position: number): [number, number, number] {
  const x = Math.min(Math.max(position, 0), 1) * (ANCHORS.length - 1);
  const j = Math.min(Math.floor(x), ANCHORS.length - 2);
  const f = x - j;
  const a = ANCHORS[j];
  const b = ANCHORS[j + 1];
  return [
    Math.round(a[0] + f * (b[0] - a[0])),
    Math.round(a[1] + f * (b[1] - a[1])),
    Math.round(a[2] + f * (b[2] - a[2])),
  ];
}

export function gradientCss(position: number): string {
  const [r, g, b] = gradient(position);
  return `rgb(${r},${g},${b})`;
}
