/**
 * Rendering-side geometry: forward projections for SVG vector maps and
 * the validity check for user-drawn polygons. Statistics never happen
 * here; these formulas exist only to place pixels.
 */

import type { ProjectionSpec } from "./protocol.js";

const MERCATOR_RADIUS = 6378137;
const SPHERE_RADIUS = 6371000;
const MAX_LAT = 85.06;

const rad = (d: number) => (d * Math.PI) / 180;

export function projectForward(spec: ProjectionSpec, lon: number, lat: number): [number, number] {
  switch (spec.kind) {
    case "spherical_mercator": {
      const R = (spec.radius_m as number) ?? MERCATOR_RADIUS;
      const phi = rad(Math.max(-MAX_LAT, Math.min(MAX_LAT, lat)));
      return [R * rad(lon), R * Math.asinh(Math.tan(phi))];
    }
    case "equirectangular": {
      const R = (spec.radius_m as number) ?? SPHERE_RADIUS;
      const p1 = rad((spec.standard_parallel as number) ?? 0);
      return [R * rad(lon) * Math.cos(p1), R * rad(lat)];
    }
    case "albers_conic": {
      const R = (spec.radius_m as number) ?? SPHERE_RADIUS;
      const p1 = rad((spec.parallel1 as number) ?? 29.5);
      const p2 = rad((spec.parallel2 as number) ?? 45.5);
      const phi0 = rad((spec.origin_lat as number) ?? 37.5);
      const lam0 = rad((spec.origin_lon as number) ?? -96);
      const n = (Math.sin(p1) + Math.sin(p2)) / 2;
      const C = Math.cos(p1) ** 2 + 2 * n * Math.sin(p1);
      const rho = (R * Math.sqrt(C - 2 * n * Math.sin(rad(lat)))) / n;
      const rho0 = (R * Math.sqrt(C - 2 * n * Math.sin(phi0))) / n;
      const theta = n * (rad(lon) - lam0);
      return [rho * Math.sin(theta), rho0 - rho * Math.cos(theta)];
    }
    case "stereographic": {
      const R = (spec.radius_m as number) ?? SPHERE_RADIUS;
      const phi0 = rad((spec.origin_lat as number) ?? 90);
      const lam0 = rad((spec.origin_lon as number) ?? 0);
      const phi = rad(lat);
      const dlam = rad(lon) - lam0;
      const denom = 1 + Math.sin(phi0) * Math.sin(phi) + Math.cos(phi0) * Math.cos(phi) * Math.cos(dlam);
      const k = (2 * R) / denom;
      return [
        k * Math.cos(phi) * Math.sin(dlam),
        k * (Math.cos(phi0) * Math.sin(phi) - Math.sin(phi0) * Math.cos(phi) * Math.cos(dlam)),
      ];
    }
  }
}

export interface Viewport {
  width: number;
  height: number;
  pad?: number;
}

/**
 * Fit projected coordinates into a pixel viewport (y flipped so north is
 * up). Returns the affine transform shared by every ring on one map.
 */
export function fitTransform(points: [number, number][], vp: Viewport) {
  const pad = vp.pad ?? 8;
  let [minX, minY] = [Infinity, Infinity];
  let [maxX, maxY] = [-Infinity, -Infinity];
  for (const [x, y] of points) {
    minX = Math.min(minX, x); maxX = Math.max(maxX, x);
    minY = Math.min(minY, y); maxY = Math.max(maxY, y);
  }
  const spanX = maxX - minX || 1;
  const spanY = maxY - minY || 1;
  const scale = Math.min((vp.width - 2 * pad) / spanX, (vp.height - 2 * pad) / spanY);
  return (x: number, y: number): [number, number] => [
    pad + (x - minX) * scale,
    vp.height - pad - (y - minY) * scale,
  ];
}

export function ringToPath(
  ring: number[][],
  spec: ProjectionSpec,
  tf: (x: number, y: number) => [number, number],
): string {
  const parts = ring.map(([lon, lat], i) => {
    const [px, py] = tf(...projectForward(spec, lon, lat));
    return `${i === 0 ? "M" : "L"}${px.toFixed(2)},${py.toFixed(2)}`;
  });
  return parts.join("") + "Z";
}

/** Proper segment intersection test for user-drawn polygon validation. */
export function selfIntersects(ring: [number, number][]): boolean {
  const closed = ring[0][0] === ring[ring.length - 1][0] && ring[0][1] === ring[ring.length - 1][1];
  const pts = closed ? ring.slice(0, -1) : ring;
  const n = pts.length;
  if (n < 3) return false;
  const seg = (i: number): [[number, number], [number, number]] => [pts[i], pts[(i + 1) % n]];
  for (let i = 0; i < n; i++) {
    for (let j = i + 1; j < n; j++) {
      if (j === i || (j + 1) % n === i || (i + 1) % n === j) continue; // shared endpoint
      const [a, b] = seg(i);
      const [c, d] = seg(j);
      if (segmentsCross(a, b, c, d)) return true;
    }
  }
  return false;
}

function orient(p: [number, number], q: [number, number], r: [number, number]): number {
  const v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]);
  return v > 0 ? 1 : v < 0 ? -1 : 0;
}

function segmentsCross(a: [number, number], b: [number, number], c: [number, number], d: [number, number]): boolean {
  const o1 = orient(a, b, c);
  const o2 = orient(a, b, d);
  const o3 = orient(c, d, a);
  const o4 = orient(c, d, b);
  return o1 !== o2 && o3 !== o4 && o1 !== 0 && o2 !== 0 && o3 !== 0 && o4 !== 0;
}
