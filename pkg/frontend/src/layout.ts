// Static force-directed layout. Computed once per game so vertices do
// not jump between turns; always runs on the full base edge set.

export interface Point {
  x: number;
  y: number;
}

function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function forceLayout(
  n: number,
  edges: [number, number][],
  width = 640,
  height = 420,
  iterations = 250,
): Point[] {
  if (n === 0) return [];
  const rand = mulberry32(0x5eed + n * 7919);
  const pos: Point[] = Array.from({ length: n }, () => ({
    x: width * (0.15 + 0.7 * rand()),
    y: height * (0.15 + 0.7 * rand()),
  }));
  if (n === 1) {
    pos[0] = { x: width / 2, y: height / 2 };
    return pos;
  }
  const area = width * height;
  const k = Math.sqrt(area / n) * 0.7;
  let temperature = width / 8;
  const cool = temperature / (iterations + 1);
  for (let step = 0; step < iterations; step++) {
    const disp: Point[] = Array.from({ length: n }, () => ({ x: 0, y: 0 }));
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        const pi = pos[i]!;
        const pj = pos[j]!;
        let dx = pi.x - pj.x;
        let dy = pi.y - pj.y;
        let dist = Math.hypot(dx, dy);
        if (dist < 1e-6) {
          dx = (rand() - 0.5) * 0.01;
          dy = (rand() - 0.5) * 0.01;
          dist = Math.hypot(dx, dy);
        }
        const repulse = (k * k) / dist;
        disp[i]!.x += (dx / dist) * repulse;
        disp[i]!.y += (dy / dist) * repulse;
        disp[j]!.x -= (dx / dist) * repulse;
        disp[j]!.y -= (dy / dist) * repulse;
      }
    }
    for (const [u, v] of edges) {
      const pu = pos[u]!;
      const pv = pos[v]!;
      let dx = pu.x - pv.x;
      let dy = pu.y - pv.y;
      const dist = Math.max(Math.hypot(dx, dy), 1e-6);
      const attract = (dist * dist) / k;
      disp[u]!.x -= (dx / dist) * attract;
      disp[u]!.y -= (dy / dist) * attract;
      disp[v]!.x += (dx / dist) * attract;
      disp[v]!.y += (dy / dist) * attract;
    }
    for (let i = 0; i < n; i++) {
      const d = disp[i]!;
      const len = Math.max(Math.hypot(d.x, d.y), 1e-6);
      const p = pos[i]!;
      p.x += (d.x / len) * Math.min(len, temperature);
      p.y += (d.y / len) * Math.min(len, temperature);
      p.x = Math.min(width - 24, Math.max(24, p.x));
      p.y = Math.min(height - 24, Math.max(24, p.y));
    }
    temperature -= cool;
  }
  return pos;
}
