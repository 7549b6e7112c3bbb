// Contract: the board renders exactly what the service said, for every
// recorded fixture state: same legal-move set, same colors, one node
// per vertex, caps in the summary. No game rule is recomputed here.

import assert from "node:assert/strict";
import { readFileSync } from "node:fs";
import { test } from "node:test";

import { forceLayout } from "../src/layout.js";
import { renderBoard, FILL } from "../src/board.js";
import type { GameView } from "../src/types.js";

interface Fixture {
  name: string;
  view: GameView;
}

const fixtures: Fixture[] = JSON.parse(
  readFileSync(new URL("../../test/fixtures/states.json", import.meta.url), "utf8"),
);

test("ten recorded states are present", () => {
  assert.equal(fixtures.length, 10);
});

for (const { name, view } of fixtures) {
  test(`render matches the service view: ${name}`, () => {
    const layout = forceLayout(view.n, view.base_edges);
    const model = renderBoard(view, layout);

    const expectedLegal = view.vertices
      .filter((v) => v.legal)
      .map((v) => v.id)
      .sort((a, b) => a - b);
    assert.deepEqual([...model.clickable].sort((a, b) => a - b), expectedLegal);

    for (const v of view.vertices) {
      assert.equal(model.colors[v.id], v.color);
      assert.ok(
        model.svg.includes(`data-vertex="${v.id}"`),
        `vertex ${v.id} missing from the SVG`,
      );
      assert.ok(model.svg.includes(`fill="${FILL[v.color]}"`));
    }

    const gNodes = model.svg.match(/<g class="vertex/g) ?? [];
    assert.equal(gNodes.length, view.n);

    const clickMarks = model.svg.match(/vertex clickable/g) ?? [];
    assert.equal(clickMarks.length, expectedLegal.length);

    if (view.over) {
      assert.match(model.status, /game over in \d+ turns/);
      assert.equal(model.clickable.length, 0);
    }
    assert.ok(model.summary.some((line) => line.includes("(3n/5)")));
    assert.ok(model.summary.some((line) => line.includes("(5n/8)")));
  });
}

test("finished five-path shows the tight cap comparison", () => {
  const fx = fixtures.find((f) => f.name === "p5-finished")!;
  const model = renderBoard(fx.view, forceLayout(fx.view.n, fx.view.base_edges));
  assert.equal(model.turns, 3);
  assert.ok(model.summary.some((line) => line.includes("3 <= 3 (3n/5)")));
  assert.ok(model.summary.some((line) => line.includes("3 <= 3 (5n/8)")));
});

test("critical turns are surfaced in the summary", () => {
  const fx = fixtures.find((f) => f.name === "critical-tree-mid-game")!;
  const model = renderBoard(fx.view, forceLayout(fx.view.n, fx.view.base_edges));
  assert.ok(model.summary.some((line) => line.includes("(critical)")));
});

test("hint highlight marks exactly one vertex", () => {
  const fx = fixtures.find((f) => f.name === "p5-after-engine-opening")!;
  const layout = forceLayout(fx.view.n, fx.view.base_edges);
  const model = renderBoard(fx.view, layout, 2);
  const hints = model.svg.match(/vertex[^"]* hint/g) ?? [];
  assert.equal(hints.length, 1);
});

test("layout is deterministic and in-bounds", () => {
  const fx = fixtures.find((f) => f.name === "tree12-generated")!;
  const a = forceLayout(fx.view.n, fx.view.base_edges);
  const b = forceLayout(fx.view.n, fx.view.base_edges);
  assert.deepEqual(a, b);
  for (const p of a) {
    assert.ok(p.x >= 0 && p.x <= 640 && p.y >= 0 && p.y <= 420);
  }
});
