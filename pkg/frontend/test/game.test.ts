// A full scripted five-path game played through the client state
// machine against recorded service exchanges: engine opens, the human
// takes the hinted center, the engine closes the last pair, and the
// summary panel shows the tight three-fifths comparison.

import assert from "node:assert/strict";
import { readFileSync } from "node:fs";
import { test } from "node:test";

import type { Transport } from "../src/api.js";
import { GameClient } from "../src/game.js";

const script = JSON.parse(
  readFileSync(new URL("../../test/fixtures/p5_game.json", import.meta.url), "utf8"),
);

function scriptedTransport(log: string[]): Transport {
  return {
    async get(path: string) {
      log.push(`GET ${path}`);
      if (path.endsWith("/hint")) return script.hint_response;
      throw new Error(`unexpected GET ${path}`);
    },
    async post(path: string, body: unknown) {
      log.push(`POST ${path}`);
      if (path === "/games") {
        assert.deepEqual(body, script.create_request);
        return script.create_response;
      }
      if (path.endsWith("/moves")) {
        assert.deepEqual(body, script.move_request);
        return script.move_response;
      }
      throw new Error(`unexpected POST ${path}`);
    },
  };
}

test("scripted five-path game ends in three turns", async () => {
  const log: string[] = [];
  const client = new GameClient(scriptedTransport(log));

  const opened = await client.newGame(script.create_request);
  assert.deepEqual(opened.clickable, [2, 3, 4]);
  assert.equal(opened.over, false);
  assert.equal(opened.turns, 1);

  // remember where vertex 0 sits; the layout must not move between turns
  const at = (svg: string, v: number) => {
    const match = svg.match(
      new RegExp(`data-vertex="${v}"><circle cx="([0-9.]+)" cy="([0-9.]+)"`),
    );
    assert.ok(match, `vertex ${v} not drawn`);
    return [match![1], match![2]];
  };
  const before = at(opened.svg, 0);

  // clicking a non-legal vertex is inert: no request leaves the client
  const inert = await client.clickVertex(0);
  assert.equal(inert, null);
  assert.deepEqual(log, ["POST /games"]);

  const hint = await client.hint();
  assert.equal(hint, 2);
  const highlighted = client.model()!;
  assert.match(highlighted.svg, /vertex[^"]* hint/);

  const finished = await client.clickVertex(2);
  assert.ok(finished);
  assert.equal(finished!.over, true);
  assert.equal(finished!.turns, 3);
  assert.equal(finished!.clickable.length, 0);
  assert.ok(finished!.summary.some((line) => line.includes("3 <= 3 (3n/5)")));
  assert.ok(finished!.summary.some((line) => line.includes("3 <= 3 (5n/8)")));
  assert.match(finished!.status, /game over in 3 turns/);

  assert.deepEqual(at(finished!.svg, 0), before);

  // nothing is clickable after the end
  assert.equal(await client.clickVertex(3), null);
  assert.deepEqual(log, [
    "POST /games",
    "GET /games/fx-p5-script/hint",
    "POST /games/fx-p5-script/moves",
  ]);
});

test("requests never overlap", async () => {
  let inFlight = 0;
  let overlapped = false;
  const gate: Transport = {
    async get() {
      throw new Error("unused");
    },
    async post(path: string) {
      inFlight += 1;
      if (inFlight > 1) overlapped = true;
      await new Promise((r) => setTimeout(r, 5));
      inFlight -= 1;
      if (path === "/games") return script.create_response;
      return script.move_response;
    },
  };
  const client = new GameClient(gate);
  const first = client.newGame(script.create_request);
  // a click during the opening request must be dropped, not queued
  const second = client.clickVertex(2);
  assert.equal(await second, null);
  await first;
  assert.equal(overlapped, false);
});
