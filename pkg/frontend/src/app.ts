// Browser glue: forms, board mounting, click delegation, toasts.

import { ApiError, httpTransport } from "./api.js";
import { GameClient } from "./game.js";
import type { NewGamePayload, Side } from "./types.js";

const client = new GameClient(httpTransport(""));

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function toast(message: string): void {
  const box = el<HTMLDivElement>("toast");
  box.textContent = message;
  box.classList.add("visible");
  setTimeout(() => box.classList.remove("visible"), 3500);
}

function paint(): void {
  const model = client.model();
  if (!model) return;
  el<HTMLDivElement>("board").innerHTML = model.svg;
  el<HTMLDivElement>("status").textContent = model.status;
  el<HTMLUListElement>("summary").innerHTML = model.summary
    .map((line) => `<li>${line}</li>`)
    .join("");
  el<HTMLButtonElement>("hint").disabled = model.over || client.busy;
  for (const node of document.querySelectorAll<SVGGElement>("g.vertex.clickable")) {
    node.addEventListener("click", () => {
      const vertex = Number(node.dataset.vertex);
      void act(() => client.clickVertex(vertex));
    });
  }
}

async function act(run: () => Promise<unknown>): Promise<void> {
  document.body.classList.add("busy");
  try {
    await run();
  } catch (err) {
    toast(err instanceof ApiError ? err.message : String(err));
  } finally {
    document.body.classList.remove("busy");
    paint();
  }
}

function payloadFromForm(): NewGamePayload {
  const human = el<HTMLSelectElement>("side").value as Side;
  const start = el<HTMLSelectElement>("start").value as Side;
  const policy = el<HTMLSelectElement>("policy").value;
  const edgeList = el<HTMLTextAreaElement>("edges").value.trim();
  const base: NewGamePayload = { human, start, staller_policy: policy };
  if (edgeList) {
    return { ...base, edge_list: edgeList };
  }
  return {
    ...base,
    generator: {
      kind: el<HTMLSelectElement>("kind").value,
      n: Number(el<HTMLInputElement>("size").value),
      seed: Number(el<HTMLInputElement>("seed").value),
    },
  };
}

export function boot(): void {
  el<HTMLButtonElement>("new-game").addEventListener("click", () => {
    void act(() => client.newGame(payloadFromForm()));
  });
  el<HTMLButtonElement>("hint").addEventListener("click", () => {
    void act(async () => {
      const vertex = await client.hint();
      if (vertex !== null) toast(`hint: play ${vertex}`);
    });
  });
}

boot();
