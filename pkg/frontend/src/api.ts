// Thin JSON transport. Injected into the client so tests can replay
// recorded exchanges without a server.

export interface Transport {
  get(path: string): Promise<any>;
  post(path: string, body: unknown): Promise<any>;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

async function parse(resp: Response): Promise<any> {
  const body = await resp.json().catch(() => ({}));
  if (!resp.ok) {
    throw new ApiError(resp.status, body?.error ?? `HTTP ${resp.status}`);
  }
  return body;
}

export function httpTransport(baseUrl = ""): Transport {
  return {
    async get(path: string) {
      return parse(await fetch(baseUrl + path));
    },
    async post(path: string, body: unknown) {
      return parse(
        await fetch(baseUrl + path, {
          method: "POST",
          headers: { "Content-Type": "application/json" },
          body: JSON.stringify(body),
        }),
      );
    },
  };
}
