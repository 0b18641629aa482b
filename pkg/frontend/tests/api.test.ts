import { createServer, type Server } from "node:http";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

let server: Server;
let base: string;
let hits: string[] = [];

beforeAll(async () => {
  server = createServer((req, res) => {
    hits.push(`${req.method} ${req.url}`);
    if (req.url?.includes("boom")) {
      res.writeHead(400, { "Content-Type": "application/json" });
      res.end(JSON.stringify({ error: "bad input" }));
      return;
    }
    res.writeHead(200, { "Content-Type": "application/json" });
    res.end(JSON.stringify({ author: "coordinator", text: "ok" }));
  });
  await new Promise<void>((resolve) => server.listen(0, "127.0.0.1", resolve));
  const addr = server.address();
  if (addr && typeof addr === "object") base = `http://127.0.0.1:${addr.port}`;
});

afterAll(() => server.close());

describe("ApiClient", () => {
  it("logs every request it makes", async () => {
    const api = new ApiClient(base);
    await api.chat("s1", "hello");
    expect(api.requestLog).toEqual([{ method: "POST", path: "/v1/sessions/s1/chat" }]);
  });

  it("raises ApiError with the server's message and does not retry", async () => {
    const api = new ApiClient(base);
    hits = [];
    await expect(api.applyPatch("boom", "p1")).rejects.toThrowError(ApiError);
    await expect(api.applyPatch("boom", "p1")).rejects.toThrow("bad input");
    // one network hit per call: mutating requests are never retried silently
    expect(hits).toHaveLength(2);
  });
});
