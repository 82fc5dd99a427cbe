// Round-trip against the real curation service: the queue controller
// accepts a candidate, the server's list reflects it, the decision log
// grows by exactly one line, and the ancestry panel mirrors /terms.
//
// Requires python3 with the frame-align package importable; set
// FRAME_ALIGN_SKIP_INTEGRATION=1 to skip (unit tests cover the rest).

import { ChildProcess, spawn } from "node:child_process";
import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join, resolve } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { CurationApi } from "../src/api.js";
import { TermContextPanel } from "../src/context.js";
import { ReviewQueue } from "../src/queue.js";

const REPO_ROOT = resolve(dirname(fileURLToPath(import.meta.url)), "..", "..");
const FIXTURES = join(REPO_ROOT, "fixtures", "s3");
const PORT = 8300 + (process.pid % 500);
const BASE = `http://127.0.0.1:${PORT}`;
const SKIP = process.env.FRAME_ALIGN_SKIP_INTEGRATION === "1";

let service: ChildProcess | null = null;
let logPath = "";

async function waitForService(timeoutMs = 20000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  let lastError: unknown = null;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/frames`);
      if (response.ok) return;
    } catch (error) {
      lastError = error;
    }
    await new Promise((resolveSleep) => setTimeout(resolveSleep, 200));
  }
  throw new Error(`curation service did not come up on ${BASE}: ${lastError}`);
}

function logLines(): string[] {
  try {
    return readFileSync(logPath, "utf-8").split("\n").filter(Boolean);
  } catch {
    return [];
  }
}

describe.skipIf(SKIP)("review queue against the live service", () => {
  beforeAll(async () => {
    logPath = join(mkdtempSync(join(tmpdir(), "frame-align-")), "decisions.jsonl");
    service = spawn(
      "python3",
      [
        "-m", "frame_align.cli", "serve",
        "--obo", join(FIXTURES, "mini_go.obo"),
        "--frames", join(FIXTURES, "frames.json"),
        "--log", logPath,
        "--port", String(PORT),
        "--host", "127.0.0.1",
      ],
      { cwd: REPO_ROOT, stdio: ["ignore", "pipe", "pipe"] },
    );
    await waitForService();
  }, 30000);

  afterAll(() => {
    service?.kill("SIGTERM");
  });

  it("lists the three blocking/prevention candidates for Preventing", async () => {
    const queue = new ReviewQueue(new CurationApi(BASE), "ui-test");
    await queue.load({ frame: "Preventing" });
    expect(queue.state.bannerError).toBeNull();
    expect(queue.state.rows.map((r) => r.term)).toEqual([
      "GO:0018409",
      "GO:0018410",
      "GO:0060468",
    ]);
  });

  it("accepting in the queue persists exactly one decision line", async () => {
    const before = logLines().length;
    const queue = new ReviewQueue(new CurationApi(BASE), "ui-test");
    await queue.load({ frame: "Preventing" });
    const chosen = queue.selected();
    expect(chosen).not.toBeNull();

    const ok = await queue.accept("reviewed in browser");
    expect(ok).toBe(true);

    // the queue re-read server state: the row now reports accepted
    const updated = queue.state.rows.find((r) => r.term === chosen!.term);
    expect(updated?.status).toBe("accepted");

    // independent read-back straight from the API
    const api = new CurationApi(BASE);
    const fresh = await api.getCandidates({ frame: "Preventing" });
    expect(fresh.find((r) => r.term === chosen!.term)?.status).toBe("accepted");

    const lines = logLines();
    expect(lines.length).toBe(before + 1);
    const logged = JSON.parse(lines.at(-1)!);
    expect(logged).toMatchObject({
      term: chosen!.term,
      frame: "Preventing",
      verdict: "accept",
      curator: "ui-test",
    });
    expect(logged.timestamp).toBeTruthy();
  });

  it("ancestry panel lists the depth-3 chain in order", async () => {
    const panel = new TermContextPanel(new CurationApi(BASE));
    await panel.show("GO:0002181");
    expect(panel.state.error).toBeNull();
    const lines = panel.lines().filter((l) => l.relation === "is_a");
    expect(lines.map((l) => l.id)).toEqual([
      "GO:0006412",
      "GO:0008152",
      "GO:0008150",
    ]);
  });

  it("rejected decisions surface inline and change nothing", async () => {
    const before = logLines().length;
    const api = new CurationApi(BASE);
    const queue = new ReviewQueue(api, "ui-test");
    await queue.load({ frame: "Preventing" });
    // force a reject by pointing the decision at a key the server lacks
    queue.state.rows[queue.state.cursor]!.frame = "NoSuchFrame";
    const ok = await queue.accept();
    expect(ok).toBe(false);
    expect(queue.state.inlineError).toContain("404");
    expect(logLines().length).toBe(before);
  });
});
