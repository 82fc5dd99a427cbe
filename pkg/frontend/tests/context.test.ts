import { describe, expect, it } from "vitest";

import { CurationApi, FetchLike, TermContext } from "../src/api.js";
import { ancestorLines, TermContextPanel } from "../src/context.js";

const PAYLOAD: TermContext = {
  id: "GO:0002181",
  name: "cytoplasmic translation",
  namespace: "biological_process",
  obsolete: false,
  synonyms: [],
  is_a_ancestors: [
    { id: "GO:0006412", name: "translation" },
    { id: "GO:0008152", name: "metabolic process" },
    { id: "GO:0008150", name: "biological_process" },
  ],
  part_of_ancestors: [],
};

describe("ancestorLines", () => {
  it("preserves the service ordering and labels relations", () => {
    const lines = ancestorLines(PAYLOAD);
    expect(lines.map((l) => l.id)).toEqual([
      "GO:0006412",
      "GO:0008152",
      "GO:0008150",
    ]);
    expect(new Set(lines.map((l) => l.relation))).toEqual(new Set(["is_a"]));
  });

  it("appends part_of chains after is_a chains", () => {
    const withParts: TermContext = {
      ...PAYLOAD,
      part_of_ancestors: [{ id: "GO:0009566", name: "fertilization" }],
    };
    const lines = ancestorLines(withParts);
    expect(lines.at(-1)).toEqual({
      relation: "part_of",
      id: "GO:0009566",
      name: "fertilization",
    });
  });

  it("root terms render an empty ancestry", () => {
    expect(
      ancestorLines({ ...PAYLOAD, is_a_ancestors: [], part_of_ancestors: [] }),
    ).toEqual([]);
  });
});

describe("TermContextPanel", () => {
  it("loads a term and exposes its lines", async () => {
    const fetchImpl: FetchLike = async () =>
      new Response(JSON.stringify(PAYLOAD), { status: 200 });
    const panel = new TermContextPanel(new CurationApi("", fetchImpl));
    await panel.show("GO:0002181");
    expect(panel.state.error).toBeNull();
    expect(panel.lines()).toHaveLength(3);
  });

  it("reports unknown terms as a message", async () => {
    const fetchImpl: FetchLike = async () =>
      new Response(JSON.stringify({ detail: "unknown term" }), { status: 404 });
    const panel = new TermContextPanel(new CurationApi("", fetchImpl));
    await panel.show("GO:0000000");
    expect(panel.state.context).toBeNull();
    expect(panel.state.error).toContain("unknown term GO:0000000");
  });
});
