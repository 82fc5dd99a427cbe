// DOM wiring for the review queue. All state lives in the controllers;
// this layer only renders and forwards events.

import { CurationApi } from "./api.js";
import { TermContextPanel } from "./context.js";
import { actionForKey } from "./keyboard.js";
import { countsByStatus, evidenceLines, filterReasonLine, ReviewQueue } from "./queue.js";

// same-origin by default; ?api=http://127.0.0.1:8311 points elsewhere
const apiBase = new URLSearchParams(window.location.search).get("api") ?? "";
const api = new CurationApi(apiBase);
const queue = new ReviewQueue(api, "browser");
const panel = new TermContextPanel(api);

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function renderBanner(): void {
  const banner = el<HTMLDivElement>("banner");
  if (queue.state.bannerError) {
    banner.textContent = `Service unreachable: ${queue.state.bannerError}. Press r to retry.`;
    banner.hidden = false;
  } else {
    banner.hidden = true;
  }
}

function renderCounts(): void {
  const counts = countsByStatus(queue.state.rows);
  el<HTMLDivElement>("counts").textContent = Object.entries(counts)
    .sort()
    .map(([status, count]) => `${status}: ${count}`)
    .join("   ");
}

function renderRows(): void {
  const body = el<HTMLTableSectionElement>("rows");
  body.textContent = "";
  queue.state.rows.forEach((row, index) => {
    const tr = document.createElement("tr");
    tr.className = index === queue.state.cursor ? "selected" : "";
    const cells = [row.term, row.term_name, row.frame, row.status];
    for (const value of cells) {
      const td = document.createElement("td");
      td.textContent = value;
      tr.appendChild(td);
    }
    tr.addEventListener("click", () => {
      queue.state.cursor = index;
      void showContext();
      render();
    });
    body.appendChild(tr);
  });
}

function renderDetail(): void {
  const row = queue.selected();
  const detail = el<HTMLDivElement>("detail");
  const inline = el<HTMLDivElement>("inline-error");
  inline.textContent = queue.state.inlineError ?? "";
  inline.hidden = !queue.state.inlineError;
  if (!row) {
    detail.textContent = "No candidates.";
    return;
  }
  const reason = filterReasonLine(row);
  detail.innerHTML = "";
  const title = document.createElement("h3");
  title.textContent = `${row.term} ${row.term_name} → ${row.frame}`;
  const definition = document.createElement("p");
  definition.textContent = row.frame_definition;
  const evidence = document.createElement("ul");
  for (const line of evidenceLines(row)) {
    const li = document.createElement("li");
    li.textContent = line;
    evidence.appendChild(li);
  }
  detail.append(title, definition, evidence);
  if (reason) {
    const p = document.createElement("p");
    p.className = "reason";
    p.textContent = reason;
    detail.appendChild(p);
  }
}

function renderContext(): void {
  const target = el<HTMLUListElement>("ancestry");
  target.textContent = "";
  if (panel.state.error) {
    const li = document.createElement("li");
    li.textContent = panel.state.error;
    target.appendChild(li);
    return;
  }
  for (const line of panel.lines()) {
    const li = document.createElement("li");
    li.textContent = `${line.relation}: ${line.id} ${line.name}`;
    target.appendChild(li);
  }
}

function render(): void {
  renderBanner();
  renderCounts();
  renderRows();
  renderDetail();
  renderContext();
}

async function showContext(): Promise<void> {
  const row = queue.selected();
  if (row) {
    await panel.show(row.term);
    renderContext();
  }
}

async function reload(): Promise<void> {
  const frame = el<HTMLSelectElement>("frame-filter").value;
  const status = el<HTMLSelectElement>("status-filter").value;
  await queue.load({ frame: frame || undefined, status: status || undefined });
  await showContext();
  render();
}

async function populateFrameFilter(): Promise<void> {
  const select = el<HTMLSelectElement>("frame-filter");
  try {
    const frames = await api.getFrames();
    for (const frame of frames) {
      const option = document.createElement("option");
      option.value = frame.name;
      option.textContent = frame.name;
      select.appendChild(option);
    }
  } catch {
    // the banner from the first load() covers the failure
  }
}

function bindEvents(): void {
  el<HTMLSelectElement>("frame-filter").addEventListener("change", () => void reload());
  el<HTMLSelectElement>("status-filter").addEventListener("change", () => void reload());
  el<HTMLButtonElement>("accept").addEventListener("click", () => void queue.accept());
  el<HTMLButtonElement>("discard").addEventListener("click", () => void queue.discard());
  el<HTMLButtonElement>("retry").addEventListener("click", () => void reload());
  document.addEventListener("keydown", (event) => {
    if (event.target instanceof HTMLInputElement) return;
    const action = actionForKey(event);
    if (!action) return;
    event.preventDefault();
    switch (action) {
      case "next":
        queue.next();
        void showContext();
        break;
      case "previous":
        queue.previous();
        void showContext();
        break;
      case "accept":
        void queue.accept();
        break;
      case "discard":
        void queue.discard();
        break;
      case "reload":
        void reload();
        break;
      case "context":
        void showContext();
        break;
    }
    render();
  });
  queue.subscribe(render);
}

void (async () => {
  bindEvents();
  await populateFrameFilter();
  await reload();
})();
