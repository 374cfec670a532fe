/** Right panel: conversational copilot with streamed tool traces.
 *
 * Every send attaches the currently selected entity uid so the agent
 * can resolve "this company" without another disambiguation round; with
 * no selection the turn goes out uid-free and is answered globally.
 */

import type { ApiClient } from "./api.js";
import type { SelectionStore } from "./store.js";
import type { AnswerFrame, TraceStep } from "./types.js";

export const MACRO_QUERIES = [
  "Which are the top 10 crypto companies in Geneva by capital?",
  "Which people are connected to the most companies?",
  "How many bankruptcy proceedings were published this year?",
];

export const TAILORED_PROMPTS = [
  "Show connected entities",
  "Show the last ten events related to this company",
];

export class CopilotPanel {
  readonly element: HTMLElement;
  readonly input: HTMLInputElement;
  readonly sendButton: HTMLButtonElement;
  private readonly prompts: HTMLElement;
  private readonly log: HTMLElement;
  private turn: {
    blocks: HTMLElement[];
    trace: HTMLElement;
    answer: HTMLElement;
  } | null = null;
  private sessionId: string | null = null;
  busy = false;

  constructor(
    private readonly api: ApiClient,
    private readonly store: SelectionStore,
  ) {
    this.element = document.createElement("div");
    this.element.className = "copilot-panel";

    this.log = document.createElement("div");
    this.log.className = "copilot-log";

    this.prompts = document.createElement("div");
    this.prompts.className = "copilot-prompts";

    const form = document.createElement("form");
    form.className = "copilot-form";
    this.input = document.createElement("input");
    this.input.type = "text";
    this.input.placeholder = "Ask about the registry";
    this.sendButton = document.createElement("button");
    this.sendButton.type = "submit";
    this.sendButton.textContent = "Send";
    form.append(this.input, this.sendButton);
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.send(this.input.value);
    });

    this.element.append(this.log, this.prompts, form);
    store.subscribe((selection) => {
      this.renderPrompts(selection.panelMode === "dossier");
    });
  }

  get session(): string | null {
    return this.sessionId;
  }

  get promptButtons(): HTMLButtonElement[] {
    return Array.from(this.prompts.querySelectorAll("button"));
  }

  /** Trace blocks of the turn currently rendered last, one per tool call. */
  get traceBlocks(): HTMLElement[] {
    return this.turn ? [...this.turn.blocks] : [];
  }

  get answerElement(): HTMLElement | null {
    return this.turn?.answer ?? null;
  }

  get errorBanner(): HTMLElement | null {
    const banners = this.log.querySelectorAll(".chat-error");
    return (banners[banners.length - 1] as HTMLElement | undefined) ?? null;
  }

  private renderPrompts(tailored: boolean): void {
    this.prompts.textContent = "";
    for (const text of tailored ? TAILORED_PROMPTS : MACRO_QUERIES) {
      const chip = document.createElement("button");
      chip.type = "button";
      chip.className = "prompt-chip";
      chip.textContent = text;
      chip.addEventListener("click", () => void this.send(text));
      this.prompts.append(chip);
    }
  }

  async send(message: string): Promise<void> {
    const text = message.trim();
    if (!text || this.busy) return;
    this.busy = true;
    this.input.disabled = true;
    this.sendButton.disabled = true;
    this.input.value = "";

    const user = document.createElement("div");
    user.className = "chat-user";
    user.textContent = text;
    this.log.append(user);

    const trace = document.createElement("div");
    trace.className = "chat-trace";
    const answer = document.createElement("div");
    answer.className = "chat-answer";
    const turnBox = document.createElement("div");
    turnBox.className = "chat-turn";
    turnBox.append(trace, answer);
    this.log.append(turnBox);
    this.turn = { blocks: [], trace, answer };

    const selected = this.store.selection.selectedUid;
    try {
      const frames = this.api.chat(text, {
        sessionId: this.sessionId ?? undefined,
        currentUid: selected ?? undefined,
      });
      for await (const frame of frames) {
        if (frame.type === "trace") {
          if (frame.kind === "tool") {
            this.turn.blocks.push(this.appendToolBlock(trace, frame.detail));
          } else {
            const line = document.createElement("div");
            line.className = `trace-status trace-${frame.kind}`;
            line.textContent = `${frame.kind}: ${frame.detail}`;
            trace.append(line);
          }
        } else if (frame.type === "answer") {
          this.finishTurn(frame);
        } else {
          this.showError(frame.detail ?? "turn failed", frame.stage);
        }
      }
    } catch (error) {
      this.showError(error instanceof Error ? error.message : String(error));
    } finally {
      this.busy = false;
      this.input.disabled = false;
      this.sendButton.disabled = false;
    }
  }

  private appendToolBlock(trace: HTMLElement, detail: string): HTMLElement {
    const sep = detail.lastIndexOf(":");
    const name = sep > 0 ? detail.slice(0, sep) : detail;
    const status = sep > 0 ? detail.slice(sep + 1) : "";
    const block = document.createElement("div");
    block.className = "trace-block";
    const head = document.createElement("div");
    head.className = "trace-head";
    head.textContent = status ? `${name} · ${status}` : name;
    block.append(head);
    trace.append(block);
    return block;
  }

  /** Attach the post-hoc step record (arguments, summary, row count)
   * behind a toggle on the block that streamed live. */
  private enrichBlock(block: HTMLElement, step: TraceStep): void {
    const summary = document.createElement("div");
    summary.className = "trace-summary";
    summary.textContent = `${step.summary} (${step.row_count} rows)`;
    const toggle = document.createElement("button");
    toggle.type = "button";
    toggle.className = "trace-toggle";
    toggle.textContent = "Details";
    const raw = document.createElement("pre");
    raw.className = "trace-raw";
    raw.hidden = true;
    raw.textContent = JSON.stringify(
      { arguments: step.arguments, summary: step.summary, row_count: step.row_count },
      null,
      2,
    );
    toggle.addEventListener("click", () => {
      raw.hidden = !raw.hidden;
    });
    block.append(summary, toggle, raw);
  }

  private finishTurn(frame: AnswerFrame): void {
    this.sessionId = frame.session_id;
    if (!this.turn) return;
    renderAnswerText(this.turn.answer, frame.answer);
    this.turn.answer.dataset.state = frame.state;
    frame.trace.forEach((step, i) => {
      const block = this.turn?.blocks[i];
      if (block) this.enrichBlock(block, step);
    });
  }

  private showError(detail: string, stage?: string): void {
    const banner = document.createElement("div");
    banner.className = "chat-error";
    banner.textContent = stage ? `${stage}: ${detail}` : detail;
    this.log.append(banner);
  }
}

/** Minimal answer formatter: pipe tables become real tables, everything
 * else becomes paragraphs.  Content is inserted as text, never HTML. */
export function renderAnswerText(target: HTMLElement, text: string): void {
  target.textContent = "";
  const lines = text.split("\n");
  let i = 0;
  let paragraph: string[] = [];

  const flush = () => {
    if (paragraph.length === 0) return;
    const p = document.createElement("p");
    p.textContent = paragraph.join(" ");
    target.append(p);
    paragraph = [];
  };

  while (i < lines.length) {
    const line = lines[i] ?? "";
    if (line.trim().startsWith("|")) {
      flush();
      const rows: string[][] = [];
      while (i < lines.length && (lines[i] ?? "").trim().startsWith("|")) {
        const cells = (lines[i] ?? "")
          .trim()
          .replace(/^\|/, "")
          .replace(/\|$/, "")
          .split("|")
          .map((c) => c.trim());
        if (!cells.every((c) => /^:?-{2,}:?$/.test(c))) rows.push(cells);
        i++;
      }
      const table = document.createElement("table");
      table.className = "answer-table";
      rows.forEach((cells, rowIdx) => {
        const tr = document.createElement("tr");
        for (const cell of cells) {
          const td = document.createElement(rowIdx === 0 ? "th" : "td");
          td.textContent = cell;
          tr.append(td);
        }
        table.append(tr);
      });
      target.append(table);
      continue;
    }
    if (line.trim() === "") flush();
    else paragraph.push(line.trim());
    i++;
  }
  flush();
}
