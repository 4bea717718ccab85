// Full-session integration test against the real survey service: a 2-set
// session driven through the DOM must perform zero answer POSTs before
// Submit and leave behind an answer log the offline scorer accepts.

import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { SurveyApi } from "../src/api.js";
import { SurveyApp } from "../src/app.js";

const PORT = 8732 + Math.floor(Math.random() * 500);
const BASE = `http://127.0.0.1:${PORT}`;

const CORPUS = {
  schema_version: 1,
  video_sets: [
    {
      id: "orig-1",
      kind: "original",
      video_id: "vid1",
      media: ["vid1.mp4"],
      question_ids: ["q-scene", "q-subjects"],
    },
    {
      id: "pair-m1",
      kind: "pair",
      video_id: "vid1",
      media: ["vid1.mp4", "vid1-m.mp4"],
      question_ids: ["q-grasp"],
      summary_set_id: "mach-1",
    },
    {
      id: "mach-1",
      kind: "machine_summary",
      video_id: "vid1",
      media: ["vid1-m.mp4"],
      question_ids: ["q-scene", "q-subjects"],
    },
  ],
  questions: [
    { id: "q-scene", kind: "mcq", prompt: "Indoors or outdoors?", options: ["indoors", "outdoors"] },
    { id: "q-subjects", kind: "checkbox", prompt: "Subjects?", options: ["people", "animals"] },
    { id: "q-grasp", kind: "linear", prompt: "How much would you understand?", scale: 10 },
  ],
};

let service: ChildProcess;
let workDir: string;
let logPath: string;
let corpusPath: string;

async function serviceUp(): Promise<boolean> {
  try {
    const res = await fetch(`${BASE}/report`);
    return res.status > 0;
  } catch {
    return false;
  }
}

beforeAll(async () => {
  workDir = mkdtempSync(join(tmpdir(), "survey-ui-"));
  corpusPath = join(workDir, "corpus.json");
  logPath = join(workDir, "answers.log");
  writeFileSync(corpusPath, JSON.stringify(CORPUS));
  writeFileSync(
    join(workDir, "service.json"),
    JSON.stringify({
      bind: "127.0.0.1",
      port: PORT,
      corpus_path: corpusPath,
      log_path: logPath,
      max_sets: 3,
      seed: 7,
    }),
  );
  service = spawn(
    "python3",
    ["-m", "ctxsumm.cli", "serve", "--config", join(workDir, "service.json")],
    { stdio: "ignore" },
  );
  for (let i = 0; i < 100; i += 1) {
    if (await serviceUp()) return;
    await new Promise((r) => setTimeout(r, 100));
  }
  throw new Error("survey service did not come up");
});

afterAll(() => {
  service?.kill();
});

function byId(id: string): HTMLElement {
  const hit = document.getElementById(id);
  if (!hit) throw new Error(`no element #${id}`);
  return hit;
}

async function until(check: () => boolean, what: string): Promise<void> {
  for (let i = 0; i < 300; i += 1) {
    if (check()) return;
    await new Promise((r) => setTimeout(r, 10));
  }
  throw new Error(`timed out waiting for ${what}`);
}

function answerVisibleQuestion(root: HTMLElement): void {
  const question = root.querySelector("fieldset.question");
  if (!question) throw new Error("no question rendered");
  const input = question.querySelector<HTMLInputElement>("input");
  if (!input) throw new Error("question has no input");
  if (input.type === "range") {
    input.value = "8";
    input.dispatchEvent(new Event("input", { bubbles: true }));
  } else {
    input.click();
  }
}

describe("full survey session", () => {
  it("posts answers only on submit and yields a scoreable log", async () => {
    let answerPosts = 0;
    const realFetch = globalThis.fetch;
    globalThis.fetch = ((input: any, init?: any) => {
      const url = String(input instanceof Request ? input.url : input);
      const method = (init?.method ?? (input instanceof Request ? input.method : "GET")) ?? "GET";
      if (method.toUpperCase() === "POST" && url.includes("/answers")) answerPosts += 1;
      return realFetch(input, init);
    }) as typeof fetch;

    try {
      document.body.innerHTML = '<main id="app"></main>';
      const app = new SurveyApp(byId("app"), {
        api: new SurveyApi(BASE),
        maxSets: 3,
      });
      app.start();

      // intro: slider bound comes from the app config, pick 2 sets
      const slider = byId("set-count") as HTMLInputElement;
      expect(Number(slider.max)).toBe(3);
      slider.value = "2";
      slider.dispatchEvent(new Event("input", { bubbles: true }));
      byId("begin").click();

      for (let set = 1; set <= 2; set += 1) {
        await until(
          () => document.querySelector("h2")?.textContent === `Video set ${set} of 2`,
          `video set ${set}`,
        );
        // media is rendered before the questions
        expect(document.querySelectorAll("video.player").length).toBeGreaterThan(0);
        // one widget at a time; answer until Submit appears, then check gating
        for (;;) {
          const submit = document.getElementById("submit");
          const next = document.getElementById("next");
          const button = (submit ?? next)!;
          expect(button.getAttribute("disabled")).not.toBeNull;
          answerVisibleQuestion(byId("app"));
          if (submit) {
            expect(answerPosts).toBe(set - 1); // nothing sent for this set yet
            (submit as HTMLButtonElement).click();
            break;
          }
          (next as HTMLButtonElement).click();
        }
      }

      await until(
        () => document.querySelector(".done") !== null,
        "completion screen",
      );
      expect(answerPosts).toBe(2);

      // the resulting log must be accepted by the offline scorer
      const scored = spawnSync("python3", [
        "-m",
        "ctxsumm.cli",
        "survey-score",
        logPath,
        "--corpus",
        corpusPath,
      ]);
      expect(scored.status).toBe(0);
      expect(String(scored.stdout)).toContain("vid1");
    } finally {
      globalThis.fetch = realFetch;
    }
  });

  it("buffered answers survive back-navigation before submit", async () => {
    document.body.innerHTML = '<main id="app"></main>';
    const app = new SurveyApp(byId("app"), { api: new SurveyApi(BASE), maxSets: 3 });
    app.start();
    const slider = byId("set-count") as HTMLInputElement;
    slider.value = "1";
    slider.dispatchEvent(new Event("input", { bubbles: true }));
    byId("begin").click();
    await until(() => document.querySelector("h2") !== null, "first set");
    if (document.getElementById("next") === null) return; // single-question set
    answerVisibleQuestion(byId("app"));
    const firstAnswer = document.querySelector<HTMLInputElement>(
      "fieldset.question input:checked, fieldset.question input[type=range]",
    )?.value;
    (byId("next") as HTMLButtonElement).click();
    await until(() => byId("back").getAttribute("disabled") === null, "question 2");
    (byId("back") as HTMLButtonElement).click();
    await until(() => document.querySelector("fieldset.question") !== null, "question 1 again");
    const restored = document.querySelector<HTMLInputElement>(
      "fieldset.question input:checked, fieldset.question input[type=range]",
    )?.value;
    expect(restored).toBe(firstAnswer);
  });

  it("shows a retry banner when the service is unreachable", async () => {
    document.body.innerHTML = '<main id="app"></main>';
    const app = new SurveyApp(byId("app"), {
      api: new SurveyApi("http://127.0.0.1:1"),
      maxSets: 3,
    });
    app.start();
    byId("begin").click();
    await until(() => document.querySelector(".service-error") !== null, "error banner");
    expect(document.getElementById("retry")).not.toBeNull();
  });
});
