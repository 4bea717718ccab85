// Survey client state machine: intro (set-count slider) -> one video set
// at a time (media, then questions with local answer buffering) -> done.
// Nothing is posted to the service before the Submit button; submitting a
// set unlocks the next one.

import { ApiError, SurveyApi } from "./api.js";
import type { AnswerPayload, Question, SetPayload, VideoSetInfo } from "./api.js";
import { renderQuestion } from "./widgets.js";

export interface AppOptions {
  api: SurveyApi;
  maxSets?: number;
}

type Buffer = Map<string, Map<string, AnswerPayload>>;

export class SurveyApp {
  readonly root: HTMLElement;
  private readonly api: SurveyApi;
  private readonly maxSets: number;
  private sessionId = "";
  private position = 0;
  private totalSets = 0;
  private readonly buffer: Buffer = new Map();
  private questionIndex = 0;

  constructor(root: HTMLElement, options: AppOptions) {
    this.root = root;
    this.api = options.api;
    this.maxSets = options.maxSets ?? 10;
  }

  start(): void {
    this.renderIntro();
  }

  // ---------------------------------------------------------------- intro

  private renderIntro(notice?: string): void {
    this.root.replaceChildren();
    const intro = el("section", "intro");
    intro.append(
      el("h1", "", "Video summary evaluation"),
      el(
        "p",
        "",
        "You will watch a few short video sets and answer questions about " +
          "each. Some sets show a single video, others an original video " +
          "next to its summary. Answers are recorded only when you press " +
          "Submit on a set.",
      ),
    );
    if (notice) intro.append(el("p", "banner", notice));

    const picker = el("div", "set-count-picker");
    const label = el("label", "", "Number of video sets to evaluate: ");
    const slider = document.createElement("input");
    slider.type = "range";
    slider.id = "set-count";
    slider.min = "1";
    slider.max = String(this.maxSets);
    slider.step = "1";
    slider.value = "1";
    const readout = el("output", "", "1");
    slider.addEventListener("input", () => (readout.textContent = slider.value));
    label.append(slider);
    picker.append(label, readout);

    const begin = document.createElement("button");
    begin.id = "begin";
    begin.textContent = "Begin";
    begin.addEventListener("click", () => {
      void this.beginSession(Number(slider.value));
    });
    intro.append(picker, begin);
    this.root.append(intro);
  }

  private async beginSession(count: number): Promise<void> {
    try {
      const session = await this.api.createSession(count);
      this.sessionId = session.session_id;
      this.totalSets = session.videoset_ids.length;
      this.position = 1;
      await this.loadCurrentSet();
    } catch (err) {
      this.renderServiceProblem(err, () => this.renderIntro());
    }
  }

  // ----------------------------------------------------------- video sets

  private async loadCurrentSet(): Promise<void> {
    let payload: SetPayload;
    try {
      payload = await this.api.getSet(this.sessionId, this.position);
    } catch (err) {
      this.renderServiceProblem(err, () => void this.loadCurrentSet());
      return;
    }
    if (payload.done) {
      this.renderDone();
      return;
    }
    this.questionIndex = 0;
    this.renderSet(payload.video_set, payload.questions);
  }

  private bufferFor(setId: string): Map<string, AnswerPayload> {
    let map = this.buffer.get(setId);
    if (!map) {
      map = new Map();
      this.buffer.set(setId, map);
    }
    return map;
  }

  private renderSet(videoSet: VideoSetInfo, questions: Question[]): void {
    this.root.replaceChildren();
    const section = el("section", "video-set");
    section.append(
      el("h2", "", `Video set ${this.position} of ${this.totalSets}`),
      this.renderMedia(videoSet),
    );

    const answers = this.bufferFor(videoSet.id);
    const question = questions[this.questionIndex];
    const widget = renderQuestion(question, answers.get(question.id), (value) => {
      answers.set(question.id, value);
      refresh();
    });
    const progress = el(
      "p",
      "question-progress",
      `Question ${this.questionIndex + 1} of ${questions.length}`,
    );

    const nav = el("div", "nav");
    const back = document.createElement("button");
    back.id = "back";
    back.textContent = "Back";
    back.disabled = this.questionIndex === 0;
    back.addEventListener("click", () => {
      this.questionIndex -= 1;
      this.renderSet(videoSet, questions);
    });

    const isLast = this.questionIndex === questions.length - 1;
    const next = document.createElement("button");
    next.id = isLast ? "submit" : "next";
    next.textContent = isLast ? "Submit" : "Next";
    const refresh = () => {
      if (isLast) {
        next.disabled = !questions.every((q) => answers.has(q.id));
      } else {
        next.disabled = !answers.has(question.id);
      }
    };
    refresh();
    next.addEventListener("click", () => {
      if (isLast) {
        void this.submitSet(videoSet, questions);
      } else {
        this.questionIndex += 1;
        this.renderSet(videoSet, questions);
      }
    });
    nav.append(back, next);
    section.append(progress, widget.element, nav);
    this.root.append(section);
  }

  private renderMedia(videoSet: VideoSetInfo): HTMLElement {
    const wrap = el("div", videoSet.kind === "pair" ? "media media-pair" : "media");
    videoSet.media.forEach((uri, i) => {
      const player = document.createElement("video");
      player.controls = true;
      player.src = this.api.mediaUrl(uri);
      player.className = "player";
      if (videoSet.kind === "pair") {
        const pane = el("figure", "pane");
        pane.append(player, el("figcaption", "", i === 0 ? "Original" : "Summary"));
        wrap.append(pane);
      } else {
        wrap.append(player);
      }
    });
    return wrap;
  }

  private async submitSet(videoSet: VideoSetInfo, questions: Question[]): Promise<void> {
    const answers = this.bufferFor(videoSet.id);
    const payload: Record<string, AnswerPayload> = {};
    for (const q of questions) {
      const value = answers.get(q.id);
      if (value === undefined) return;
      payload[q.id] = value;
    }
    try {
      await this.api.submitAnswers(this.sessionId, videoSet.id, payload);
    } catch (err) {
      if (err instanceof ApiError && err.status === 422) {
        this.renderValidationEcho(videoSet, questions, err.message);
        return;
      }
      this.renderServiceProblem(err, () => void this.submitSet(videoSet, questions));
      return;
    }
    this.position += 1;
    await this.loadCurrentSet();
  }

  private renderValidationEcho(
    videoSet: VideoSetInfo,
    questions: Question[],
    detail: string,
  ): void {
    this.renderSet(videoSet, questions);
    const note = el("p", "validation-error", detail);
    this.root.querySelector(".video-set")?.append(note);
  }

  // ------------------------------------------------------------- terminal

  private renderDone(): void {
    this.root.replaceChildren();
    const done = el("section", "done");
    done.append(
      el("h2", "", "All done"),
      el(
        "p",
        "",
        "Thank you for taking part! Your answers were stored anonymously.",
      ),
    );
    this.root.append(done);
  }

  private renderServiceProblem(err: unknown, retry: () => void): void {
    const message =
      err instanceof ApiError
        ? `The service rejected the request: ${err.message}`
        : "The survey service is unreachable.";
    this.root.replaceChildren();
    const banner = el("section", "service-error");
    banner.append(el("p", "banner", message));
    const button = document.createElement("button");
    button.id = "retry";
    button.textContent = "Retry";
    button.addEventListener("click", retry);
    banner.append(button);
    this.root.append(banner);
  }
}

function el(tag: string, className = "", text = ""): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}
