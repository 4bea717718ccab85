// Question widgets. The rendered control is a pure function of the
// question kind: mcq -> radio group, checkbox -> checkbox group,
// linear -> range slider.

import type { AnswerPayload, Question } from "./api.js";

export type WidgetKind = "radio" | "checkbox" | "slider";

export function widgetKindFor(question: Pick<Question, "kind">): WidgetKind {
  switch (question.kind) {
    case "mcq":
      return "radio";
    case "checkbox":
      return "checkbox";
    case "linear":
      return "slider";
  }
}

export interface Widget {
  element: HTMLElement;
  /** Current buffered value, or null while the question is unanswered. */
  read(): AnswerPayload | null;
}

function optionRow(
  kind: "radio" | "checkbox",
  name: string,
  value: string,
  checked: boolean,
): HTMLLabelElement {
  const row = document.createElement("label");
  row.className = "option-row";
  const input = document.createElement("input");
  input.type = kind;
  input.name = name;
  input.value = value;
  input.checked = checked;
  row.append(input, document.createTextNode(` ${value}`));
  return row;
}

export function renderQuestion(
  question: Question,
  buffered: AnswerPayload | undefined,
  onChange: (value: AnswerPayload) => void,
): Widget {
  const box = document.createElement("fieldset");
  box.className = `question question-${widgetKindFor(question)}`;
  const legend = document.createElement("legend");
  legend.textContent = question.prompt;
  box.append(legend);

  if (question.kind === "mcq") {
    for (const opt of question.options ?? []) {
      const row = optionRow("radio", question.id, opt, buffered === opt);
      row.querySelector("input")!.addEventListener("change", () => onChange(opt));
      box.append(row);
    }
    return {
      element: box,
      read: () => {
        const hit = box.querySelector<HTMLInputElement>("input:checked");
        return hit ? hit.value : null;
      },
    };
  }

  if (question.kind === "checkbox") {
    const chosen = new Set(Array.isArray(buffered) ? buffered : []);
    for (const opt of question.options ?? []) {
      const row = optionRow("checkbox", question.id, opt, chosen.has(opt));
      row.querySelector("input")!.addEventListener("change", (ev) => {
        const input = ev.target as HTMLInputElement;
        if (input.checked) chosen.add(opt);
        else chosen.delete(opt);
        onChange([...chosen].sort());
      });
      box.append(row);
    }
    return {
      element: box,
      read: () => {
        const picked = [...box.querySelectorAll<HTMLInputElement>("input:checked")].map(
          (i) => i.value,
        );
        return picked.length ? picked.sort() : null;
      },
    };
  }

  const scale = question.scale ?? 10;
  const slider = document.createElement("input");
  slider.type = "range";
  slider.min = "0";
  slider.max = String(scale);
  slider.step = "1";
  slider.value = String(typeof buffered === "number" ? buffered : Math.floor(scale / 2));
  const readout = document.createElement("output");
  readout.textContent = slider.value;
  slider.addEventListener("input", () => {
    readout.textContent = slider.value;
    onChange(Number(slider.value));
  });
  box.append(slider, readout);
  const touched = typeof buffered === "number";
  let moved = touched;
  slider.addEventListener("input", () => {
    moved = true;
  });
  return {
    element: box,
    read: () => (moved ? Number(slider.value) : null),
  };
}
