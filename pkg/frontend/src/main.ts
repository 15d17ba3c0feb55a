// DOM wiring: connect the controller to the page. The session id lives in
// the location hash so a reload resumes the same session via GET.

import { HttpApi } from "./api.js";
import { AppController, type ViewModel } from "./controller.js";
import {
  renderBadges,
  renderBasket,
  renderError,
  renderNotice,
  renderRecommendations,
  renderScoreBars,
} from "./render.js";
import { suggest } from "./suggest.js";

declare global {
  interface Window {
    BASKETCHEF_API?: string;
  }
}

const baseUrl = window.BASKETCHEF_API ?? "http://127.0.0.1:8000";
const api = new HttpApi(baseUrl);

const el = {
  input: document.querySelector<HTMLInputElement>("#item-input")!,
  addButton: document.querySelector<HTMLButtonElement>("#add-button")!,
  suggestions: document.querySelector<HTMLDataListElement>("#item-suggestions")!,
  basket: document.querySelector<HTMLElement>("#basket")!,
  badges: document.querySelector<HTMLElement>("#badges")!,
  scores: document.querySelector<HTMLElement>("#scores")!,
  cards: document.querySelector<HTMLElement>("#cards")!,
  messages: document.querySelector<HTMLElement>("#messages")!,
  session: document.querySelector<HTMLElement>("#session-label")!,
};

let lastView: ViewModel | null = null;

function render(view: ViewModel): void {
  lastView = view;
  if (view.sessionId) {
    window.location.hash = view.sessionId;
    el.session.textContent = view.sessionId;
  }
  el.input.disabled = view.pending;
  el.addButton.disabled = view.pending;
  if (view.state) {
    el.basket.innerHTML = renderBasket(view.state);
    el.badges.innerHTML = renderBadges(view.state);
    el.scores.innerHTML = renderScoreBars(view.state);
  }
  el.cards.innerHTML = renderRecommendations(view.recommendations, view.pending);
  if (view.error) {
    el.messages.innerHTML = renderError(view.error, view.errorSuggestions);
  } else if (view.lastReport) {
    el.messages.innerHTML = renderNotice(view.lastReport);
  } else {
    el.messages.innerHTML = "";
  }
}

const controller = new AppController(api, render);

async function submit(): Promise<void> {
  const typed = el.input.value;
  if (!typed.trim()) {
    return; // empty input is ignored
  }
  await controller.submitItem(typed);
  if (lastView && !lastView.error) {
    el.input.value = "";
  }
  el.input.focus();
}

el.addButton.addEventListener("click", () => void submit());
el.input.addEventListener("keydown", (event) => {
  if (event.key === "Enter") {
    event.preventDefault();
    void submit();
  }
});
el.input.addEventListener("input", () => {
  const matches = lastView ? suggest(lastView.vocabulary, el.input.value) : [];
  el.suggestions.innerHTML = matches
    .map((name) => `<option value="${name}"></option>`)
    .join("");
});

el.basket.addEventListener("click", (event) => {
  const target = event.target as HTMLElement;
  const name = target.dataset["remove"];
  if (name) {
    void controller.removeItem(name);
  }
});

el.cards.addEventListener("click", (event) => {
  const target = event.target as HTMLElement;
  const index = target.dataset["accept"];
  if (index === undefined || !lastView) {
    return;
  }
  const rec = lastView.recommendations[Number(index)];
  const card = target.closest("article");
  if (!rec || !card) {
    return;
  }
  const checked = Array.from(
    card.querySelectorAll<HTMLInputElement>("input[data-accept-item]:checked"),
  ).map((box) => box.dataset["acceptItem"]!);
  void controller.acceptDish(rec, checked);
});

const resume = window.location.hash.replace(/^#/, "") || null;
controller.init(resume).catch((err) => {
  el.messages.innerHTML = renderError(
    `cannot reach the API at ${baseUrl}: ${String(err)}`,
  );
});
