// Session controller: the only state it keeps is the session id, the last
// snapshot, and the last recommendation list, all straight from API
// responses. One mutation may be in flight at a time; the view re-renders
// from whatever the server last said.

import { ApiError, type Api } from "./api.js";
import { normalizeItemName } from "./suggest.js";
import type { EventReport, Recommendation, SessionState } from "./types.js";

export interface ViewModel {
  sessionId: string | null;
  state: SessionState | null;
  recommendations: Recommendation[];
  vocabulary: string[];
  pending: boolean;
  lastReport: EventReport | null;
  error: string | null;
  errorSuggestions: string[];
}

export class AppController {
  private readonly api: Api;
  private readonly onChange: (view: ViewModel) => void;
  private view: ViewModel = {
    sessionId: null,
    state: null,
    recommendations: [],
    vocabulary: [],
    pending: false,
    lastReport: null,
    error: null,
    errorSuggestions: [],
  };

  constructor(api: Api, onChange: (view: ViewModel) => void) {
    this.api = api;
    this.onChange = onChange;
  }

  snapshot(): ViewModel {
    return { ...this.view };
  }

  private update(patch: Partial<ViewModel>): void {
    this.view = { ...this.view, ...patch };
    this.onChange(this.view);
  }

  /** Load the vocabulary and either resume a session or start a new one. */
  async init(resumeSessionId?: string | null): Promise<void> {
    const corpus = await this.api.getCorpus();
    this.update({ vocabulary: corpus.vocabulary });
    if (resumeSessionId) {
      try {
        const existing = await this.api.getSession(resumeSessionId);
        const recs = await this.api.getRecommendations(resumeSessionId);
        this.update({
          sessionId: existing.session_id,
          state: existing.state,
          recommendations: recs.recommendations,
        });
        return;
      } catch (err) {
        if (!(err instanceof ApiError) || err.status !== 404) {
          throw err;
        }
        // fall through: stale id, start fresh
      }
    }
    const created = await this.api.createSession();
    this.update({ sessionId: created.session_id, state: created.state });
  }

  /**
   * Add the typed item. Empty input is ignored; names that do not resolve
   * against the vocabulary produce an inline error and no request.
   */
  async submitItem(typed: string): Promise<void> {
    const name = normalizeItemName(typed);
    if (!name || this.view.pending || !this.view.sessionId) {
      return;
    }
    if (!this.view.vocabulary.includes(name)) {
      const near = this.view.vocabulary
        .filter((v) => v.startsWith(name))
        .slice(0, 5);
      this.update({
        error: `unknown item "${name}"`,
        errorSuggestions: near,
      });
      return;
    }
    await this.mutate(() => this.api.addItem(this.view.sessionId!, name));
  }

  async removeItem(name: string): Promise<void> {
    if (this.view.pending || !this.view.sessionId) {
      return;
    }
    await this.mutate(() => this.api.removeItem(this.view.sessionId!, name));
  }

  /** Accept the checked subset of a recommendation card's missing items. */
  async acceptDish(rec: Recommendation, checkedItems: string[]): Promise<void> {
    if (this.view.pending || !this.view.sessionId) {
      return;
    }
    for (const item of checkedItems) {
      if (!rec.missing_items.includes(item)) {
        this.update({
          error: `"${item}" is not missing for ${rec.dish}`,
          errorSuggestions: [],
        });
        return;
      }
    }
    await this.mutate(() =>
      this.api.selectDish(this.view.sessionId!, rec.dish, rec.recipe_id, checkedItems),
    );
  }

  private async mutate(
    call: () => Promise<{ report: EventReport; state: SessionState }>,
  ): Promise<void> {
    this.update({ pending: true, error: null, errorSuggestions: [] });
    try {
      const response = await call();
      const recs = await this.api.getRecommendations(this.view.sessionId!);
      this.update({
        state: response.state,
        lastReport: response.report,
        recommendations: recs.recommendations,
        pending: false,
      });
    } catch (err) {
      if (err instanceof ApiError) {
        const suggestions = Array.isArray(err.details["suggestions"])
          ? (err.details["suggestions"] as string[])
          : [];
        this.update({
          pending: false,
          error: err.message,
          errorSuggestions: suggestions,
        });
        return;
      }
      this.update({ pending: false, error: String(err), errorSuggestions: [] });
    }
  }
}
