// Wires edits to service calls. Every scenario change triggers exactly
// one tradeoff run; edits arriving while a run is in flight are coalesced
// into a single follow-up run, and responses computed for a superseded
// scenario are dropped.

import type { ApiClient, Scenario } from "./api.js";
import {
  WorkbenchState,
  initialState,
  withError,
  withResults,
  withScenario,
} from "./state.js";

export type Listener = (state: WorkbenchState) => void;

export class Controller {
  private state: WorkbenchState = initialState();
  private latest = 0; // ticket of the newest scenario edit
  private inFlight = false;

  constructor(
    private readonly api: ApiClient,
    private readonly listener: Listener = () => {},
  ) {}

  current(): WorkbenchState {
    return this.state;
  }

  private update(next: WorkbenchState): void {
    this.state = next;
    this.listener(next);
  }

  async openSession(source: string): Promise<void> {
    const info = await this.api.createSession(source);
    this.update({
      ...initialState(),
      session: info.session,
      modelName: info.model,
      scenario: this.state.scenario,
    });
  }

  /** Apply a scenario edit; schedules one (possibly coalesced) run. */
  setScenario(scenario: Scenario): void {
    const before = this.state;
    this.update(withScenario(this.state, scenario));
    if (this.state === before) {
      return; // no actual change, no request
    }
    this.latest += 1;
    if (!this.inFlight) {
      void this.drain();
    }
  }

  setSoftgoalOrder(order: string[]): void {
    this.setScenario({ ...this.state.scenario, softgoals: order });
  }

  setGoalOrder(order: string[]): void {
    this.setScenario({ ...this.state.scenario, goals: order });
  }

  setContextOrder(order: string[]): void {
    this.setScenario({ ...this.state.scenario, contexts: order });
  }

  private async drain(): Promise<void> {
    const session = this.state.session;
    if (session === null) {
      return;
    }
    this.inFlight = true;
    try {
      for (;;) {
        const ticket = this.latest;
        const scenario = this.state.scenario;
        try {
          const tradeoff = await this.api.tradeoff(session, scenario);
          const utility = await this.api.utility(session, scenario);
          const adaptation = await this.api.adaptationModel(session, scenario).catch(() => null);
          if (ticket === this.latest) {
            this.update(withResults(this.state, tradeoff, utility, adaptation));
          }
        } catch (err) {
          if (ticket === this.latest) {
            this.update(withError(this.state, err instanceof Error ? err.message : String(err)));
          }
        }
        if (ticket === this.latest) {
          return;
        }
      }
    } finally {
      this.inFlight = false;
    }
  }
}
