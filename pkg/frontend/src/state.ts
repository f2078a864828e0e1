// Workbench state: the current scenario, the latest results, and a
// staleness flag that trips whenever the scenario diverges from the one
// the displayed results were computed for.

import type {
  AdaptationResponse,
  Scenario,
  TradeoffResponse,
  UtilityResponse,
} from "./api.js";

export interface WorkbenchState {
  session: string | null;
  modelName: string | null;
  scenario: Scenario;
  utility: UtilityResponse | null;
  tradeoff: TradeoffResponse | null;
  adaptation: AdaptationResponse | null;
  // digest of the inputs the displayed results belong to
  resultDigest: string | null;
  stale: boolean;
  error: string | null;
}

export function initialState(): WorkbenchState {
  return {
    session: null,
    modelName: null,
    scenario: { goals: "equal", contexts: "equal", softgoals: "equal" },
    utility: null,
    tradeoff: null,
    adaptation: null,
    resultDigest: null,
    stale: false,
    error: null,
  };
}

export function withScenario(state: WorkbenchState, scenario: Scenario): WorkbenchState {
  const unchanged = JSON.stringify(scenario) === JSON.stringify(state.scenario);
  return unchanged ? state : { ...state, scenario, stale: state.tradeoff !== null };
}

export function withResults(
  state: WorkbenchState,
  tradeoff: TradeoffResponse,
  utility: UtilityResponse | null,
  adaptation: AdaptationResponse | null,
): WorkbenchState {
  return {
    ...state,
    tradeoff,
    utility,
    adaptation,
    resultDigest: tradeoff.digest,
    stale: false,
    error: null,
  };
}

export function withError(state: WorkbenchState, message: string): WorkbenchState {
  return { ...state, error: message };
}
