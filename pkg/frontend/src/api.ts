// Typed client for the analysis service. Field names mirror the service
// responses one to one; the fetch implementation is injectable for tests.

export interface Diagnostic {
  code: string;
  severity: "error" | "warning";
  subjects: string[];
  message: string;
}

export interface SessionInfo {
  session: string;
  model: string;
  digest: string;
  diagnostics: Diagnostic[];
}

export interface FeatureInfo {
  id: string;
  name: string;
  parent: string | null;
  relation: string;
  group: string | null;
  variable: boolean;
}

export interface ModelInfo {
  session: string;
  digest: string;
  model: {
    name: string;
    features: FeatureInfo[];
    context_groups: { id: string; name: string; relation: string }[];
    context_features: { id: string; name: string; group: string }[];
    goal_model: {
      goals: { id: string; name: string }[];
      softgoals: { id: string; name: string }[];
      hardgoals: { id: string; goal: string; decomposition: string; feature: string }[];
      links: { hardgoal: string; softgoal: string; level: string }[];
    };
  };
}

export interface CcfInfo {
  session: string;
  digest: string;
  ccfs: { id: string; members: string[] }[];
}

export type SoftgoalSpec =
  | string[]
  | "equal"
  | { subjects: string[]; matrix: number[][] };

export interface Scenario {
  goals: string[] | "equal";
  contexts: string[] | "equal";
  softgoals: SoftgoalSpec;
}

export interface UtilityRow {
  feature: string;
  contC: number;
  contG: number;
  contSG: number;
  utility: number;
  variable: boolean;
}

export interface UtilityResponse {
  session: string;
  version: number;
  digest: string;
  ccf: string | null;
  table: { columns: string[]; rows: UtilityRow[] };
}

export interface Configuration {
  assignment: Record<string, boolean>;
  active: string[];
  objective: number;
  notation: string;
}

export interface ConsistencyReport {
  lambda_max: number;
  ci: number;
  cr: number;
  acceptable: boolean;
}

export interface TradeoffResponse {
  session: string;
  version: number;
  digest: string;
  scenario: string;
  ccf_order: string[];
  ccf_map: Record<string, string | null>;
  configurations: Record<string, Configuration>;
  infeasible: Record<string, string>;
  weights: {
    goals: Record<string, number>;
    contexts: Record<string, number>;
    softgoals: Record<string, number>;
  };
  consistency: ConsistencyReport | null;
}

export interface AdaptationResponse {
  session: string;
  version: number;
  digest: string;
  adaptation: {
    initial: string;
    states: string[];
    ccf_map: Record<string, string>;
    edges: { from: string; to: string; trigger: string; noop: boolean }[];
    configurations: Record<string, Configuration>;
  };
  dot: string;
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
    private readonly base: string = "",
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const resp = await this.fetchFn(this.base + path, init);
    const data = await resp.json();
    if (!resp.ok) {
      throw new ApiError(resp.status, (data && data.error) || resp.statusText);
    }
    return data as T;
  }

  createSession(source: string): Promise<SessionInfo> {
    return this.request("POST", "/api/session", { source });
  }

  getModel(session: string): Promise<ModelInfo> {
    return this.request("GET", `/api/session/${session}/model`);
  }

  getCcfs(session: string): Promise<CcfInfo> {
    return this.request("GET", `/api/session/${session}/ccfs`);
  }

  utility(session: string, scenario: Scenario, ccf?: string): Promise<UtilityResponse> {
    return this.request("POST", `/api/session/${session}/utility`, { scenario, ccf });
  }

  tradeoff(session: string, scenario: Scenario): Promise<TradeoffResponse> {
    return this.request("POST", `/api/session/${session}/tradeoff`, { scenario });
  }

  adaptationModel(session: string, scenario: Scenario): Promise<AdaptationResponse> {
    return this.request("POST", `/api/session/${session}/adaptation-model`, { scenario });
  }
}
