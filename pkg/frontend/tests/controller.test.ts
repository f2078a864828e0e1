// Request discipline: one tradeoff request per scenario edit, coalescing
// of edits made while a run is in flight, and staleness handling.

import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import type { ApiClient, Scenario, TradeoffResponse, UtilityResponse } from "../src/api.js";
import { Controller } from "../src/controller.js";

function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(new URL(`./fixtures/${name}.json`, import.meta.url), "utf-8")) as T;
}

const tradeoffBody = fixture<TradeoffResponse>("tradeoff");
const flippedBody = fixture<TradeoffResponse>("tradeoff_flipped");
const utilityBody = fixture<UtilityResponse>("utility");

interface Deferred {
  scenario: Scenario;
  resolve: (body: TradeoffResponse) => void;
}

class FakeApi {
  tradeoffCalls: Scenario[] = [];
  deferred: Deferred[] = [];
  manual = false;

  createSession() {
    return Promise.resolve({ session: "s1", model: "GridStix", digest: "d", diagnostics: [] });
  }

  tradeoff(_session: string, scenario: Scenario): Promise<TradeoffResponse> {
    this.tradeoffCalls.push(scenario);
    if (!this.manual) {
      return Promise.resolve(tradeoffBody);
    }
    return new Promise((resolve) => {
      this.deferred.push({ scenario, resolve });
    });
  }

  utility(): Promise<UtilityResponse> {
    return Promise.resolve(utilityBody);
  }

  adaptationModel(): Promise<never> {
    return Promise.reject(new Error("no C-KS"));
  }

  asClient(): ApiClient {
    return this as unknown as ApiClient;
  }
}

const order = (softgoals: string[]): Scenario => ({
  goals: ["g2", "g1", "g3"],
  contexts: ["c2", "c6"],
  softgoals,
});

const tick = () => new Promise((resolve) => setTimeout(resolve, 0));

describe("controller", () => {
  it("issues exactly one tradeoff request per reorder", async () => {
    const api = new FakeApi();
    const controller = new Controller(api.asClient());
    await controller.openSession("model");
    controller.setScenario(order(["sg1", "sg2", "sg3"]));
    await tick();
    expect(api.tradeoffCalls).toHaveLength(1);
    controller.setSoftgoalOrder(["sg2", "sg3", "sg1"]);
    await tick();
    expect(api.tradeoffCalls).toHaveLength(2);
    expect(api.tradeoffCalls[1].softgoals).toEqual(["sg2", "sg3", "sg1"]);
  });

  it("ignores edits that do not change the scenario", async () => {
    const api = new FakeApi();
    const controller = new Controller(api.asClient());
    await controller.openSession("model");
    controller.setScenario(order(["sg1", "sg2", "sg3"]));
    await tick();
    controller.setScenario(order(["sg1", "sg2", "sg3"]));
    await tick();
    expect(api.tradeoffCalls).toHaveLength(1);
  });

  it("coalesces edits made while a run is in flight and drops the stale result", async () => {
    const api = new FakeApi();
    api.manual = true;
    const controller = new Controller(api.asClient());
    await controller.openSession("model");
    controller.setScenario(order(["sg1", "sg2", "sg3"]));
    await tick();
    expect(api.tradeoffCalls).toHaveLength(1);
    // two edits while the first request is pending
    controller.setSoftgoalOrder(["sg2", "sg1", "sg3"]);
    controller.setSoftgoalOrder(["sg2", "sg3", "sg1"]);
    await tick();
    expect(api.tradeoffCalls).toHaveLength(1); // nothing new sent yet
    api.deferred[0].resolve(tradeoffBody);
    await tick();
    await tick();
    // exactly one follow-up with the final order; the first response was dropped
    expect(api.tradeoffCalls).toHaveLength(2);
    expect(api.tradeoffCalls[1].softgoals).toEqual(["sg2", "sg3", "sg1"]);
    expect(controller.current().tradeoff).toBeNull();
    api.deferred[1].resolve(flippedBody);
    await tick();
    await tick();
    expect(controller.current().tradeoff).toEqual(flippedBody);
    expect(controller.current().stale).toBe(false);
  });

  it("marks displayed results stale on the next edit", async () => {
    const api = new FakeApi();
    const controller = new Controller(api.asClient());
    await controller.openSession("model");
    controller.setScenario(order(["sg1", "sg2", "sg3"]));
    await tick();
    expect(controller.current().stale).toBe(false);
    api.manual = true;
    controller.setSoftgoalOrder(["sg3", "sg2", "sg1"]);
    expect(controller.current().stale).toBe(true);
    api.deferred[0].resolve(flippedBody);
    await tick();
    await tick();
    expect(controller.current().stale).toBe(false);
  });

  it("keeps the adaptation panel optional when the service rejects it", async () => {
    const api = new FakeApi();
    const controller = new Controller(api.asClient());
    await controller.openSession("model");
    controller.setScenario(order(["sg1", "sg2", "sg3"]));
    await tick();
    expect(controller.current().tradeoff).toEqual(tradeoffBody);
    expect(controller.current().adaptation).toBeNull();
    expect(controller.current().error).toBeNull();
  });

  it("surfaces request failures without clearing prior results", async () => {
    const api = new FakeApi();
    const controller = new Controller(api.asClient());
    await controller.openSession("model");
    controller.setScenario(order(["sg1", "sg2", "sg3"]));
    await tick();
    api.tradeoff = () => Promise.reject(new Error("boom"));
    controller.setSoftgoalOrder(["sg3", "sg1", "sg2"]);
    await tick();
    expect(controller.current().error).toBe("boom");
    expect(controller.current().tradeoff).toEqual(tradeoffBody);
  });
});
