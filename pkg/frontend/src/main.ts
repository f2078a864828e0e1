// DOM bootstrap: a model editor, order editors for the three priority
// lists, and the result panels.

import { ApiClient } from "./api.js";
import { Controller } from "./controller.js";
import {
  renderAdaptationGraph,
  renderCcfGrid,
  renderConsistency,
  renderUtilityTable,
  renderWeights,
} from "./render.js";
import type { WorkbenchState } from "./state.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function orderEditor(
  container: HTMLElement,
  ids: string[],
  onChange: (order: string[]) => void,
): void {
  const order = [...ids];
  const redraw = () => {
    container.innerHTML = "";
    order.forEach((id, i) => {
      const row = document.createElement("div");
      row.className = "order-row";
      const label = document.createElement("span");
      label.textContent = `${i + 1}. ${id}`;
      const up = document.createElement("button");
      up.textContent = "↑";
      up.disabled = i === 0;
      up.addEventListener("click", () => {
        [order[i - 1], order[i]] = [order[i], order[i - 1]];
        redraw();
        onChange([...order]);
      });
      const down = document.createElement("button");
      down.textContent = "↓";
      down.disabled = i === order.length - 1;
      down.addEventListener("click", () => {
        [order[i + 1], order[i]] = [order[i], order[i + 1]];
        redraw();
        onChange([...order]);
      });
      row.append(label, up, down);
      container.append(row);
    });
  };
  redraw();
}

async function boot(): Promise<void> {
  const api = new ApiClient();
  let ccfMembers: Record<string, string[]> = {};

  const draw = (state: WorkbenchState) => {
    el("status").textContent = state.error
      ? `error: ${state.error}`
      : state.stale
        ? "results are stale, recomputing"
        : state.modelName
          ? `model ${state.modelName}`
          : "no model loaded";
    if (state.tradeoff) {
      el("ccf-grid").innerHTML = renderCcfGrid(state.tradeoff, ccfMembers, state.stale);
      el("weights").innerHTML =
        renderWeights("goals", state.tradeoff.weights.goals) +
        renderWeights("contexts", state.tradeoff.weights.contexts) +
        renderWeights("soft goals", state.tradeoff.weights.softgoals) +
        renderConsistency(state.tradeoff.consistency);
    }
    if (state.utility) {
      el("utility").innerHTML = renderUtilityTable(state.utility.table.rows);
    }
    if (state.adaptation) {
      el("adaptation").innerHTML = renderAdaptationGraph(state.adaptation);
    }
  };

  const controller = new Controller(api, draw);

  el<HTMLButtonElement>("load").addEventListener("click", async () => {
    const source = el<HTMLTextAreaElement>("source").value;
    try {
      await controller.openSession(source);
    } catch (err) {
      el("status").textContent = `error: ${err instanceof Error ? err.message : String(err)}`;
      return;
    }
    const session = controller.current().session!;
    const [model, ccfs] = await Promise.all([api.getModel(session), api.getCcfs(session)]);
    ccfMembers = Object.fromEntries(ccfs.ccfs.map((c) => [c.id, c.members]));
    const goals = model.model.goal_model.goals.map((g) => g.id);
    const groups = model.model.context_groups.map((g) => g.id);
    const softgoals = model.model.goal_model.softgoals.map((s) => s.id);
    orderEditor(el("goal-order"), goals, (o) => controller.setGoalOrder(o));
    orderEditor(el("context-order"), groups, (o) => controller.setContextOrder(o));
    orderEditor(el("softgoal-order"), softgoals, (o) => controller.setSoftgoalOrder(o));
    controller.setScenario({ goals, contexts: groups, softgoals });
  });
}

if (typeof document !== "undefined") {
  window.addEventListener("DOMContentLoaded", () => {
    void boot();
  });
}
