// Pure HTML/SVG renderers. Numbers are emitted verbatim via String() so
// the view never rounds away from the service response.

import type {
  AdaptationResponse,
  ConsistencyReport,
  TradeoffResponse,
  UtilityRow,
} from "./api.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderUtilityTable(rows: UtilityRow[]): string {
  const body = rows
    .filter((r) => r.variable)
    .map(
      (r) =>
        `<tr data-feature="${escapeHtml(r.feature)}">` +
        `<td>${escapeHtml(r.feature)}</td>` +
        `<td class="num">${String(r.contC)}</td>` +
        `<td class="num">${String(r.contG)}</td>` +
        `<td class="num">${String(r.contSG)}</td>` +
        `<td class="num">${String(r.utility)}</td></tr>`,
    )
    .join("");
  return (
    '<table class="utility"><thead><tr>' +
    "<th>feature</th><th>contC</th><th>contG</th><th>contSG</th><th>utility</th>" +
    `</tr></thead><tbody>${body}</tbody></table>`
  );
}

export function renderWeights(title: string, weights: Record<string, number>): string {
  const items = Object.entries(weights)
    .map(([id, w]) => `<li><span>${escapeHtml(id)}</span><span class="num">${String(w)}</span></li>`)
    .join("");
  return `<div class="weights"><h3>${escapeHtml(title)}</h3><ul>${items}</ul></div>`;
}

export function renderConsistency(report: ConsistencyReport | null): string {
  if (report === null) {
    return '<p class="consistency">no pairwise judgments in this scenario</p>';
  }
  const verdict = report.acceptable ? "acceptable" : "not acceptable";
  return (
    `<p class="consistency ${report.acceptable ? "ok" : "bad"}">` +
    `CR = <span class="num">${String(report.cr)}</span> (${verdict})</p>`
  );
}

export function renderCcfCard(
  ccfId: string,
  members: string[],
  label: string | null,
  result: TradeoffResponse,
): string {
  if (label === null) {
    const reason = result.infeasible[ccfId] ?? "infeasible";
    return (
      `<div class="ccf-card infeasible" data-ccf="${escapeHtml(ccfId)}">` +
      `<h4>${escapeHtml(ccfId)}</h4>` +
      `<p class="members">{${members.map(escapeHtml).join(", ")}}</p>` +
      `<p class="error">${escapeHtml(reason)}</p></div>`
    );
  }
  const cfg = result.configurations[label];
  return (
    `<div class="ccf-card" data-ccf="${escapeHtml(ccfId)}" data-label="${escapeHtml(label)}">` +
    `<h4>${escapeHtml(ccfId)} &rarr; ${escapeHtml(label)}</h4>` +
    `<p class="members">{${members.map(escapeHtml).join(", ")}}</p>` +
    `<p class="notation">${escapeHtml(cfg.notation)}</p>` +
    `<p class="objective">objective <span class="num">${String(cfg.objective)}</span></p></div>`
  );
}

export function renderCcfGrid(
  result: TradeoffResponse,
  members: Record<string, string[]>,
  stale: boolean,
): string {
  const cards = result.ccf_order
    .map((ccfId) => renderCcfCard(ccfId, members[ccfId] ?? [], result.ccf_map[ccfId], result))
    .join("");
  return `<div class="ccf-grid${stale ? " stale" : ""}">${cards}</div>`;
}

export function renderAdaptationGraph(response: AdaptationResponse): string {
  const { states, edges, initial } = response.adaptation;
  const width = 480;
  const height = 320;
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(cx, cy) - 60;
  const pos = new Map<string, { x: number; y: number }>();
  states.forEach((label, i) => {
    const angle = (2 * Math.PI * i) / states.length - Math.PI / 2;
    pos.set(label, { x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) });
  });
  const lines = edges
    .filter((e) => !e.noop)
    .map((e) => {
      const a = pos.get(e.from)!;
      const b = pos.get(e.to)!;
      const mx = (a.x + b.x) / 2;
      const my = (a.y + b.y) / 2;
      return (
        `<line x1="${a.x.toFixed(1)}" y1="${a.y.toFixed(1)}" ` +
        `x2="${b.x.toFixed(1)}" y2="${b.y.toFixed(1)}" class="edge"/>` +
        `<text x="${mx.toFixed(1)}" y="${my.toFixed(1)}" class="trigger">${escapeHtml(e.trigger)}</text>`
      );
    })
    .join("");
  const nodes = states
    .map((label) => {
      const p = pos.get(label)!;
      const cls = label === initial ? "state initial" : "state";
      return (
        `<g class="${cls}" data-state="${escapeHtml(label)}">` +
        `<circle cx="${p.x.toFixed(1)}" cy="${p.y.toFixed(1)}" r="26"/>` +
        `<text x="${p.x.toFixed(1)}" y="${p.y.toFixed(1)}" dy="5">${escapeHtml(label)}</text></g>`
      );
    })
    .join("");
  return (
    `<svg viewBox="0 0 ${width} ${height}" class="adaptation" role="img">` +
    `${lines}${nodes}</svg>`
  );
}
