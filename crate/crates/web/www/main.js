// `pkg/` is produced by `wasm-bindgen --target web --out-dir www/pkg`.
import init, { solve_planted, coColour, minionCheck } from "./pkg/lo_colour_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function show(el, html) {
  el.innerHTML = html;
}

function failure(el, result) {
  if (result.error === undefined) return false;
  show(el, `<p class="bad">${result.error}</p>`);
  return true;
}

function timed(fn) {
  const start = performance.now();
  const result = JSON.parse(fn());
  return [result, (performance.now() - start).toFixed(0)];
}

function renderSolve() {
  const el = $("solve-out");
  const [r, ms] = timed(() => solve_planted(num("solve-n"), num("solve-seed"), $("solve-family").value));
  if (failure(el, r)) return;
  const widest = Math.max(...r.histogram);
  const bars = r.histogram
    .map((count, i) => `<div>${i + 1}: <span class="bar" style="width:${(20 * count) / widest}rem"></span> ${count}</div>`)
    .join("");
  const steps = r.steps.map((s) => `${s.kind}/${s.branch} ${s.size}`).join(", ");
  show(el, `
    <p>${r.m} edges, ${r.linearised_vertices} vertices after linearisation,
       <strong>${r.colours_used} colours</strong>,
       <span class="${r.valid ? "ok" : "bad"}">${r.valid ? "valid" : "INVALID"}</span> (${ms} ms)</p>
    ${bars}
    <pre>steps: ${steps || "none"}</pre>`);
}

function renderCoColour() {
  const el = $("co-out");
  const [r, ms] = timed(() => coColour(num("co-m"), num("co-k")));
  if (failure(el, r)) return;
  let table = "";
  if (r.matrix) {
    const rows = r.matrix
      .map((row) => `<tr>${row.map((c) => `<td>${c === 0 ? "&middot;" : c}</td>`).join("")}</tr>`)
      .join("");
    table = `<table class="matrix">${rows}</table>`;
  }
  show(el, `<p>${r.result} after ${r.nodes} nodes (${ms} ms)</p>${table}`);
}

function renderMinion() {
  const el = $("mh-out");
  const [r, ms] = timed(() => minionCheck(num("mh-src"), num("mh-dst"), num("mh-k")));
  if (failure(el, r)) return;
  const c = r.check;
  show(el, `
    <p><strong>${r.decision}</strong>; the two routes ${r.agree ? "agree" : "DISAGREE"} (${ms} ms)</p>
    <pre>binary elements: ${c.binary_elements}
relation tuples: ${c.relation_tuples}
free structure route: ${r.free_route} (${c.free_structure_nodes} nodes)
direct route: ${r.direct_route} (${c.omega_nodes} nodes)</pre>`);
}

await init();
$("solve-run").addEventListener("click", renderSolve);
$("co-run").addEventListener("click", renderCoColour);
$("mh-run").addEventListener("click", renderMinion);
