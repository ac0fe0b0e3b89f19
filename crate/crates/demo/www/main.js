import init, { synthesize_cz, synthesize_cnot, depth_curves } from "./pkg/cliffdepth_demo.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function byLayer(gates) {
  const rows = [];
  for (const g of gates) {
    (rows[g.layer] ??= []).push(`${g.name} ${g.qubits.join(" ")}`);
  }
  return rows.map((r, i) => `${String(i).padStart(3)}: ${r.join(", ")}`).join("\n");
}

function show(prefix, fn) {
  $(`${prefix}-summary`).classList.remove("error");
  try {
    const r = JSON.parse(fn());
    const extra = prefix === "cz"
      ? `strategy ${r.strategy}, ${r.cz_gates} CZ gates, colouring ${r.coloring}`
      : `reference ${r.prior}${r.perm.some((p, i) => p !== i) ? ", output relabeled" : ""}`;
    $(`${prefix}-summary`).textContent =
      `depth ${r.depth} (bound ${r.bound}; ${extra}) ${r.verified ? "verified" : "NOT verified"}`;
    $(`${prefix}-gates`).textContent = byLayer(r.gates);
  } catch (e) {
    $(`${prefix}-summary`).textContent = String(e);
    $(`${prefix}-summary`).classList.add("error");
    $(`${prefix}-gates`).textContent = "";
  }
}

function plot() {
  const svg = $("curve");
  svg.innerHTML = "";
  let data;
  try {
    data = JSON.parse(depth_curves(num("curve-from"), num("curve-to"), 200));
  } catch (e) {
    $("curve-summary").textContent = String(e);
    return;
  }
  const fam = data[$("curve-family").value];
  const ns = data.n;
  const series = [
    { ys: fam.prior, color: "#c33", label: "reference" },
    { ys: fam.recursion, color: "#36c", label: "recursion" },
  ];
  const W = svg.width.baseVal.value, H = svg.height.baseVal.value, pad = 40;
  const ymax = Math.max(...series.flatMap((s) => s.ys));
  const x = (n) => pad + (W - 2 * pad) * (n - ns[0]) / Math.max(1, ns.at(-1) - ns[0]);
  const y = (v) => H - pad - (H - 2 * pad) * v / ymax;
  const ns_ = "http://www.w3.org/2000/svg";
  series.forEach((s, k) => {
    const path = document.createElementNS(ns_, "polyline");
    path.setAttribute("points", ns.map((n, i) => `${x(n)},${y(s.ys[i])}`).join(" "));
    path.setAttribute("fill", "none");
    path.setAttribute("stroke", s.color);
    svg.appendChild(path);
    const t = document.createElementNS(ns_, "text");
    t.setAttribute("x", pad + 10);
    t.setAttribute("y", pad + 16 * k);
    t.setAttribute("fill", s.color);
    t.textContent = s.label;
    svg.appendChild(t);
  });
  const last = ns.length - 1;
  $("curve-summary").textContent =
    `n = ${ns[0]}..${ns[last]}, max depth ${ymax}; at n = ${ns[last]}: ` +
    `recursion ${fam.recursion[last]}, reference ${fam.prior[last]}`;
}

await init();
$("cz-run").onclick = () =>
  show("cz", () => synthesize_cz(num("cz-n"), num("cz-seed"), $("cz-strategy").value));
$("cnot-run").onclick = () =>
  show("cnot", () => synthesize_cnot(num("cnot-n"), num("cnot-seed"), $("cnot-mode").value));
$("curve-run").onclick = plot;
plot();
