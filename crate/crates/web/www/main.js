import init, { covering_plot, two_point_curve, polyk_bounds } from "./pkg/thickness_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);
const seed = (id) => BigInt(Math.max(0, Math.floor(num(id))));

function guarded(outId, f) {
  return () => {
    const out = $(outId);
    out.classList.remove("err");
    try {
      f(out);
    } catch (e) {
      out.classList.add("err");
      out.textContent = String(e.message ?? e);
    }
  };
}

function drawPlot(d) {
  const c = $("plot");
  const g = c.getContext("2d");
  const half = c.width / 2;
  const scale = half / 3.1;
  const X = (v) => half + v[0] * scale;
  const Y = (v) => half - v[1] * scale;
  g.clearRect(0, 0, c.width, c.height);

  g.strokeStyle = "#eee";
  g.beginPath();
  g.moveTo(0, half); g.lineTo(c.width, half);
  g.moveTo(half, 0); g.lineTo(half, c.height);
  g.stroke();

  const ring = (center, r, style, fill) => {
    g.beginPath();
    d.sphere.forEach((v, i) => {
      const w = [center[0] + r * v[0], center[1] + r * v[1]];
      i === 0 ? g.moveTo(X(w), Y(w)) : g.lineTo(X(w), Y(w));
    });
    if (fill) { g.fillStyle = fill; g.fill(); }
    g.strokeStyle = style;
    g.stroke();
  };
  for (const x of d.net) ring(x, d.radius, "rgba(40,90,200,0.35)", "rgba(40,90,200,0.06)");
  g.lineWidth = 2;
  ring([0, 0], 1, "#222");
  g.lineWidth = 1;

  g.fillStyle = "#285ac8";
  for (const x of d.net) { g.beginPath(); g.arc(X(x), Y(x), 4, 0, 2 * Math.PI); g.fill(); }
  g.fillStyle = "#c8282d";
  g.beginPath(); g.arc(X(d.worst), Y(d.worst), 5, 0, 2 * Math.PI); g.fill();
}

function drawCurve(points) {
  const c = $("curve");
  const g = c.getContext("2d");
  const pad = 40;
  const pmax = points[points.length - 1].p;
  const X = (p) => pad + (p - 1) / (pmax - 1 || 1) * (c.width - 2 * pad);
  const Y = (v) => c.height - pad - (v - 1) * (c.height - 2 * pad);
  g.clearRect(0, 0, c.width, c.height);
  g.strokeStyle = "#999";
  g.strokeRect(pad, pad, c.width - 2 * pad, c.height - 2 * pad);
  g.fillStyle = "#444";
  g.fillText("1", pad - 14, Y(1) + 4);
  g.fillText("2", pad - 14, Y(2) + 4);
  g.fillText("p = 1", pad, c.height - pad + 16);
  g.fillText("p = " + pmax, c.width - pad - 30, c.height - pad + 16);

  g.strokeStyle = "#222";
  g.beginPath();
  points.forEach((pt, i) => (i === 0 ? g.moveTo(X(pt.p), Y(pt.exact)) : g.lineTo(X(pt.p), Y(pt.exact))));
  g.stroke();
  g.fillStyle = "#c8282d";
  for (const pt of points) { g.beginPath(); g.arc(X(pt.p), Y(pt.estimate), 3, 0, 2 * Math.PI); g.fill(); }
}

await init();

$("plot-go").onclick = guarded("plot-out", (out) => {
  const p = $("plot-inf").checked ? Infinity : num("plot-p");
  const d = JSON.parse(covering_plot(p, $("plot-kind").value, num("plot-m"), seed("plot-seed")));
  drawPlot(d);
  const upper = d.upper === null ? "none" : d.upper.toFixed(6);
  out.textContent = `radius ${d.radius.toFixed(6)}   certified lower ${d.lower.toFixed(6)}   closed-form upper ${upper}\nworst point (${d.worst.map((v) => v.toFixed(4)).join(", ")})`;
});

$("curve-go").onclick = guarded("curve-out", (out) => {
  const pts = JSON.parse(two_point_curve(num("curve-dim"), num("curve-pmax"), num("curve-steps"), 1n));
  drawCurve(pts);
  const worst = Math.max(...pts.map((pt) => Math.abs(pt.estimate - pt.exact)));
  out.textContent = `line: 2^(1/p), dots: search estimate; largest gap ${worst.toExponential(2)}`;
});

$("polyk-go").onclick = guarded("polyk-out", (out) => {
  const rows = JSON.parse(polyk_bounds(num("polyk-dim"), num("polyk-m"), num("polyk-kmax"), seed("polyk-seed")));
  const body = $("polyk-table").querySelector("tbody");
  body.innerHTML = "";
  for (const r of rows) {
    const tr = document.createElement("tr");
    for (const v of [r.k, r.guaranteed.toFixed(6), r.measured.toFixed(6), r.floor.toFixed(6)]) {
      const td = document.createElement("td");
      td.textContent = v;
      tr.appendChild(td);
    }
    body.appendChild(tr);
  }
  out.textContent = "";
});

$("plot-go").click();
$("curve-go").click();
$("polyk-go").click();
