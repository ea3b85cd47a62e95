import init, { classify, plot, example } from "./pkg/shapiro_wasm.js";

const LABELS = ["L1", "L21", "L22", "G11", "G121", "G122", "G22", "G211", "G2121", "G2122", "G231", "G2321", "G2322"];
const $ = (id) => document.getElementById(id);

function showError(e) {
  $("error").textContent = e ? String(e) : "";
}

function coeffs() {
  return [$("coeffs").value, $("descending").checked];
}

function runClassify() {
  showError();
  try {
    const r = JSON.parse(classify(...coeffs()));
    const cls = (v) => (v === "HOLDS" ? "holds" : "fails");
    $("verdict").innerHTML =
      `<b>${r.symbol}</b> (${r.label}): predicted <span class="${cls(r.predicted)}">${r.predicted}</span>, ` +
      `direct count <span class="${cls(r.actual)}">${r.actual}</span>` +
      (r.nr_delta ? `; real roots of &Delta;: ${r.nr_delta.distinct}, of p: ${r.nr_p.distinct}` : "");
    $("report").textContent = JSON.stringify(r, null, 2);
    runPlot();
  } catch (e) {
    showError(e);
  }
}

function runExample() {
  showError();
  try {
    const r = JSON.parse(example($("label").value, Number($("budget").value), 0));
    if (r.status === "FOUND") {
      $("coeffs").value = r.polynomial;
      $("descending").checked = false;
      runClassify();
    } else {
      $("verdict").textContent = `${r.symbol}: nothing found in ${r.attempts} candidates`;
    }
  } catch (e) {
    showError(e);
  }
}

// y-range from the middle 90% of finite gains, so poles of K do not flatten the plot
function gainRange(points, k0) {
  const ks = points.map((p) => p.k).filter((k) => k !== null).sort((a, b) => a - b);
  if (ks.length === 0) return [0, 2 * k0];
  let lo = Math.min(ks[Math.floor(ks.length * 0.05)], 0, k0);
  let hi = Math.max(ks[Math.ceil(ks.length * 0.95) - 1], k0);
  const pad = 0.1 * (hi - lo || 1);
  return [lo - pad, hi + pad];
}

function runPlot() {
  showError();
  let s;
  try {
    s = JSON.parse(plot(...coeffs(), $("lo").value, $("hi").value, Number($("samples").value)));
  } catch (e) {
    showError(e);
    return;
  }
  const cv = $("canvas");
  const g = cv.getContext("2d");
  const W = cv.width, H = cv.height, M = 60;
  g.clearRect(0, 0, W, H);
  g.font = "24px system-ui";

  const pts = s.points;
  const x0 = pts[0].x, x1 = pts[pts.length - 1].x;
  const [y0, y1] = gainRange(pts, s.k0);
  const X = (x) => M + ((x - x0) / (x1 - x0)) * (W - 2 * M);
  const Y = (y) => H - M - ((y - y0) / (y1 - y0)) * (H - 2 * M);
  const clampY = (y) => Math.max(-H, Math.min(2 * H, Y(y)));

  // axes
  g.strokeStyle = "#ccc";
  g.lineWidth = 2;
  g.beginPath();
  g.moveTo(M, Y(0)); g.lineTo(W - M, Y(0));
  if (x0 < 0 && x1 > 0) { g.moveTo(X(0), M); g.lineTo(X(0), H - M); }
  g.stroke();
  g.fillStyle = "#555";
  g.fillText(String(x0), M, H - M / 3);
  g.fillText(String(x1), W - M - 40, H - M / 3);
  g.fillText(y1.toPrecision(3), 4, M);
  g.fillText(y0.toPrecision(3), 4, H - M);

  // K0
  g.strokeStyle = "#bf8700";
  g.setLineDash([12, 8]);
  g.beginPath(); g.moveTo(M, Y(s.k0)); g.lineTo(W - M, Y(s.k0)); g.stroke();
  g.setLineDash([]);
  g.fillStyle = "#bf8700";
  g.fillText(`K₀ = ${s.k0}`, W - M - 140, Y(s.k0) - 8);

  // K, split at events and coloured by segment parity
  g.lineWidth = 3;
  for (let i = 1; i < pts.length; i++) {
    const a = pts[i - 1], b = pts[i];
    if (a.k === null || b.k === null) continue;
    const parity = a.parity ?? b.parity;
    if (a.parity && b.parity && a.parity !== b.parity) continue;
    g.strokeStyle = parity === "ODD" ? "#9aa5b1" : "#0969da";
    g.beginPath(); g.moveTo(X(a.x), clampY(a.k)); g.lineTo(X(b.x), clampY(b.k)); g.stroke();
  }

  // Δ scaled to the plot height, sharing the zero line
  if ($("showDelta").checked) {
    const dmax = Math.max(...pts.map((p) => Math.abs(p.delta))) || 1;
    const scale = (Math.max(Math.abs(y0), Math.abs(y1)) * 0.9) / dmax;
    g.strokeStyle = "#8250df";
    g.lineWidth = 2;
    g.beginPath();
    pts.forEach((p, i) => (i ? g.lineTo : g.moveTo).call(g, X(p.x), clampY(p.delta * scale)));
    g.stroke();
  }

  // markers
  for (const p of pts.filter((p) => p.marker)) {
    const x = X(p.x), y = p.k === null ? Y(y1) : clampY(p.k);
    g.strokeStyle = g.fillStyle = "#222";
    g.beginPath();
    if (p.marker === "breakaway") {
      g.moveTo(x, y - 9); g.lineTo(x + 9, y); g.lineTo(x, y + 9); g.lineTo(x - 9, y); g.closePath(); g.fill();
    } else {
      g.arc(x, Y(0), 8, 0, 2 * Math.PI);
      p.marker === "zero" ? g.fill() : g.stroke();
    }
  }
}

await init();
for (const l of LABELS) $("label").add(new Option(l, l));
$("classify").onclick = runClassify;
$("example").onclick = runExample;
$("plot").onclick = runPlot;
$("coeffs").addEventListener("keydown", (e) => e.key === "Enter" && runClassify());
runClassify();
