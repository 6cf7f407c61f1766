import init, {
  filter_response, filter_frequencies, filter_coefficients,
  atdm_explore, AtdmSample, LdaPlayground,
} from "./pkg/myo_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);
const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
  "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939"];

function showError(e) {
  $("error").textContent = e ? String(e.message ?? e) : "";
}

function drawResponse() {
  const canvas = $("response");
  const ctx = canvas.getContext("2d");
  const points = 400;
  let db;
  try {
    db = filter_response(num("fs"), num("lo"), num("hi"), num("order"), num("notch"), num("q"), points);
    $("coeffs").textContent = filter_coefficients(num("fs"), num("lo"), num("hi"), num("order"), num("notch"), num("q"));
    showError(null);
  } catch (e) {
    showError(e);
    return;
  }
  const freqs = filter_frequencies(num("fs"), points);
  const { width: w, height: h } = canvas;
  const y = (v) => h * (-Math.max(v, -80)) / 80;
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#eee";
  ctx.fillStyle = "#888";
  for (let g = 0; g >= -80; g -= 20) {
    ctx.beginPath(); ctx.moveTo(0, y(g)); ctx.lineTo(w, y(g)); ctx.stroke();
    ctx.fillText(`${g} dB`, 4, y(g) - 2);
  }
  ctx.fillText(`${freqs[freqs.length - 1]} Hz`, w - 60, h - 4);
  ["#9ab", "#d9a", "#222"].forEach((colour, k) => {
    ctx.strokeStyle = colour;
    ctx.beginPath();
    for (let i = 0; i < points; i++) {
      const px = (w * i) / (points - 1);
      const py = y(db[k * points + i]);
      i ? ctx.lineTo(px, py) : ctx.moveTo(px, py);
    }
    ctx.stroke();
  });
}

function drawExplorer() {
  let sample;
  try {
    sample = atdm_explore(num("amp"), num("tone"), num("noise"), BigInt(num("seed")), 200);
  } catch (e) {
    showError(e);
    return;
  }
  const sig = sample.signal();
  const canvas = $("signal");
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const peak = Math.max(1e-9, ...sig.map(Math.abs));
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#1f77b4";
  ctx.beginPath();
  sig.forEach((v, i) => {
    const px = (w * i) / (sig.length - 1);
    const py = h / 2 - (0.45 * h * v) / peak;
    i ? ctx.lineTo(px, py) : ctx.moveTo(px, py);
  });
  ctx.stroke();
  const names = AtdmSample.feature_names();
  const values = sample.features();
  $("features").innerHTML =
    "<tr>" + names.map((n) => `<th>${n}</th>`).join("") + "<th>degenerate</th></tr>" +
    "<tr>" + Array.from(values).map((v) => `<td>${v.toPrecision(5)}</td>`).join("") +
    `<td>${sample.degenerate()}</td></tr>`;
  sample.free();
}

const VIEW = 6;
let lda;

function drawPlane() {
  const canvas = $("plane");
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);
  const cells = 80;
  if (lda.class_count() >= 2) {
    const map = lda.decision_map(-VIEW, VIEW, VIEW, -VIEW, cells, cells);
    ctx.globalAlpha = 0.25;
    for (let j = 0; j < cells; j++) {
      for (let i = 0; i < cells; i++) {
        ctx.fillStyle = PALETTE[map[j * cells + i] % PALETTE.length];
        ctx.fillRect((i * w) / cells, (j * h) / cells, w / cells + 1, h / cells + 1);
      }
    }
    ctx.globalAlpha = 1;
  }
  const pts = lda.points();
  const owners = lda.point_classes();
  for (let k = 0; k < owners.length; k++) {
    ctx.fillStyle = PALETTE[owners[k] % PALETTE.length];
    const px = ((pts[2 * k] + VIEW) / (2 * VIEW)) * w;
    const py = ((VIEW - pts[2 * k + 1]) / (2 * VIEW)) * h;
    ctx.fillRect(px - 2, py - 2, 4, 4);
  }
  const cov = lda.pooled_cov();
  $("lda-info").textContent = `${lda.class_count()} classes` +
    (cov.length ? `, pooled covariance [${Array.from(cov).map((v) => v.toFixed(3)).join(", ")}]` : "");
}

function addClassAt(event) {
  const rect = event.target.getBoundingClientRect();
  const x = ((event.clientX - rect.left) / rect.width) * 2 * VIEW - VIEW;
  const y = VIEW - ((event.clientY - rect.top) / rect.height) * 2 * VIEW;
  try {
    lda.add_class(x, y, num("spread"), num("npts"), BigInt(lda.class_count() + 1));
    showError(null);
  } catch (e) {
    showError(e);
  }
  drawPlane();
}

await init();
lda = new LdaPlayground();
for (const id of ["fs", "lo", "hi", "order", "notch", "q"]) $(id).addEventListener("input", drawResponse);
for (const id of ["amp", "tone", "noise", "seed"]) $(id).addEventListener("input", drawExplorer);
$("plane").addEventListener("click", addClassAt);
$("reset").addEventListener("click", () => { lda.reset(); drawPlane(); });
drawResponse();
drawExplorer();
drawPlane();
