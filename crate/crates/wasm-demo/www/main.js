import init, { displacementDemo, productDemo, normalityDemo } from "./pkg/blocktoep_wasm.js";

const CELL = 12;

function heatmap(map, caption) {
  const canvas = document.createElement("canvas");
  const cell = Math.max(3, Math.floor(CELL * 16 / Math.max(map.size, 16)));
  canvas.width = canvas.height = map.size * cell;
  const ctx = canvas.getContext("2d");
  const top = map.max > 0 ? map.max : 1;
  for (let r = 0; r < map.size; r++) {
    for (let c = 0; c < map.size; c++) {
      const shade = Math.round(255 * (1 - map.values[r * map.size + c] / top));
      ctx.fillStyle = `rgb(${shade},${shade},255)`;
      ctx.fillRect(c * cell, r * cell, cell, cell);
    }
  }
  const fig = document.createElement("figure");
  const cap = document.createElement("figcaption");
  cap.textContent = caption;
  fig.append(canvas, cap);
  return fig;
}

function verdict(b) {
  return b ? "holds" : "fails";
}

function values(section) {
  const out = {};
  for (const el of section.querySelectorAll("input, select")) {
    out[el.name] = el.type === "checkbox" ? el.checked : el.type === "number" ? Number(el.value) : el.value;
  }
  return out;
}

function wire(id, render) {
  const section = document.getElementById(id);
  const maps = section.querySelector(".maps");
  const out = section.querySelector(".out");
  const update = () => {
    maps.replaceChildren();
    try {
      const { figures, text } = render(values(section));
      maps.append(...figures);
      out.textContent = text;
    } catch (e) {
      out.textContent = `error: ${e.message ?? e}`;
    }
  };
  section.addEventListener("input", update);
  update();
}

function fmt(x) {
  return x.toExponential(3);
}

await init();

wire("displacement", (v) => {
  const r = JSON.parse(displacementDemo(v.n, v.d, v.seed, v.perturb));
  return {
    figures: [heatmap(r.matrix, "|M|"), heatmap(r.displacement, "|M - S M S*|")],
    text: `block Toeplitz: ${verdict(r.toeplitz)} (diagonal scan: ${verdict(r.oracle)})\n` +
      `largest interior displacement entry: ${fmt(r.interior_residual)}`,
  };
});

wire("product", (v) => {
  const r = JSON.parse(productDemo(v.n, v.d, v.seed, v.family));
  return {
    figures: [heatmap(r.gap_ab, "wing gap of (A, B)"), heatmap(r.gap_cd, "wing gap of (C, D)")],
    text: `structured: ${verdict(r.verdict)}, residual ${fmt(r.residual)} (scale ${fmt(r.scale)})\n` +
      `dense:      ${verdict(r.oracle)}, residual ${fmt(r.oracle_residual)}`,
  };
});

wire("normality", (v) => {
  const r = JSON.parse(normalityDemo(v.n, v.d, v.seed, v.branch, v.perturb));
  const lines = r.slices.map((s) => {
    const lambda = s.lambda ? `, lambda = ${s.lambda[0].toFixed(4)} ${s.lambda[1] < 0 ? "-" : "+"} ${Math.abs(s.lambda[1]).toFixed(4)}i` : "";
    return `slice ${s.slice}: ${s.classification}${lambda}`;
  });
  return {
    figures: [heatmap(r.matrix, "|A|"), ...r.slices.map((s) => heatmap(s.matrix, `slice ${s.slice}`))],
    text: `${lines.join("\n")}\nnormal: ${verdict(r.normal)} (commutator: ${verdict(r.oracle)}, max |AA* - A*A| = ${fmt(r.commutator)})`,
  };
});
