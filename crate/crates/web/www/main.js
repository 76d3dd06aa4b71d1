import init, { Demo, scene_names, sweep } from "./pkg/maskmark_web.js";

const $ = (id) => document.getElementById(id);
let demo = null;

function paint(canvas, rgba, side) {
  const ctx = $(canvas).getContext("2d");
  ctx.putImageData(new ImageData(new Uint8ClampedArray(rgba), side, side), 0, 0);
}

function report(id, fn) {
  try {
    fn();
    $(id).classList.remove("error");
  } catch (e) {
    $(id).textContent = String(e.message ?? e);
    $(id).classList.add("error");
  }
}

function logoBits() {
  return $("logo").value.replace(/\s+/g, "");
}

function runEmbed() {
  report("embed-stats", () => {
    if (demo) demo.free();
    demo = null;
    demo = new Demo(+$("scene").value, logoBits(), +$("k").value, +$("floor").value);
    const side = demo.side();
    paint("host", demo.host_rgba(), side);
    paint("marked", demo.marked_rgba(), side);
    paint("map", demo.map_rgba(), side);
    $("embed-stats").textContent =
      `PSNR ${demo.psnr().toFixed(2)} dB, SSIM ${demo.ssim().toFixed(4)}, blocks ${demo.blocks()}`;
  });
}

function runAttack() {
  if (!demo) return;
  report("attack-stats", () => {
    const out = demo.attack($("kind").value, +$("amount").value, BigInt($("seed").value || 0));
    paint("attacked", out.rgba(), demo.side());
    const bits = out.bits();
    const want = logoBits();
    const ones = out.ones();
    const grid = $("logo-grid");
    grid.replaceChildren();
    for (let i = 0; i < 16; i++) {
      const cell = document.createElement("div");
      cell.className = bits[i] === "1" ? "one" : "zero";
      if (bits[i] !== want[i]) cell.classList.add("wrong");
      cell.textContent = ones[i];
      grid.append(cell);
    }
    $("attack-stats").textContent = `BER ${out.ber().toFixed(4)}`;
    out.free();
  });
}

function runSweep() {
  const grid = [0.01, 0.05, 0.1, 0.3, 0.6, 1.0];
  const body = $("sweep-table").querySelector("tbody");
  body.replaceChildren();
  const v = sweep(+$("scene").value, new Float64Array(grid), +$("floor").value);
  grid.forEach((k, i) => {
    const tr = document.createElement("tr");
    for (const s of [k.toFixed(2), v[2 * i].toFixed(2), v[2 * i + 1].toFixed(4)]) {
      const td = document.createElement("td");
      td.textContent = s;
      tr.append(td);
    }
    body.append(tr);
  });
}

await init();
scene_names().split(",").forEach((name, i) => {
  $("scene").append(new Option(name, i));
});
$("k").addEventListener("input", () => ($("k-out").textContent = (+$("k").value).toFixed(2)));
$("kind").addEventListener("change", () => {
  $("amount").value = $("kind").selectedOptions[0].dataset.amount;
});
$("run-embed").addEventListener("click", runEmbed);
$("run-attack").addEventListener("click", runAttack);
$("run-sweep").addEventListener("click", runSweep);
runEmbed();
