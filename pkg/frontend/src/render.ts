import { parseCsv } from "./csv.js";
import { detectSchema, PlotSpec, Scale } from "./schemas.js";

const WIDTH = 860;
const HEIGHT = 520;
const MARGIN = { left: 78, right: 24, top: 44, bottom: 54 };

// fixed palette cycled deterministically across series
const COLORS = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
];

interface Series {
    name: string;
    points: Array<[number, number]>;
}

export interface RenderResult {
    svg: string;
    warnings: string[];
}

function groupSeries(spec: PlotSpec, header: string[], rows: string[][],
                     warnings: string[]): Series[] {
    const col = (name: string) => header.indexOf(name);
    const xi = col(spec.x);
    const yi = col(spec.y);
    const si = spec.series.map(col);
    const sti = spec.status ? col(spec.status) : -1;

    const groups = new Map<string, Array<[number, number]>>();
    let skipped = 0;
    for (const row of rows) {
        if (sti >= 0 && row[sti] !== "ok") {
            skipped += 1;
            continue;
        }
        const x = Number(row[xi]);
        const y = Number(row[yi]);
        if (!Number.isFinite(x) || !Number.isFinite(y)) {
            skipped += 1;
            continue;
        }
        const name = si.map((i, k) => `${spec.series[k]}=${row[i]}`).join(" ");
        if (!groups.has(name)) {
            groups.set(name, []);
        }
        groups.get(name)!.push([x, y]);
    }
    if (skipped > 0) {
        warnings.push(`skipped ${skipped} row(s) without finite ok data`);
    }
    // deterministic ordering: insertion order of first appearance
    return [...groups.entries()].map(([name, points]) => ({ name, points }));
}

function makeScale(values: number[], scale: Scale, lo: number, hi: number) {
    let min = Math.min(...values);
    let max = Math.max(...values);
    if (scale === "log") {
        const positive = values.filter(v => v > 0);
        min = positive.length ? Math.min(...positive) : 1;
        max = positive.length ? Math.max(...positive) : 10;
    }
    if (min === max) {
        min -= min === 0 ? 1 : Math.abs(min) * 0.5;
        max += max === 0 ? 1 : Math.abs(max) * 0.5;
    }
    const fwd = (v: number) => (scale === "log" ? Math.log10(v) : v);
    const a = fwd(min);
    const b = fwd(max);
    return {
        min, max,
        map: (v: number) => lo + ((fwd(v) - a) / (b - a)) * (hi - lo),
    };
}

function ticks(min: number, max: number, scale: Scale): number[] {
    if (scale === "log") {
        const lo = Math.ceil(Math.log10(min) - 1e-9);
        const hi = Math.floor(Math.log10(max) + 1e-9);
        const out: number[] = [];
        for (let e = lo; e <= hi; e += Math.max(1, Math.floor((hi - lo) / 8))) {
            out.push(10 ** e);
        }
        return out.length >= 2 ? out : [min, max];
    }
    const span = max - min;
    const step = 10 ** Math.floor(Math.log10(span / 5));
    const mult = span / step > 25 ? 10 : span / step > 10 ? 5 : span / step > 5 ? 2 : 1;
    const nice = step * mult;
    const out: number[] = [];
    for (let v = Math.ceil(min / nice) * nice; v <= max + 1e-12 * span; v += nice) {
        out.push(v);
    }
    return out;
}

function fmt(v: number): string {
    if (v === 0) return "0";
    const mag = Math.abs(v);
    if (mag >= 1e4 || mag < 1e-3) return v.toExponential(1);
    return String(Number(v.toPrecision(4)));
}

const esc = (s: string) =>
    s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");

/** Render one scenario CSV to a deterministic standalone SVG document. */
export function renderCsv(text: string): RenderResult {
    const { header, rows } = parseCsv(text);
    const spec = detectSchema(header);
    const warnings: string[] = [];
    const series = groupSeries(spec, header, rows, warnings);

    const body: string[] = [];
    body.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">`);
    body.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
    body.push(`<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="16">${esc(spec.title)}</text>`);

    const x0 = MARGIN.left;
    const x1 = WIDTH - MARGIN.right;
    const y0 = HEIGHT - MARGIN.bottom;
    const y1 = MARGIN.top;
    body.push(`<rect x="${x0}" y="${y1}" width="${x1 - x0}" height="${y0 - y1}" fill="none" stroke="#333"/>`);
    body.push(`<text x="${(x0 + x1) / 2}" y="${HEIGHT - 14}" text-anchor="middle" font-size="13">${esc(spec.xLabel)}</text>`);
    body.push(`<text x="20" y="${(y0 + y1) / 2}" text-anchor="middle" font-size="13" transform="rotate(-90 20 ${(y0 + y1) / 2})">${esc(spec.yLabel)}</text>`);

    if (series.length === 0) {
        warnings.push("no drawable series in CSV body");
        body.push(`<text x="${(x0 + x1) / 2}" y="${(y0 + y1) / 2}" text-anchor="middle" font-size="14" fill="#888">no data</text>`);
        body.push("</svg>");
        return { svg: body.join("\n") + "\n", warnings };
    }

    const xs = series.flatMap(s => s.points.map(p => p[0]));
    const ys = series.flatMap(s => s.points.map(p => p[1]));
    const sx = makeScale(xs, spec.xScale, x0, x1);
    const sy = makeScale(ys, spec.yScale, y0, y1);

    for (const t of ticks(sx.min, sx.max, spec.xScale)) {
        const px = sx.map(t).toFixed(2);
        body.push(`<line x1="${px}" y1="${y0}" x2="${px}" y2="${y0 + 5}" stroke="#333"/>`);
        body.push(`<text x="${px}" y="${y0 + 20}" text-anchor="middle" font-size="11">${fmt(t)}</text>`);
    }
    for (const t of ticks(sy.min, sy.max, spec.yScale)) {
        const py = sy.map(t).toFixed(2);
        body.push(`<line x1="${x0 - 5}" y1="${py}" x2="${x0}" y2="${py}" stroke="#333"/>`);
        body.push(`<text x="${x0 - 9}" y="${py}" text-anchor="end" dominant-baseline="middle" font-size="11">${fmt(t)}</text>`);
    }

    series.forEach((s, idx) => {
        const color = COLORS[idx % COLORS.length];
        const pts = s.points
            .map(([x, y]) => `${sx.map(x).toFixed(2)},${sy.map(y).toFixed(2)}`)
            .join(" ");
        if (s.points.length === 1) {
            const [x, y] = s.points[0];
            body.push(`<circle cx="${sx.map(x).toFixed(2)}" cy="${sy.map(y).toFixed(2)}" r="3" fill="${color}"/>`);
        } else {
            body.push(`<polyline points="${pts}" fill="none" stroke="${color}" stroke-width="1.6"/>`);
        }
        const ly = y1 + 14 + idx * 16;
        body.push(`<line x1="${x1 - 170}" y1="${ly - 4}" x2="${x1 - 146}" y2="${ly - 4}" stroke="${color}" stroke-width="2"/>`);
        body.push(`<text x="${x1 - 140}" y="${ly}" font-size="11">${esc(s.name)}</text>`);
    });

    body.push("</svg>");
    return { svg: body.join("\n") + "\n", warnings };
}
