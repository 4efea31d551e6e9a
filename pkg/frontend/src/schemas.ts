export type Scale = "linear" | "log";

export interface PlotSpec {
    kind: string;
    header: string[];
    x: string;
    y: string;
    /** columns whose combined values name one curve */
    series: string[];
    /** optional status column; only rows with "ok" are drawn */
    status?: string;
    xScale: Scale;
    yScale: Scale;
    xLabel: string;
    yLabel: string;
    title: string;
}

export const SCHEMAS: PlotSpec[] = [
    {
        kind: "snr_profile",
        header: ["f_hz", "lambda_over_a", "mode", "snr"],
        x: "f_hz",
        y: "snr",
        series: ["mode", "lambda_over_a"],
        xScale: "linear",
        yScale: "log",
        xLabel: "frequency [Hz]",
        yLabel: "SNR",
        title: "SNR profile across the signaling band",
    },
    {
        kind: "fraction_vs_size",
        header: ["lambda_over_a", "bw_over_fc", "mode", "fraction", "status"],
        x: "lambda_over_a",
        y: "fraction",
        series: ["mode", "bw_over_fc"],
        status: "status",
        xScale: "linear",
        yScale: "linear",
        xLabel: "wavelength / antenna radius",
        yLabel: "fraction of baseline capacity",
        title: "Capacity fraction vs antenna size",
    },
    {
        kind: "rate_vs_bw",
        header: ["bw_over_fc", "mode", "rate_bps"],
        x: "bw_over_fc",
        y: "rate_bps",
        series: ["mode"],
        xScale: "linear",
        yScale: "log",
        xLabel: "bandwidth / carrier",
        yLabel: "rate [bit/s]",
        title: "Rate vs signaling bandwidth",
    },
    {
        kind: "fraction_vs_power",
        header: ["lambda_over_a", "power_w", "mode", "fraction"],
        x: "lambda_over_a",
        y: "fraction",
        series: ["mode", "power_w"],
        xScale: "linear",
        yScale: "linear",
        xLabel: "wavelength / antenna radius",
        yLabel: "fraction of baseline capacity",
        title: "Capacity fraction vs antenna size for two powers",
    },
    {
        kind: "interference_vs_density",
        header: ["rho", "lambda_over_a", "mode", "rate_ratio", "status"],
        x: "rho",
        y: "rate_ratio",
        series: ["mode", "lambda_over_a"],
        status: "status",
        xScale: "log",
        yScale: "linear",
        xLabel: "interferer density [1/m^2]",
        yLabel: "rate ratio",
        title: "Rate ratio vs interferer density",
    },
];

export class SchemaError extends Error {}

/** Match a header line against the known schemas (order-sensitive). */
export function detectSchema(header: string[]): PlotSpec {
    for (const spec of SCHEMAS) {
        if (spec.header.length === header.length &&
            spec.header.every((name, i) => name === header[i])) {
            return spec;
        }
    }
    const expected = SCHEMAS.map(s => `  ${s.kind}: ${s.header.join(",")}`).join("\n");
    throw new SchemaError(
        `unrecognized CSV header "${header.join(",")}"; expected one of:\n${expected}`);
}
