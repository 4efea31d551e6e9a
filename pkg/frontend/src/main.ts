import { readFileSync, writeFileSync } from "node:fs";
import { parseArgs } from "node:util";

import { renderCsv } from "./render.js";
import { SchemaError } from "./schemas.js";

export function run(argv: string[]): number {
    const { positionals, values } = parseArgs({
        args: argv,
        allowPositionals: true,
        options: { out: { type: "string" } },
    });

    if (positionals[0] !== "render" || positionals.length !== 2) {
        process.stderr.write("usage: plots render <csv> [--out file.svg]\n");
        return 2;
    }
    const csvPath = positionals[1];
    const outPath = values.out ?? csvPath.replace(/\.csv$/i, "") + ".svg";

    let text: string;
    try {
        text = readFileSync(csvPath, "utf8");
    } catch (err) {
        process.stderr.write(`error: cannot read ${csvPath}: ${(err as Error).message}\n`);
        return 3;
    }

    try {
        const { svg, warnings } = renderCsv(text);
        for (const warning of warnings) {
            process.stderr.write(`warning: ${warning}\n`);
        }
        writeFileSync(outPath, svg, "utf8");
        process.stdout.write(`wrote ${outPath}\n`);
        return 0;
    } catch (err) {
        if (err instanceof SchemaError) {
            process.stderr.write(`schema error: ${err.message}\n`);
            return 1;
        }
        process.stderr.write(`error: ${(err as Error).message}\n`);
        return 1;
    }
}
