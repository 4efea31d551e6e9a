export interface Table {
    header: string[];
    rows: string[][];
}

/** Parse the simple unquoted CSV dialect the scenario runner emits. */
export function parseCsv(text: string): Table {
    const lines = text.split(/\r?\n/).filter(line => line.length > 0);
    if (lines.length === 0) {
        throw new Error("empty file: no header line");
    }
    const header = lines[0].split(",").map(s => s.trim());
    const rows = lines.slice(1).map(line => line.split(",").map(s => s.trim()));
    return { header, rows };
}
