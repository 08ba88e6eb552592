/** Overlay markup for the editor, driven by the tokenize endpoint.
 *
 * The client never classifies text itself; it wraps exactly the spans
 * the service reported, escaping everything else verbatim.
 */

import type { TokenInfo } from "./types.js";

function escapeHtml(text: string): string {
    return text
        .replace(/&/g, "&amp;")
        .replace(/</g, "&lt;")
        .replace(/>/g, "&gt;")
        .replace(/"/g, "&quot;");
}

const KIND_CLASSES: Record<string, string> = {
    keyword: "tok-keyword",
    identifier: "tok-ident",
    "string-literal": "tok-string",
    "int-literal": "tok-number",
    arrow: "tok-operator",
    colon: "tok-operator",
    hash: "tok-operator",
    punctuation: "tok-punct",
};

export function highlightSource(source: string, tokens: TokenInfo[]): string {
    const lines = source.split("\n");
    const byLine = new Map<number, TokenInfo[]>();
    for (const token of tokens) {
        const list = byLine.get(token.line) ?? [];
        list.push(token);
        byLine.set(token.line, list);
    }
    const rendered = lines.map((text, index) => {
        const lineTokens = (byLine.get(index + 1) ?? [])
            .slice()
            .sort((a, b) => a.col - b.col);
        let html = "";
        let pos = 0;
        for (const token of lineTokens) {
            const start = token.col - 1;
            html += escapeHtml(text.slice(pos, start));
            const cls = KIND_CLASSES[token.kind] ?? "tok-punct";
            html += `<span class="${cls}">` +
                escapeHtml(text.slice(start, start + token.len)) +
                "</span>";
            pos = start + token.len;
        }
        html += escapeHtml(text.slice(pos));
        return html;
    });
    return rendered.join("\n");
}
