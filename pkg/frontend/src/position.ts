/** Conversions between textarea character offsets and 1-based line/col. */

import type { TokenInfo } from "./types.js";

export interface LineCol {
    line: number;
    col: number;
}

export function offsetToLineCol(text: string, offset: number): LineCol {
    const clamped = Math.max(0, Math.min(offset, text.length));
    let line = 1;
    let lineStart = 0;
    for (let i = 0; i < clamped; i++) {
        if (text.charCodeAt(i) === 10) {
            line += 1;
            lineStart = i + 1;
        }
    }
    return { line, col: clamped - lineStart + 1 };
}

export function lineColToOffset(text: string, line: number, col: number): number {
    let current = 1;
    let offset = 0;
    while (current < line) {
        const nl = text.indexOf("\n", offset);
        if (nl < 0) {
            return text.length;
        }
        offset = nl + 1;
        current += 1;
    }
    return Math.min(offset + col - 1, text.length);
}

/** Character offsets [start, end) covered by a token. */
export function tokenRange(
    text: string,
    token: Pick<TokenInfo, "line" | "col" | "len">,
): { start: number; end: number } {
    const start = lineColToOffset(text, token.line, token.col);
    return { start, end: start + token.len };
}
