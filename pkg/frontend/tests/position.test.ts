import { describe, expect, it } from "vitest";

import { lineColToOffset, offsetToLineCol, tokenRange } from "../src/position.js";

const TEXT = "main {\n    x = 1\n}\n";

describe("offsetToLineCol", () => {
    it("maps the first character to 1:1", () => {
        expect(offsetToLineCol(TEXT, 0)).toEqual({ line: 1, col: 1 });
    });

    it("maps positions after newlines", () => {
        const offset = TEXT.indexOf("x");
        expect(offsetToLineCol(TEXT, offset)).toEqual({ line: 2, col: 5 });
    });

    it("clamps out-of-range offsets", () => {
        expect(offsetToLineCol(TEXT, 10_000).line).toBe(4);
        expect(offsetToLineCol(TEXT, -5)).toEqual({ line: 1, col: 1 });
    });

    it("is inverse to lineColToOffset on every position", () => {
        for (let offset = 0; offset <= TEXT.length; offset++) {
            const { line, col } = offsetToLineCol(TEXT, offset);
            expect(lineColToOffset(TEXT, line, col)).toBe(offset);
        }
    });
});

describe("lineColToOffset", () => {
    it("clamps past-the-end lines to the text length", () => {
        expect(lineColToOffset(TEXT, 99, 1)).toBe(TEXT.length);
    });
});

describe("tokenRange", () => {
    it("covers exactly the token text", () => {
        const token = { line: 2, col: 5, len: 1 };
        const { start, end } = tokenRange(TEXT, token);
        expect(TEXT.slice(start, end)).toBe("x");
    });
});
