/** Wire types for the language service endpoints. */

export interface HoverRequest {
    source: string;
    line: number;
    col: number;
    docPaths?: string[];
}

export interface HoverResponse {
    found: boolean;
    word: string;
    category: string;
    snippet: string;
    fullMarkdown: string;
    html: string;
}

export interface TokenInfo {
    kind: string;
    text: string;
    line: number;
    col: number;
    len: number;
}

export interface ParseErrorPayload {
    line: number;
    col: number;
    message: string;
}

export interface FaultPayload {
    kind: string;
    line: number;
    col: number;
}

export type DesugarResult =
    | { ok: true; source: string }
    | { ok: false; error: ParseErrorPayload };

export type RunResult =
    | { ok: true; output: string[]; dump: string }
    | { ok: true; output: string[]; fault: FaultPayload }
    | { ok: false; error: ParseErrorPayload };

export type Tab = "edit" | "desugar" | "run";
