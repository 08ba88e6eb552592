/** Playground state machine, kept free of DOM concerns for testing.
 *
 * A popup exists only after a hover response with found=true and is
 * cleared by any edit or a click that hits nothing. At most one hover
 * request is live at a time: responses carry a sequence number and
 * stale ones are discarded. Every string shown (snippet, body, html,
 * rewrite, output) is taken verbatim from a service response.
 */

import { ServiceClient } from "./api.js";
import type { DesugarResult, RunResult, Tab, TokenInfo } from "./types.js";

export interface Popup {
    word: string;
    category: string;
    snippet: string;
    fullMarkdown: string;
    html: string;
    anchor: { line: number; col: number };
    expanded: boolean;
}

export interface EditorState {
    sourceText: string;
    cursor: { line: number; col: number };
    popup: Popup | null;
    tab: Tab;
    status: string;
}

export class PlaygroundController {
    readonly state: EditorState;
    private hoverSeq = 0;

    constructor(
        private readonly client: ServiceClient,
        initialSource: string = "",
    ) {
        this.state = {
            sourceText: initialSource,
            cursor: { line: 1, col: 1 },
            popup: null,
            tab: "edit",
            status: "",
        };
    }

    /** Cursor landed on (line, col); ask the service what lives there. */
    async onTokenClick(line: number, col: number): Promise<void> {
        this.state.cursor = { line, col };
        const seq = ++this.hoverSeq;
        let response;
        try {
            response = await this.client.hover({
                source: this.state.sourceText,
                line,
                col,
            });
        } catch (err) {
            if (seq === this.hoverSeq) {
                this.state.popup = null;
                this.state.status =
                    err instanceof Error ? err.message : "service unreachable";
            }
            return;
        }
        if (seq !== this.hoverSeq) {
            return; // a newer click superseded this request
        }
        this.state.status = "";
        if (!response.found) {
            this.state.popup = null;
            return;
        }
        this.state.popup = {
            word: response.word,
            category: response.category,
            snippet: response.snippet,
            fullMarkdown: response.fullMarkdown,
            html: response.html,
            anchor: { line, col },
            expanded: false,
        };
    }

    onEdit(newText: string): void {
        this.state.sourceText = newText;
        this.state.popup = null;
    }

    onClickElsewhere(): void {
        this.state.popup = null;
    }

    get buttonsEnabled(): boolean {
        return this.state.popup !== null;
    }

    /** "docs": grow the popup to the full markdown body. */
    onDocsClicked(): void {
        if (this.state.popup) {
            this.state.popup.expanded = true;
        }
    }

    /** "online": hand back the service-rendered HTML for a browser view. */
    onOnlineClicked(): string | null {
        return this.state.popup ? this.state.popup.html : null;
    }

    setTab(tab: Tab): void {
        this.state.tab = tab;
    }

    async refreshDesugar(): Promise<DesugarResult> {
        return this.client.desugar(this.state.sourceText);
    }

    async runProgram(budget?: number): Promise<RunResult> {
        return this.client.run(this.state.sourceText, budget);
    }

    async tokensForHighlight(): Promise<TokenInfo[] | null> {
        try {
            return await this.client.tokenize(this.state.sourceText);
        } catch {
            return null; // mid-edit lex errors just drop the highlighting
        }
    }
}
