/** DOM wiring for the playground page. */

import { FetchTransport, ServiceClient } from "./api.js";
import { highlightSource } from "./highlight.js";
import { offsetToLineCol } from "./position.js";
import { PlaygroundController } from "./state.js";
import type { Tab } from "./types.js";

const SAMPLE = `interface I {
    OneWay: f(string)
}

outputPort P {
    Location: "socket://x:80"
    Protocol: sodep
    Interfaces: I
}

main {
    a.b[0] = 10;
    a.b[1] = 20;
    foreach (v -> a.b) {
        println(v)
    }
}
`;

function el<T extends HTMLElement>(id: string): T {
    const node = document.getElementById(id);
    if (!node) {
        throw new Error(`missing element #${id}`);
    }
    return node as T;
}

function setText(node: HTMLElement, text: string): void {
    node.textContent = text;
}

export function boot(): void {
    const client = new ServiceClient(new FetchTransport(""));
    const controller = new PlaygroundController(client, SAMPLE);

    const editor = el<HTMLTextAreaElement>("editor");
    const overlay = el<HTMLElement>("overlay");
    const popup = el<HTMLElement>("popup");
    const popupWord = el<HTMLElement>("popup-word");
    const popupCategory = el<HTMLElement>("popup-category");
    const popupBody = el<HTMLElement>("popup-body");
    const docsButton = el<HTMLButtonElement>("popup-docs");
    const onlineButton = el<HTMLButtonElement>("popup-online");
    const statusBar = el<HTMLElement>("status");
    const onlineView = el<HTMLElement>("online-view");
    const onlineContent = el<HTMLElement>("online-content");
    const desugarLeft = el<HTMLElement>("desugar-left");
    const desugarRight = el<HTMLElement>("desugar-right");
    const runOutput = el<HTMLElement>("run-output");
    const budgetInput = el<HTMLInputElement>("budget");

    editor.value = controller.state.sourceText;

    function renderStatus(): void {
        setText(statusBar, controller.state.status);
        statusBar.classList.toggle("visible", controller.state.status !== "");
    }

    function renderPopup(x: number, y: number): void {
        const info = controller.state.popup;
        if (!info) {
            popup.classList.add("hidden");
            docsButton.disabled = true;
            onlineButton.disabled = true;
            return;
        }
        setText(popupWord, info.word);
        setText(popupCategory, info.category);
        setText(popupBody, info.expanded ? info.fullMarkdown : info.snippet);
        popup.classList.remove("hidden");
        popup.style.left = `${Math.min(x, window.innerWidth - 340)}px`;
        popup.style.top = `${y + 14}px`;
        docsButton.disabled = false;
        onlineButton.disabled = false;
    }

    async function refreshHighlight(): Promise<void> {
        const tokens = await controller.tokensForHighlight();
        if (tokens === null) {
            overlay.innerHTML = "";
            overlay.appendChild(
                document.createTextNode(controller.state.sourceText));
            return;
        }
        overlay.innerHTML = highlightSource(controller.state.sourceText, tokens);
    }

    editor.addEventListener("input", () => {
        controller.onEdit(editor.value);
        renderPopup(0, 0);
        renderStatus();
        void refreshHighlight();
    });

    editor.addEventListener("scroll", () => {
        overlay.parentElement!.scrollTop = editor.scrollTop;
        overlay.parentElement!.scrollLeft = editor.scrollLeft;
    });

    editor.addEventListener("click", (event) => {
        // selectionStart reflects the click position once the event fires
        const { line, col } = offsetToLineCol(editor.value,
                                              editor.selectionStart);
        void controller.onTokenClick(line, col).then(() => {
            renderPopup(event.clientX, event.clientY);
            renderStatus();
        });
    });

    document.addEventListener("click", (event) => {
        const target = event.target as Node;
        if (!popup.contains(target) && target !== editor) {
            controller.onClickElsewhere();
            renderPopup(0, 0);
        }
    });

    docsButton.addEventListener("click", () => {
        controller.onDocsClicked();
        renderPopup(parseInt(popup.style.left, 10) || 0,
                    (parseInt(popup.style.top, 10) || 14) - 14);
    });

    onlineButton.addEventListener("click", () => {
        const html = controller.onOnlineClicked();
        if (html !== null) {
            // service-rendered HTML of an escaped markdown body
            onlineContent.innerHTML = html;
            onlineView.classList.remove("hidden");
        }
    });

    el<HTMLButtonElement>("online-close").addEventListener("click", () => {
        onlineView.classList.add("hidden");
    });

    function showErrorMarker(pane: HTMLElement, source: string,
                             line: number, col: number,
                             message: string): void {
        const lines = source.split("\n");
        const marked: string[] = [];
        lines.forEach((text, index) => {
            marked.push(text);
            if (index + 1 === line) {
                marked.push(" ".repeat(Math.max(0, col - 1)) +
                            `^ ${message}`);
            }
        });
        setText(pane, marked.join("\n"));
        pane.classList.add("error");
    }

    async function refreshDesugarView(): Promise<void> {
        setText(desugarLeft, controller.state.sourceText);
        desugarRight.classList.remove("error");
        const result = await controller.refreshDesugar();
        if (result.ok) {
            setText(desugarRight, result.source);
        } else {
            showErrorMarker(desugarRight, controller.state.sourceText,
                            result.error.line, result.error.col,
                            result.error.message);
        }
    }

    async function runProgram(): Promise<void> {
        const budget = budgetInput.value ?
            parseInt(budgetInput.value, 10) : undefined;
        const result = await controller.runProgram(budget);
        if (!result.ok) {
            setText(runOutput,
                    `parse error at ${result.error.line}:` +
                    `${result.error.col}: ${result.error.message}`);
            runOutput.classList.add("error");
            return;
        }
        runOutput.classList.remove("error");
        let text = result.output.join("\n");
        if ("fault" in result) {
            text += (text ? "\n" : "") +
                `fault: ${result.fault.kind} at ` +
                `${result.fault.line}:${result.fault.col}`;
            runOutput.classList.add("error");
        } else if (result.dump) {
            text += (text ? "\n\n" : "") + "store:\n" + result.dump;
        }
        setText(runOutput, text || "(no output)");
    }

    el<HTMLButtonElement>("run-button").addEventListener("click", () => {
        void runProgram();
    });

    const tabs: Tab[] = ["edit", "desugar", "run"];
    for (const tab of tabs) {
        el<HTMLButtonElement>(`tab-${tab}`).addEventListener("click", () => {
            controller.setTab(tab);
            for (const other of tabs) {
                el(`tab-${other}`).classList.toggle("active", other === tab);
                el(`pane-${other}`).classList.toggle("hidden", other !== tab);
            }
            if (tab === "desugar") {
                void refreshDesugarView();
            }
        });
    }

    void refreshHighlight();
}

boot();
