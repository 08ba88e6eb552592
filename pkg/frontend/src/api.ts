/** Thin typed client over the language service HTTP API.
 *
 * All language knowledge lives server-side; this module only moves JSON.
 * The transport is injectable so tests can intercept every request.
 */

import type {
    DesugarResult,
    HoverRequest,
    HoverResponse,
    ParseErrorPayload,
    RunResult,
    TokenInfo,
} from "./types.js";

export interface TransportReply {
    status: number;
    body: unknown;
}

export interface Transport {
    post(path: string, payload: unknown): Promise<TransportReply>;
}

export class FetchTransport implements Transport {
    constructor(private readonly baseUrl: string = "") {}

    async post(path: string, payload: unknown): Promise<TransportReply> {
        const response = await fetch(this.baseUrl + path, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify(payload),
        });
        return { status: response.status, body: await response.json() };
    }
}

export class ServiceError extends Error {
    constructor(readonly status: number, message: string) {
        super(message);
    }
}

function messageOf(body: unknown): string {
    if (body && typeof body === "object" && "message" in body) {
        return String((body as { message: unknown }).message);
    }
    return "service error";
}

export class ServiceClient {
    constructor(private readonly transport: Transport) {}

    async hover(request: HoverRequest): Promise<HoverResponse> {
        const reply = await this.transport.post("/hover", request);
        if (reply.status !== 200) {
            throw new ServiceError(reply.status, messageOf(reply.body));
        }
        return reply.body as HoverResponse;
    }

    async desugar(source: string): Promise<DesugarResult> {
        const reply = await this.transport.post("/desugar", { source });
        if (reply.status === 200) {
            return { ok: true, source: (reply.body as { source: string }).source };
        }
        if (reply.status === 422) {
            return { ok: false, error: reply.body as ParseErrorPayload };
        }
        throw new ServiceError(reply.status, messageOf(reply.body));
    }

    async run(source: string, budget?: number): Promise<RunResult> {
        const payload: { source: string; budget?: number } = { source };
        if (budget !== undefined) {
            payload.budget = budget;
        }
        const reply = await this.transport.post("/run", payload);
        if (reply.status === 200) {
            const body = reply.body as {
                output: string[];
                dump?: string;
                fault?: { kind: string; line: number; col: number };
            };
            if (body.fault) {
                return { ok: true, output: body.output, fault: body.fault };
            }
            return { ok: true, output: body.output, dump: body.dump ?? "" };
        }
        if (reply.status === 422) {
            return { ok: false, error: reply.body as ParseErrorPayload };
        }
        throw new ServiceError(reply.status, messageOf(reply.body));
    }

    async tokenize(source: string): Promise<TokenInfo[]> {
        const reply = await this.transport.post("/tokenize", { source });
        if (reply.status !== 200) {
            throw new ServiceError(reply.status, messageOf(reply.body));
        }
        return (reply.body as { tokens: TokenInfo[] }).tokens;
    }
}
