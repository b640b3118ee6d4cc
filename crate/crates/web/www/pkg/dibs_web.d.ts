/* tslint:disable */
/* eslint-disable */

/**
 * Spectrum and expander-mixing samples of the Alon graph on `2^{3k}` vertices.
 */
export function alon(k: number, trials: number, seed: number): string;

/**
 * Generate a small graph and extract a certified induced bipartite subgraph from it.
 */
export function extract(model: string, size: number, algo: string, seed: number): string;

/**
 * `(1 − p)·Pr[Bin(d, p) ≥ ℓ] / p` on a log-spaced grid of `d`.
 */
export function tail_margin(d_min: number, d_max: number, points: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly alon: (a: number, b: number, c: number) => [number, number, number, number];
    readonly extract: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly tail_margin: (a: number, b: number, c: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
