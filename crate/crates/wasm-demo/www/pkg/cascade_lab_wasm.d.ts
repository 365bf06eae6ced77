/* tslint:disable */
/* eslint-disable */

export function cmCurve(n: number, theta: number, reps: number, seed: number, ks: Uint32Array): Float64Array;

export function disconnectHistogram(n: number, reps: number, seed: number, bins: number): Float64Array;

export function starCurve(m: number, theta: number, reps: number, seed: number, ks: Uint32Array): Float64Array;

export function tailConstant(theta: number): number;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly cmCurve: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly disconnectHistogram: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly starCurve: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly tailConstant: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
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
