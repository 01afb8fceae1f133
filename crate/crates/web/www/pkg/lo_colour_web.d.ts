/* tslint:disable */
/* eslint-disable */

/**
 * Edge co-colouring of `K_m` with `k` colours.
 */
export function coColour(m: number, k: number): string;

/**
 * Minion homomorphism between the LO polymorphism minions at uniformities
 * `r_src` and `r_dst`.
 */
export function minionCheck(r_src: number, r_dst: number, k: number): string;

/**
 * Generates a planted instance of `family` (`sparse`, `balanced` or
 * `dense`) and colours it.
 */
export function solve_planted(n: number, seed: number, family: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly coColour: (a: number, b: number) => [number, number];
    readonly minionCheck: (a: number, b: number, c: number) => [number, number];
    readonly solve_planted: (a: number, b: number, c: number, d: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
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
