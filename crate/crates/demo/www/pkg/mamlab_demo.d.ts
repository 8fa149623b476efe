/* tslint:disable */
/* eslint-disable */

/**
 * Validity, completeness and weak normality of the fan; for weakly normal
 * planar fans, also the polygon vertices in cyclic order.
 */
export function fan_report(input: string): string;

/**
 * The input file of a built-in fixture.
 */
export function fixture_input(name: string): string;

/**
 * Names of the built-in fixtures, as a JSON array.
 */
export function fixture_names(): string;

/**
 * Potential `F(x)` on the square `[−range, range]²` of log-moduli
 * `(x_1, x_2)`, other coordinates zero, with the Hessian trace per cell.
 */
export function potential_grid(input: string, size: number, range: number): string;

/**
 * Seeded points of the quadric realization with their squared moduli,
 * the worst quadric residual and the Jacobian rank check.
 */
export function sample_quadrics(input: string, seed: number, count: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly fan_report: (a: number, b: number) => [number, number];
    readonly fixture_input: (a: number, b: number) => [number, number];
    readonly fixture_names: () => [number, number];
    readonly potential_grid: (a: number, b: number, c: number, d: number) => [number, number];
    readonly sample_quadrics: (a: number, b: number, c: number, d: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
