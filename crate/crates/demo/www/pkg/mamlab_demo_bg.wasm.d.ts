/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const fan_report: (a: number, b: number) => [number, number];
export const fixture_input: (a: number, b: number) => [number, number];
export const fixture_names: () => [number, number];
export const potential_grid: (a: number, b: number, c: number, d: number) => [number, number];
export const sample_quadrics: (a: number, b: number, c: number, d: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
