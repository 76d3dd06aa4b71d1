/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_attackoutcome_free: (a: number, b: number) => void;
export const __wbg_demo_free: (a: number, b: number) => void;
export const attackoutcome_ber: (a: number) => number;
export const attackoutcome_bits: (a: number) => [number, number];
export const attackoutcome_ones: (a: number) => [number, number];
export const attackoutcome_rgba: (a: number) => [number, number];
export const demo_attack: (a: number, b: number, c: number, d: number, e: bigint) => [number, number, number];
export const demo_blocks: (a: number) => [number, number];
export const demo_host_rgba: (a: number) => [number, number];
export const demo_map_rgba: (a: number) => [number, number];
export const demo_marked_rgba: (a: number) => [number, number];
export const demo_new: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const demo_psnr: (a: number) => number;
export const demo_side: (a: number) => number;
export const demo_ssim: (a: number) => number;
export const scene_names: () => [number, number];
export const sweep: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_start: () => void;
