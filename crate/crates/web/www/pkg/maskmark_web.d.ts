/* tslint:disable */
/* eslint-disable */

export class AttackOutcome {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    ber(): number;
    /**
     * Recovered logo as 16 characters of 0/1.
     */
    bits(): string;
    /**
     * Votes for 1 per logo bit, out of 15.
     */
    ones(): Uint8Array;
    rgba(): Uint8Array;
}

export class Demo {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Attacks the watermarked image and extracts. `kind` is one of
     * gaussian, salt_pepper, median3, histeq, jpeg; `amount` is the
     * variance, density or quality.
     */
    attack(kind: string, amount: number, seed: bigint): AttackOutcome;
    /**
     * Embedding blocks as grid indices 0..16, comma separated.
     */
    blocks(): string;
    host_rgba(): Uint8Array;
    /**
     * Embedding strength map scaled so its maximum is white, with the
     * selected blocks outlined.
     */
    map_rgba(): Uint8Array;
    marked_rgba(): Uint8Array;
    /**
     * Embeds `logo` (16 characters of 0/1, 8 of each) into scene `index`.
     */
    constructor(index: number, logo: string, k_alpha: number, strength_floor: number);
    psnr(): number;
    side(): number;
    ssim(): number;
}

/**
 * Names of the built-in scenes, comma separated.
 */
export function scene_names(): string;

/**
 * PSNR and SSIM of scene `index` for each k in `grid`, interleaved as
 * [psnr0, ssim0, psnr1, ssim1, ...].
 */
export function sweep(index: number, grid: Float64Array, strength_floor: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_attackoutcome_free: (a: number, b: number) => void;
    readonly __wbg_demo_free: (a: number, b: number) => void;
    readonly attackoutcome_ber: (a: number) => number;
    readonly attackoutcome_bits: (a: number) => [number, number];
    readonly attackoutcome_ones: (a: number) => [number, number];
    readonly attackoutcome_rgba: (a: number) => [number, number];
    readonly demo_attack: (a: number, b: number, c: number, d: number, e: bigint) => [number, number, number];
    readonly demo_blocks: (a: number) => [number, number];
    readonly demo_host_rgba: (a: number) => [number, number];
    readonly demo_map_rgba: (a: number) => [number, number];
    readonly demo_marked_rgba: (a: number) => [number, number];
    readonly demo_new: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly demo_psnr: (a: number) => number;
    readonly demo_side: (a: number) => number;
    readonly demo_ssim: (a: number) => number;
    readonly scene_names: () => [number, number];
    readonly sweep: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
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
