/* tslint:disable */
/* eslint-disable */

/**
 * A generated window and its features.
 */
export class AtdmSample {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    degenerate(): boolean;
    static feature_names(): string[];
    /**
     * `[pap, zcap, mwl, dbm]`
     */
    features(): Float64Array;
    signal(): Float64Array;
}

/**
 * Two-dimensional classes added one at a time to a pooled LDA.
 */
export class LdaPlayground {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Draws `n` Gaussian points around `(cx, cy)` and folds them in as a
     * new class. Returns the class id.
     */
    add_class(cx: number, cy: number, spread: number, n: number, seed: bigint): number;
    class_count(): number;
    classify(x: number, y: number): number;
    /**
     * Predicted class id on an `nx * ny` grid, row by row from `y0`.
     */
    decision_map(x0: number, x1: number, y0: number, y1: number, nx: number, ny: number): Uint16Array;
    constructor();
    point_classes(): Uint16Array;
    /**
     * Flat `[x0, y0, x1, y1, ...]`.
     */
    points(): Float64Array;
    /**
     * Pooled covariance `[xx, xy, yx, yy]`, empty before two classes exist.
     */
    pooled_cov(): Float64Array;
    reset(): void;
}

export function atdm_explore(amplitude: number, tone_hz: number, noise: number, seed: bigint, len: number): AtdmSample;

/**
 * Designed coefficients, one section per line.
 */
export function filter_coefficients(sample_rate: number, low: number, high: number, order: number, notch_hz: number, notch_q: number): string;

export function filter_frequencies(sample_rate: number, points: number): Float64Array;

export function filter_response(sample_rate: number, low: number, high: number, order: number, notch_hz: number, notch_q: number, points: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_atdmsample_free: (a: number, b: number) => void;
    readonly __wbg_ldaplayground_free: (a: number, b: number) => void;
    readonly atdm_explore: (a: number, b: number, c: number, d: bigint, e: number) => [number, number, number];
    readonly atdmsample_degenerate: (a: number) => number;
    readonly atdmsample_feature_names: () => [number, number];
    readonly atdmsample_features: (a: number) => [number, number];
    readonly atdmsample_signal: (a: number) => [number, number];
    readonly filter_coefficients: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly filter_frequencies: (a: number, b: number) => [number, number];
    readonly filter_response: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly ldaplayground_add_class: (a: number, b: number, c: number, d: number, e: number, f: bigint) => [number, number, number];
    readonly ldaplayground_class_count: (a: number) => number;
    readonly ldaplayground_classify: (a: number, b: number, c: number) => number;
    readonly ldaplayground_decision_map: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number];
    readonly ldaplayground_new: () => number;
    readonly ldaplayground_point_classes: (a: number) => [number, number];
    readonly ldaplayground_points: (a: number) => [number, number];
    readonly ldaplayground_pooled_cov: (a: number) => [number, number];
    readonly ldaplayground_reset: (a: number) => void;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __externref_drop_slice: (a: number, b: number) => void;
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
