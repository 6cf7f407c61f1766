/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_atdmsample_free: (a: number, b: number) => void;
export const __wbg_ldaplayground_free: (a: number, b: number) => void;
export const atdm_explore: (a: number, b: number, c: number, d: bigint, e: number) => [number, number, number];
export const atdmsample_degenerate: (a: number) => number;
export const atdmsample_feature_names: () => [number, number];
export const atdmsample_features: (a: number) => [number, number];
export const atdmsample_signal: (a: number) => [number, number];
export const filter_coefficients: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
export const filter_frequencies: (a: number, b: number) => [number, number];
export const filter_response: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
export const ldaplayground_add_class: (a: number, b: number, c: number, d: number, e: number, f: bigint) => [number, number, number];
export const ldaplayground_class_count: (a: number) => number;
export const ldaplayground_classify: (a: number, b: number, c: number) => number;
export const ldaplayground_decision_map: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number];
export const ldaplayground_new: () => number;
export const ldaplayground_point_classes: (a: number) => [number, number];
export const ldaplayground_points: (a: number) => [number, number];
export const ldaplayground_pooled_cov: (a: number) => [number, number];
export const ldaplayground_reset: (a: number) => void;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __externref_drop_slice: (a: number, b: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
