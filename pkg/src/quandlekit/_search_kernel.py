"""Batched evaluation of idempotency over a coefficient grid.

The candidate space is indexed lexicographically: with an augmentation
stratum fixed, the first n-1 coefficients are free digits (index 0 most
significant) and the last coefficient is determined by the stratum; with
no stratum all n digits are free.  Chunks are contiguous index ranges,
so multi-worker runs partition the space deterministically and merge by
construction.

numpy only batches int64 arithmetic here; the driver re-verifies every
hit with exact arbitrary-precision arithmetic.  A magnitude guard routes
to a pure-Python evaluator if int64 could ever overflow (it cannot for
any in-budget search, but the guard keeps that a checked fact).
"""

from __future__ import annotations

import numpy as np

BATCH = 1 << 15


def space_size(order: int, mode: str, param: int, stratified: bool) -> int:
    base = param if mode == "zp" else 2 * param + 1
    return base ** (order - 1 if stratified else order)


def _int64_safe(order: int, mode: str, param: int) -> bool:
    cmax = param if mode == "zp" else param
    return order * order * cmax * cmax < 2**62 and space_size(order, mode, param, False) < 2**63


def evaluate_chunk(args) -> tuple[list[tuple[int, ...]], int]:
    """Evaluate candidate indices [start, stop); return (hits, tested).

    args = (table, n, mode, param, stratum, start, stop, max_support)
    with mode "zp" (coefficients 0..p-1 mod p) or "zbox" (coefficients
    -B..B over the integers), stratum an int coefficient-sum target or
    None for the whole space.
    """
    table, n, mode, param, stratum, start, stop, max_support = args
    if not _int64_safe(n, mode, param):
        return _evaluate_chunk_py(args)
    tbl = np.array(table, dtype=np.int64)
    base = param if mode == "zp" else 2 * param + 1
    free = n if stratum is None else n - 1
    hits: list[tuple[int, ...]] = []
    tested = 0
    pos_weights = [base**k for k in range(free - 1, -1, -1)]
    idx0 = start
    while idx0 < stop:
        m = min(BATCH, stop - idx0)
        idx = np.arange(idx0, idx0 + m, dtype=np.int64)
        digits = np.empty((m, free), dtype=np.int64)
        for pos, w in enumerate(pos_weights):
            digits[:, pos] = (idx // w) % base
        coeffs = digits if mode == "zp" else digits - param
        if stratum is None:
            full = coeffs
            valid = np.ones(m, dtype=bool)
        else:
            last = stratum - coeffs.sum(axis=1)
            if mode == "zp":
                last %= param
                valid = np.ones(m, dtype=bool)
            else:
                valid = np.abs(last) <= param
            full = np.concatenate([coeffs, last[:, None]], axis=1)
        full = full[valid]
        tested += int(full.shape[0])
        support = (full != 0).sum(axis=1)
        keep = (support >= 1) & (support <= max_support)
        full = full[keep]
        if full.shape[0]:
            sq = np.zeros_like(full)
            for i in range(n):
                ci = full[:, i]
                row = tbl[i]
                for j in range(n):
                    sq[:, row[j]] += ci * full[:, j]
            if mode == "zp":
                sq %= param
            ok = (sq == full).all(axis=1)
            for vec in full[ok]:
                hits.append(tuple(int(v) for v in vec))
        idx0 += m
    return hits, tested


def _evaluate_chunk_py(args) -> tuple[list[tuple[int, ...]], int]:
    """Reference evaluator in exact Python ints; same contract."""
    table, n, mode, param, stratum, start, stop, max_support = args
    base = param if mode == "zp" else 2 * param + 1
    free = n if stratum is None else n - 1
    offset = 0 if mode == "zp" else param
    hits: list[tuple[int, ...]] = []
    tested = 0
    for idx in range(start, stop):
        digits = []
        rem = idx
        for _ in range(free):
            digits.append(rem % base)
            rem //= base
        digits.reverse()
        coeffs = [d - offset for d in digits]
        if stratum is not None:
            last = stratum - sum(coeffs)
            if mode == "zp":
                last %= param
            elif abs(last) > param:
                continue
            coeffs.append(last)
        tested += 1
        support = sum(1 for c in coeffs if c)
        if not 1 <= support <= max_support:
            continue
        sq = [0] * n
        for i in range(n):
            ci = coeffs[i]
            if not ci:
                continue
            row = table[i]
            for j in range(n):
                if coeffs[j]:
                    sq[row[j]] += ci * coeffs[j]
        if mode == "zp":
            sq = [v % param for v in sq]
        if sq == coeffs:
            hits.append(tuple(coeffs))
    return hits, tested
