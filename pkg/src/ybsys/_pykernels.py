"""NumPy implementation of the system-evaluation kernels (import-time fallback).

Same contract as the compiled ``_kernels`` module; also the only path that
handles ``dtype=object`` arrays of unbounded Python integers.
"""
import numpy as np


def _padded(vals):
    # index -1 selects the trailing column of ones
    ones = np.ones(vals.shape[:2] + (1,), dtype=vals.dtype)
    return np.concatenate([vals, ones], axis=2)


def _equation_values(padded, coef, idx, start, stop, modulus):
    sl = slice(start, stop)
    prod = np.broadcast_to(coef[sl], padded.shape[:2] + (stop - start,)).copy()
    for k in range(idx.shape[1]):
        prod = prod * padded[:, :, idx[sl, k]]
        if modulus:
            prod %= modulus
    acc = prod.sum(axis=2)
    if modulus:
        acc %= modulus
    return acc


def survivors(vals, coef, idx, eq_start, modulus):
    vals = np.asarray(vals)
    padded = _padded(vals)
    coef = np.asarray(coef, dtype=vals.dtype)
    mask = np.ones(vals.shape[0], dtype=bool)
    for e in range(len(eq_start) - 1):
        if not mask.any():
            break
        alive = np.flatnonzero(mask)
        acc = _equation_values(padded[alive], coef, idx, eq_start[e], eq_start[e + 1], modulus)
        mask[alive] = (acc == 0).all(axis=1)
    return mask.astype(np.uint8)


def evaluate(vals, coef, idx, eq_start, modulus):
    vals = np.asarray(vals)
    padded = _padded(vals)
    coef = np.asarray(coef, dtype=vals.dtype)
    neq = len(eq_start) - 1
    out = np.zeros(vals.shape[:2] + (neq,), dtype=vals.dtype)
    for e in range(neq):
        out[:, :, e] = _equation_values(padded, coef, idx, eq_start[e], eq_start[e + 1], modulus)
    return out
