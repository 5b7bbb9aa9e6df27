"""Vectorised Mealy machine execution over batches of integer tables.

A batch is ``(delta, out, q0)`` with ``delta`` and ``out`` of shape
``(M, k, nA)``: state and output-letter indices for M machines that share a
state count and alphabets. ``q0`` holds the M initial state indices.

The scalar ``transform_up`` in :mod:`mealywords.machine` is this kernel with
M = 1, so exhaustive sweeps exercise the same cycle detection as the API.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

TABLE_DTYPE = np.int8


def _delta_tables(k: int, n_in: int) -> np.ndarray:
    cells = k * n_in
    return np.array(list(itertools.product(range(k), repeat=cells)),
                    dtype=TABLE_DTYPE).reshape(-1, k, n_in)


def _output_tables(k: int, n_in: int, n_out: int) -> np.ndarray:
    cells = k * n_in
    rows = [r for r in itertools.product(range(n_out), repeat=cells)
            if len(set(r)) == n_out]
    if not rows:
        return np.zeros((0, k, n_in), dtype=TABLE_DTYPE)
    return np.array(rows, dtype=TABLE_DTYPE).reshape(-1, k, n_in)


def machine_count(k: int, n_in: int, n_out: int) -> int:
    """Number of initial machines with k states and a surjective output map."""
    cells = k * n_in
    # inclusion-exclusion count of surjections from cells onto n_out letters
    surj = sum((-1) ** j * _comb(n_out, j) * (n_out - j) ** cells for j in range(n_out + 1))
    return k ** cells * surj * k


def _comb(n: int, r: int) -> int:
    from math import comb

    return comb(n, r)


@dataclass(frozen=True)
class TableBatch:
    offset: int       # enumeration index of the first machine in the batch
    delta: np.ndarray
    out: np.ndarray
    q0: np.ndarray

    def __len__(self):
        return len(self.q0)


def iter_table_batches(k: int, n_in: int, n_out: int, max_batch: int = 250_000):
    """All machines in enumeration order: transition table, then output table,
    then initial state. Yields consecutive TableBatch blocks."""
    if k < 1:
        raise ValueError("state count must be at least 1")
    outs = _output_tables(k, n_in, n_out)
    n_o = len(outs)
    if n_o == 0:
        return
    per_delta = n_o * k
    deltas_per_batch = max(1, max_batch // per_delta)
    offset = 0
    deltas = _delta_tables(k, n_in)
    for i in range(0, len(deltas), deltas_per_batch):
        d = deltas[i:i + deltas_per_batch]
        n_d = len(d)
        delta = np.repeat(d, per_delta, axis=0)
        out = np.tile(np.repeat(outs, k, axis=0), (n_d, 1, 1))
        q0 = np.tile(np.arange(k, dtype=TABLE_DTYPE), n_d * n_o)
        yield TableBatch(offset, delta, out, q0)
        offset += len(q0)


def simulate(delta: np.ndarray, out: np.ndarray, q0: np.ndarray, letters) -> np.ndarray:
    """Plain step-by-step run of every machine on the input index sequence."""
    letters = np.asarray(letters, dtype=np.intp)
    M = len(q0)
    rows = np.arange(M)
    state = q0.astype(np.intp)
    res = np.empty((M, len(letters)), dtype=np.int16)
    for i, a in enumerate(letters):
        res[:, i] = out[rows, state, a]
        state = delta[rows, state, a].astype(np.intp)
    return res


@dataclass(frozen=True)
class CycleResult:
    """Raw transform of ``u v^omega``: machine m emits ``outs[m, :lu + start[m]]``
    once and then repeats ``outs[m, lu + start[m]:lu + end[m]]`` forever."""

    outs: np.ndarray
    start: np.ndarray
    end: np.ndarray
    lu: int

    def raw(self, m: int) -> tuple:
        s, e = self.lu + int(self.start[m]), self.lu + int(self.end[m])
        row = self.outs[m]
        return tuple(int(c) for c in row[:s]), tuple(int(c) for c in row[s:e])


def detect_cycles(delta: np.ndarray, out: np.ndarray, q0: np.ndarray, u, v) -> CycleResult:
    """Consume ``u``, then walk the periodic tail keyed on (state, phase mod |v|)
    until the first repeated pair. A repeat is forced within k·|v| tail steps."""
    u = np.asarray(u, dtype=np.intp)
    v = np.asarray(v, dtype=np.intp)
    if len(v) == 0:
        raise ValueError("period must be non-empty")
    M, k, _ = delta.shape
    lu, lv = len(u), len(v)
    horizon = k * lv
    rows = np.arange(M)
    outs = np.empty((M, lu + horizon), dtype=np.int16)
    state = q0.astype(np.intp)
    for i, a in enumerate(u):
        outs[:, i] = out[rows, state, a]
        state = delta[rows, state, a].astype(np.intp)

    seen = np.full((M, k, lv), -1, dtype=np.int32)
    start = np.full(M, -1, dtype=np.int32)
    end = np.full(M, -1, dtype=np.int32)
    for t in range(horizon + 1):
        ph = t % lv
        prev = seen[rows, state, ph]
        hit = (prev >= 0) & (end < 0)
        start[hit] = prev[hit]
        end[hit] = t
        if t == horizon:
            break
        seen[rows, state, ph] = np.where(prev >= 0, prev, t)
        a = v[ph]
        outs[:, lu + t] = out[rows, state, a]
        state = delta[rows, state, a].astype(np.intp)
    if (end < 0).any():
        raise AssertionError("no repeated (state, phase) pair within k*|v| steps")
    return CycleResult(outs, start, end, lu)


def distinct_raw(res: CycleResult):
    """Group machines with identical raw output. Returns (representatives, inverse)
    where ``representatives[g]`` is a machine index of group g."""
    key = np.concatenate([res.start[:, None].astype(np.int16),
                          res.end[:, None].astype(np.int16), res.outs], axis=1)
    _, first, inverse = np.unique(key, axis=0, return_index=True, return_inverse=True)
    return first, inverse.reshape(-1)
